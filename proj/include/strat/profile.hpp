#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "strat/errors.hpp"

namespace strat {

// Piecewise constant diffusion coefficient on (0,H):
//   c(y) = values[j]  for  y in (breakpoints[j], breakpoints[j+1]).
// breakpoints is the full partition 0 = b_0 < b_1 < ... < b_{N} = H,
// so values.size() + 1 == breakpoints.size().  Construction collapses
// equal adjacent layers so transmission loops never see zero jumps.
class LayeredProfile {
public:
  static LayeredProfile make(double height, std::vector<double> breakpoints,
                             std::vector<double> values);

  double height() const { return height_; }
  const std::vector<double>& breakpoints() const { return breakpoints_; }
  const std::vector<double>& values() const { return values_; }
  std::size_t layer_count() const { return values_.size(); }

  // Layer index j with y in [b_j, b_{j+1}); y == H maps to the last layer.
  std::size_t layer_at(double y) const;
  double value_at(double y) const { return values_[layer_at(y)]; }

private:
  LayeredProfile() = default;
  double height_ = 0.0;
  std::vector<double> breakpoints_;
  std::vector<double> values_;
};

enum class Interpolation { PiecewiseLinear, LeftConstant };

// Grid-sampled coefficient with an interpolation rule.  Derivative sample
// arrays are optional; the Liouville path requires both c' and c''.
class SampledProfile {
public:
  static SampledProfile make(double height, std::vector<double> grid,
                             std::vector<double> samples,
                             Interpolation interp = Interpolation::PiecewiseLinear,
                             std::vector<double> dsamples = {},
                             std::vector<double> ddsamples = {});

  double height() const { return height_; }
  const std::vector<double>& grid() const { return grid_; }
  const std::vector<double>& samples() const { return samples_; }
  const std::vector<double>& dsamples() const { return dsamples_; }
  const std::vector<double>& ddsamples() const { return ddsamples_; }
  Interpolation interpolation() const { return interp_; }
  bool has_derivatives() const { return !dsamples_.empty() && !ddsamples_.empty(); }

  double value_at(double y) const;
  double deriv_at(double y) const;   // requires dsamples
  double deriv2_at(double y) const;  // requires ddsamples

  // Index i with y in [grid[i], grid[i+1]); y == H maps to the last cell.
  std::size_t cell_at(double y) const;

private:
  SampledProfile() = default;
  double height_ = 0.0;
  std::vector<double> grid_, samples_, dsamples_, ddsamples_;
  Interpolation interp_ = Interpolation::PiecewiseLinear;
};

// A well (alpha,beta) for threshold c1: c >= c1 a.e. outside, inf c inside < c1.
struct WellDescriptor {
  double alpha = 0.0;
  double beta = 0.0;
  double threshold = 0.0;    // c1
  double floor_depth = 0.0;  // inf of c on (alpha,beta)
  // True when {c < c1} is disconnected and (alpha,beta) is the enclosing
  // interval rather than a single component.
  bool enlarged = false;
};

struct Extremes {
  double min = 0.0;
  double max = 0.0;
};

Extremes extremes(const LayeredProfile& p);
Extremes extremes(const SampledProfile& p);

double total_variation(const LayeredProfile& p);
double total_variation(const SampledProfile& p);

// Run-level default for the spectral margin: 0.05 * (c_M - c_m).
double default_eps(const Extremes& e);

std::optional<WellDescriptor> find_well(const LayeredProfile& p, double c1);
std::optional<WellDescriptor> find_well(const SampledProfile& p, double c1);

enum class Sampling { LeftEndpoint, Midpoint };

// Piecewise constant approximation on n equal cells, sampling the
// interpolant.  Left-endpoint sampling is the default; both rules keep
// TV(c_n) <= TV(c) and the range inside [c_m, c_M].
LayeredProfile pc_approximate(const SampledProfile& p, int n,
                              Sampling rule = Sampling::LeftEndpoint);

// Sup-norm distance between the interpolant of p and a layered approximant.
double sup_distance(const SampledProfile& p, const LayeredProfile& approx);

// View a layered profile as a left-constant sampled profile (used to
// cross-check the Pruefer path against the exact layer solver).
SampledProfile as_left_constant_samples(const LayeredProfile& p);

} // namespace strat
