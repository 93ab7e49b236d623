#include "strat/profile.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace strat {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw SchemaError(what);
}

std::size_t locate(const std::vector<double>& edges, double y) {
  // Index i with y in [edges[i], edges[i+1]); clamps to the valid range.
  auto it = std::upper_bound(edges.begin(), edges.end(), y);
  if (it == edges.begin()) return 0;
  std::size_t i = static_cast<std::size_t>(it - edges.begin()) - 1;
  return std::min(i, edges.size() - 2);
}

} // namespace

LayeredProfile LayeredProfile::make(double height, std::vector<double> breakpoints,
                                    std::vector<double> values) {
  require(height > 0.0, "profile height must be positive");
  require(breakpoints.size() >= 2, "breakpoints must include 0 and H");
  require(breakpoints.size() == values.size() + 1,
          "breakpoints.size() must equal values.size()+1");
  require(breakpoints.front() == 0.0, "first breakpoint must be 0");
  require(std::abs(breakpoints.back() - height) <= 1e-12 * height,
          "last breakpoint must equal H");
  breakpoints.back() = height;
  for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i)
    require(breakpoints[i + 1] > breakpoints[i], "breakpoints must be strictly increasing");
  for (double v : values) require(v > 0.0, "layer values must be strictly positive");

  // Collapse equal adjacent layers.
  std::vector<double> bp{breakpoints.front()};
  std::vector<double> vv;
  for (std::size_t j = 0; j < values.size(); ++j) {
    if (!vv.empty() && values[j] == vv.back()) {
      bp.back() = breakpoints[j + 1];
    } else {
      vv.push_back(values[j]);
      bp.push_back(breakpoints[j + 1]);
    }
  }

  LayeredProfile p;
  p.height_ = height;
  p.breakpoints_ = std::move(bp);
  p.values_ = std::move(vv);
  return p;
}

std::size_t LayeredProfile::layer_at(double y) const {
  return locate(breakpoints_, y);
}

SampledProfile SampledProfile::make(double height, std::vector<double> grid,
                                    std::vector<double> samples, Interpolation interp,
                                    std::vector<double> dsamples,
                                    std::vector<double> ddsamples) {
  require(height > 0.0, "profile height must be positive");
  require(grid.size() >= 2, "grid needs at least two points");
  require(grid.size() == samples.size(), "grid/sample size mismatch");
  require(grid.front() == 0.0, "grid must start at 0");
  require(std::abs(grid.back() - height) <= 1e-12 * height, "grid must end at H");
  grid.back() = height;
  for (std::size_t i = 0; i + 1 < grid.size(); ++i)
    require(grid[i + 1] > grid[i], "grid must be strictly increasing");
  for (double v : samples) require(v > 0.0, "samples must be strictly positive");
  require(dsamples.empty() || dsamples.size() == grid.size(),
          "derivative sample count must match the grid");
  require(ddsamples.empty() || ddsamples.size() == grid.size(),
          "second-derivative sample count must match the grid");

  SampledProfile p;
  p.height_ = height;
  p.grid_ = std::move(grid);
  p.samples_ = std::move(samples);
  p.dsamples_ = std::move(dsamples);
  p.ddsamples_ = std::move(ddsamples);
  p.interp_ = interp;
  return p;
}

std::size_t SampledProfile::cell_at(double y) const {
  return locate(grid_, y);
}

namespace {

double interp_value(const SampledProfile& p, const std::vector<double>& vals, double y) {
  std::size_t i = p.cell_at(y);
  if (p.interpolation() == Interpolation::LeftConstant) return vals[i];
  double t = (y - p.grid()[i]) / (p.grid()[i + 1] - p.grid()[i]);
  return vals[i] + t * (vals[i + 1] - vals[i]);
}

} // namespace

double SampledProfile::value_at(double y) const { return interp_value(*this, samples_, y); }

double SampledProfile::deriv_at(double y) const {
  if (dsamples_.empty()) throw MissingDerivatives("profile has no derivative samples");
  return interp_value(*this, dsamples_, y);
}

double SampledProfile::deriv2_at(double y) const {
  if (ddsamples_.empty()) throw MissingDerivatives("profile has no second-derivative samples");
  return interp_value(*this, ddsamples_, y);
}

Extremes extremes(const LayeredProfile& p) {
  auto [lo, hi] = std::minmax_element(p.values().begin(), p.values().end());
  return {*lo, *hi};
}

Extremes extremes(const SampledProfile& p) {
  auto [lo, hi] = std::minmax_element(p.samples().begin(), p.samples().end());
  return {*lo, *hi};
}

double total_variation(const LayeredProfile& p) {
  double tv = 0.0;
  for (std::size_t j = 0; j + 1 < p.values().size(); ++j)
    tv += std::abs(p.values()[j + 1] - p.values()[j]);
  return tv;
}

double total_variation(const SampledProfile& p) {
  // TV of the interpolant: for both rules this is the sum of |sample jumps|.
  double tv = 0.0;
  for (std::size_t i = 0; i + 1 < p.samples().size(); ++i)
    tv += std::abs(p.samples()[i + 1] - p.samples()[i]);
  return tv;
}

double default_eps(const Extremes& e) { return 0.05 * (e.max - e.min); }

namespace {

std::optional<WellDescriptor> make_well(double alpha, double beta, double c1,
                                        double depth, bool enlarged) {
  WellDescriptor w;
  w.alpha = alpha;
  w.beta = beta;
  w.threshold = c1;
  w.floor_depth = depth;
  w.enlarged = enlarged;
  return w;
}

void check_threshold(const Extremes& e, double c1) {
  if (c1 <= e.min || c1 > e.max) {
    std::ostringstream os;
    os << "well threshold " << c1 << " outside (" << e.min << ", " << e.max << "]";
    throw ThresholdOutOfRange(os.str());
  }
}

} // namespace

std::optional<WellDescriptor> find_well(const LayeredProfile& p, double c1) {
  check_threshold(extremes(p), c1);
  const auto& bp = p.breakpoints();
  const auto& v = p.values();
  std::size_t first = v.size(), last = v.size();
  double depth = c1;
  for (std::size_t j = 0; j < v.size(); ++j) {
    if (v[j] < c1) {
      if (first == v.size()) first = j;
      last = j;
      depth = std::min(depth, v[j]);
    }
  }
  if (first == v.size()) return std::nullopt;
  bool enlarged = false;
  for (std::size_t j = first; j <= last; ++j)
    if (v[j] >= c1) enlarged = true;
  return make_well(bp[first], bp[last + 1], c1, depth, enlarged);
}

std::optional<WellDescriptor> find_well(const SampledProfile& p, double c1) {
  check_threshold(extremes(p), c1);
  const auto& g = p.grid();
  const auto& s = p.samples();
  const std::size_t n = g.size();

  if (p.interpolation() == Interpolation::LeftConstant) {
    std::size_t first = n, last = n;
    double depth = c1;
    for (std::size_t i = 0; i + 1 < n; ++i) {
      if (s[i] < c1) {
        if (first == n) first = i;
        last = i;
        depth = std::min(depth, s[i]);
      }
    }
    if (first == n) return std::nullopt;
    bool enlarged = false;
    for (std::size_t i = first; i <= last; ++i)
      if (s[i] >= c1) enlarged = true;
    return make_well(g[first], g[last + 1], c1, depth, enlarged);
  }

  // Piecewise linear: exact crossings of c(y) = c1 inside cells.
  double alpha = -1.0, beta = -1.0, depth = c1;
  int components = 0;
  bool inside = false;
  auto open_at = [&](double y) {
    if (alpha < 0.0) alpha = y;
    ++components;
    inside = true;
  };
  for (std::size_t i = 0; i + 1 < n; ++i) {
    double a = s[i], b = s[i + 1];
    if (std::min(a, b) < c1) depth = std::min(depth, std::min(a, b));
    bool la = a < c1, lb = b < c1;
    if (la && !inside) open_at(g[i]);
    if (la != lb) {
      double t = (c1 - a) / (b - a);
      double yc = g[i] + t * (g[i + 1] - g[i]);
      if (la && !lb) {  // leaving the sublevel set
        beta = yc;
        inside = false;
      } else {  // entering
        if (!inside) open_at(yc);
      }
    }
    if (lb) beta = g[i + 1];
  }
  if (components == 0) return std::nullopt;
  return make_well(alpha, beta, c1, depth, components > 1);
}

LayeredProfile pc_approximate(const SampledProfile& p, int n, Sampling rule) {
  require(n >= 1, "pc_approximate needs n >= 1");
  const double H = p.height();
  std::vector<double> bp(static_cast<std::size_t>(n) + 1);
  std::vector<double> vals(static_cast<std::size_t>(n));
  for (int i = 0; i <= n; ++i) bp[static_cast<std::size_t>(i)] = H * i / n;
  for (int i = 0; i < n; ++i) {
    double y = rule == Sampling::LeftEndpoint ? bp[static_cast<std::size_t>(i)]
                                              : 0.5 * (bp[static_cast<std::size_t>(i)] +
                                                       bp[static_cast<std::size_t>(i) + 1]);
    vals[static_cast<std::size_t>(i)] = p.value_at(y);
  }
  return LayeredProfile::make(H, std::move(bp), std::move(vals));
}

double sup_distance(const SampledProfile& p, const LayeredProfile& approx) {
  // The difference is piecewise linear (or constant) between the union of
  // both partitions, so checking the union nodes (both one-sided limits at
  // approximant breakpoints) is exact.
  std::vector<double> nodes = p.grid();
  nodes.insert(nodes.end(), approx.breakpoints().begin(), approx.breakpoints().end());
  std::sort(nodes.begin(), nodes.end());
  double sup = 0.0;
  auto diff_at = [&](double y, double side) {
    double inner = std::clamp(y + side, 0.0, p.height());
    return std::abs(p.value_at(inner) - approx.values()[approx.layer_at(inner)]);
  };
  const double nudge = 1e-13 * p.height();
  for (double y : nodes) {
    sup = std::max(sup, diff_at(y, -nudge));
    sup = std::max(sup, diff_at(y, +nudge));
  }
  return sup;
}

SampledProfile as_left_constant_samples(const LayeredProfile& p) {
  std::vector<double> grid = p.breakpoints();
  std::vector<double> samples = p.values();
  samples.push_back(samples.back());  // padding sample at y = H
  return SampledProfile::make(p.height(), std::move(grid), std::move(samples),
                              Interpolation::LeftConstant);
}

} // namespace strat
