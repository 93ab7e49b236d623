#pragma once

#include <utility>
#include <vector>

#include "strat/errors.hpp"

namespace strat {

// Box cross-section (0,L_1) x ... x (0,L_d).  d = 1 is the interval case.
struct CrossSection {
  std::vector<double> lengths;

  static CrossSection interval(double L) { return {{L}}; }
  static CrossSection box(std::vector<double> Ls) { return {std::move(Ls)}; }
  int dim() const { return static_cast<int>(lengths.size()); }
};

// One Dirichlet-Laplacian eigenpair of the cross-section: the mode
// sin(n_1 pi x_1/L_1)...sin(n_d pi x_d/L_d) with mu2 = sum (n_i pi/L_i)^2.
struct TransverseMode {
  std::vector<int> index;  // n_1..n_d, all >= 1
  double mu2 = 0.0;
  int k = 0;  // 1-based flat index after sorting
  double mu() const;
};

// First k_max modes sorted by mu2 (counting multiplicity), ties broken
// lexicographically on the multi-index.
std::vector<TransverseMode> mu_values(const CrossSection& cs, int k_max);

// Mass ratio of the mode on a sub-box, per-axis intervals [a_i, b_i]:
//   int_subbox phi^2 / int_box phi^2, via closed-form sine integrals.
double phi_mass_ratio(const CrossSection& cs, const TransverseMode& mode,
                      const std::vector<std::pair<double, double>>& subbox);

} // namespace strat
