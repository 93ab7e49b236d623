#include "strat/cross_section.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace strat {

namespace {
constexpr double kPi = std::numbers::pi;
}

double TransverseMode::mu() const { return std::sqrt(mu2); }

std::vector<TransverseMode> mu_values(const CrossSection& cs, int k_max) {
  if (k_max < 1) throw SchemaError("k_max must be >= 1");
  for (double L : cs.lengths)
    if (L <= 0.0) throw SchemaError("cross-section lengths must be positive");

  const int d = cs.dim();
  std::vector<TransverseMode> modes;

  // Collect all multi-indices with mu2 <= cap; grow the cap until we have
  // at least k_max of them (the cap only ever needs a couple of rounds).
  double base = 0.0;
  for (double L : cs.lengths) base += (kPi / L) * (kPi / L);
  double cap = base * std::pow(static_cast<double>(k_max), 2.0 / d) * 4.0 + base;

  while (true) {
    modes.clear();
    std::vector<int> idx(static_cast<std::size_t>(d), 1);
    // Depth-first enumeration over the integer lattice under the cap.
    std::vector<double> partial(static_cast<std::size_t>(d) + 1, 0.0);
    int axis = 0;
    while (axis >= 0) {
      if (axis == d) {
        modes.push_back({idx, partial[static_cast<std::size_t>(d)], 0});
        --axis;
        ++idx[static_cast<std::size_t>(axis)];
        continue;
      }
      double w = kPi * idx[static_cast<std::size_t>(axis)] / cs.lengths[static_cast<std::size_t>(axis)];
      double m2 = partial[static_cast<std::size_t>(axis)] + w * w;
      if (m2 > cap) {
        idx[static_cast<std::size_t>(axis)] = 1;
        --axis;
        if (axis >= 0) ++idx[static_cast<std::size_t>(axis)];
        continue;
      }
      partial[static_cast<std::size_t>(axis) + 1] = m2;
      ++axis;
    }
    if (static_cast<int>(modes.size()) >= k_max) break;
    cap *= 2.0;
  }

  std::sort(modes.begin(), modes.end(), [](const TransverseMode& a, const TransverseMode& b) {
    if (a.mu2 != b.mu2) return a.mu2 < b.mu2;
    return a.index < b.index;
  });
  modes.resize(static_cast<std::size_t>(k_max));
  for (int i = 0; i < k_max; ++i) modes[static_cast<std::size_t>(i)].k = i + 1;
  return modes;
}

double phi_mass_ratio(const CrossSection& cs, const TransverseMode& mode,
                      const std::vector<std::pair<double, double>>& subbox) {
  if (static_cast<int>(subbox.size()) != cs.dim())
    throw SubboxOutOfBounds("subbox dimension mismatch");
  double ratio = 1.0;
  for (int i = 0; i < cs.dim(); ++i) {
    const double L = cs.lengths[static_cast<std::size_t>(i)];
    const auto [a, b] = subbox[static_cast<std::size_t>(i)];
    if (a < 0.0 || b > L || a >= b) throw SubboxOutOfBounds("subbox not inside the cross-section");
    const double w = mode.index[static_cast<std::size_t>(i)] * kPi / L;
    // int_a^b sin^2(w x) dx = (b-a)/2 - (sin(2wb) - sin(2wa)) / (4w)
    const double num = 0.5 * (b - a) - (std::sin(2 * w * b) - std::sin(2 * w * a)) / (4 * w);
    ratio *= num / (0.5 * L);
  }
  return ratio;
}

} // namespace strat
