#pragma once

#include <utility>
#include <vector>

#include "strat/profile.hpp"

namespace strat {

enum class Regime { Oscillatory, Evanescent, Linear };

// Local regime of one layer at spectral point (lambda, mu):
//   q = lambda / c_j - mu^2, wavenumber = sqrt(|q|).
struct LayerRegime {
  Regime tag = Regime::Linear;
  double q = 0.0;
  double wavenumber = 0.0;
};

LayerRegime layer_regime(double lambda, double mu, double c_j, double tol_q);

// Default Linear band half-width for a given transverse frequency.
inline double default_tol_q(double mu) { return 1e-9 * mu * mu; }

// Shooting state (u, u') with a base-2 exponent ledger, so evanescent
// layers cannot overflow: the true pair is (u, du) * 2^exp2.
struct StateVector {
  double u = 0.0;
  double du = 1.0;
  long exp2 = 0;

  void renormalize();
};

struct PropagateResult {
  StateVector state;   // at y = H
  int zero_count = 0;  // zeros of u in (0, H]
};

// Exact propagation of the Dirichlet shooting solution of
//   u'' + (lambda/c(y) - mu^2) u = 0,  u(0) = 0, u'(0) = 1,
// using the closed-form 2x2 propagator of each layer.
PropagateResult propagate(double lambda, double mu, const LayeredProfile& profile);

struct DispersionResult {
  double value = 0.0;    // mantissa of u(H); true value = value * 2^exp2
  long exp2 = 0;
  int zero_count = 0;
  double residual = 0.0; // |u(H)| / local amplitude at H, scale-free
};

// The dispersion function lambda -> u(H; lambda); its roots are the
// eigenvalues of the reduced operator, its zero count is the Sturm count.
DispersionResult dispersion(double lambda, double mu, const LayeredProfile& profile);

struct Eigenpair {
  double lambda = 0.0;
  int k = 0;      // transverse index (bookkeeping, not used by the solver)
  int ell = 0;    // oscillation count = index of the eigenvalue in its channel
  double residual = 0.0;
};

// All eigenvalues in (lambda_lo, lambda_hi), each bracketed by a change of
// the oscillation count and refined by bisection to relative width rel_tol.
std::vector<Eigenpair> eigenvalues_in_window(int k, double mu, double lambda_lo,
                                             double lambda_hi, const LayeredProfile& profile,
                                             double rel_tol = 1e-12);

// Closed-form per-layer representation of a normalized eigenfunction.
//   oscillatory: u = beta * sin(omega (y - gamma)) * 2^exp2
//   evanescent:  u = (decay * e^{-omega s} + grow * e^{+omega s}) * 2^exp2,
//                s = y - (layer left endpoint)
//   linear:      u = (val + slope * s) * 2^exp2
struct LayerCoef {
  Regime regime = Regime::Linear;
  double q = 0.0;
  double omega = 0.0;
  double beta = 0.0, gamma = 0.0;  // oscillatory
  double decay = 0.0, grow = 0.0;  // evanescent
  double val = 0.0, slope = 0.0;   // linear
  long exp2 = 0;
};

class Eigenfunction1D {
public:
  double lambda = 0.0;
  double mu = 0.0;
  int k = 0;
  int ell = 0;
  LayeredProfile profile;
  std::vector<LayerCoef> layers;  // one per profile layer

  // (u, du) by the closed form of the layer containing y.
  std::pair<double, double> value(double y) const;

  // Largest |u' - u'|+|u - u| mismatch across interfaces, relative to the
  // local amplitude (diagnostic; ~ residual of the eigenvalue).
  double transmission_residual() const;

  Eigenfunction1D() : profile(LayeredProfile::make(1.0, {0.0, 1.0}, {1.0})) {}
};

Eigenfunction1D build_eigenfunction(const Eigenpair& pair, double mu,
                                    const LayeredProfile& profile,
                                    double residual_tol = 1e-6);

std::pair<double, double> evaluate(const Eigenfunction1D& ef, double y);

// int_a^b u^2 dy (weighted=false) or int_a^b u^2 c^{-1} dy (weighted=true),
// by exact per-layer antiderivatives split at a, b and the breakpoints.
double mass(const Eigenfunction1D& ef, double a, double b, bool weighted);

} // namespace strat
