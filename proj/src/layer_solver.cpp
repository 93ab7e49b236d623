#include "strat/layer_solver.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace strat {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kLn2 = std::numbers::ln2;

// Splits e^x into mant * 2^e with mant in [1, 2).
void exp_split(double x, double& mant, long& e) {
  double t = x / kLn2;
  double fl = std::floor(t);
  e = static_cast<long>(fl);
  mant = std::exp2(t - fl);
}

} // namespace

LayerRegime layer_regime(double lambda, double mu, double c_j, double tol_q) {
  LayerRegime r;
  r.q = lambda / c_j - mu * mu;
  if (r.q > tol_q) {
    r.tag = Regime::Oscillatory;
  } else if (r.q < -tol_q) {
    r.tag = Regime::Evanescent;
  } else {
    r.tag = Regime::Linear;
  }
  r.wavenumber = std::sqrt(std::abs(r.q));
  return r;
}

void StateVector::renormalize() {
  double s = std::max(std::abs(u), std::abs(du));
  if (s == 0.0) throw DegenerateState("shooting state underflowed to (0,0)");
  int e = std::ilogb(s);
  if (e > 1 || e < -1) {
    u = std::ldexp(u, -e);
    du = std::ldexp(du, -e);
    exp2 += e;
  }
}

namespace {

// Advances (u, du) across one homogeneous layer of thickness dy and local
// q = lambda/c - mu^2, counting zeros of u in the half-open (0, dy].
void step_layer(StateVector& st, const LayerRegime& reg, double dy, int& zeros) {
  const double u0 = st.u, du0 = st.du;
  const double w = reg.wavenumber;
  switch (reg.tag) {
    case Regime::Oscillatory: {
      const double x = w * dy;
      // u(s) = R sin(w s + phi0): phase advances linearly.
      const double phi0 = std::atan2(u0 * w, du0);
      const double phi1 = phi0 + x;
      zeros += static_cast<int>(std::floor(phi1 / kPi) - std::floor(phi0 / kPi));
      const double cs = std::cos(x), sn = std::sin(x);
      st.u = u0 * cs + du0 * sn / w;
      st.du = -u0 * w * sn + du0 * cs;
      break;
    }
    case Regime::Evanescent: {
      const double x = w * dy;
      if (x <= 30.0) {
        const double ch = std::cosh(x), sh = std::sinh(x);
        st.u = u0 * ch + du0 * sh / w;
        st.du = u0 * w * sh + du0 * ch;
      } else {
        // Factor out e^x into the exponent ledger.
        double mant;
        long e;
        exp_split(x, mant, e);
        const double em = std::exp(-2.0 * x);
        const double ch = 0.5 * (1.0 + em), sh = 0.5 * (1.0 - em);
        st.u = (u0 * ch + du0 * sh / w) * mant;
        st.du = (u0 * w * sh + du0 * ch) * mant;
        st.exp2 += e;
      }
      // At most one zero: detect by a sign change over the layer.
      if (u0 != 0.0 && (st.u == 0.0 || std::signbit(st.u) != std::signbit(u0))) ++zeros;
      break;
    }
    case Regime::Linear: {
      st.u = u0 + du0 * dy;
      st.du = du0;
      if (u0 != 0.0 && (st.u == 0.0 || std::signbit(st.u) != std::signbit(u0))) ++zeros;
      break;
    }
  }
  st.renormalize();
}

} // namespace

PropagateResult propagate(double lambda, double mu, const LayeredProfile& profile) {
  if (lambda <= 0.0) throw SolverError("propagate requires lambda > 0");
  StateVector st{0.0, 1.0, 0};
  int zeros = 0;
  const double tol_q = default_tol_q(mu);
  const auto& bp = profile.breakpoints();
  for (std::size_t j = 0; j < profile.layer_count(); ++j) {
    LayerRegime reg = layer_regime(lambda, mu, profile.values()[j], tol_q);
    step_layer(st, reg, bp[j + 1] - bp[j], zeros);
  }
  return {st, zeros};
}

DispersionResult dispersion(double lambda, double mu, const LayeredProfile& profile) {
  PropagateResult pr = propagate(lambda, mu, profile);
  DispersionResult r;
  r.value = pr.state.u;
  r.exp2 = pr.state.exp2;
  r.zero_count = pr.zero_count;
  const double c_last = profile.values().back();
  LayerRegime reg = layer_regime(lambda, mu, c_last, default_tol_q(mu));
  const double wref = reg.tag == Regime::Linear ? std::max(mu, 1.0 / profile.height())
                                                : reg.wavenumber;
  r.residual = std::abs(pr.state.u) / std::hypot(pr.state.u, pr.state.du / wref);
  return r;
}

std::vector<Eigenpair> eigenvalues_in_window(int k, double mu, double lambda_lo,
                                             double lambda_hi, const LayeredProfile& profile,
                                             double rel_tol) {
  if (!(0.0 < lambda_lo && lambda_lo < lambda_hi))
    throw SolverError("eigenvalue window requires 0 < lambda_lo < lambda_hi");
  auto count = [&](double lam) { return propagate(lam, mu, profile).zero_count; };
  const int n_lo = count(lambda_lo);
  const int n_hi = count(lambda_hi);

  std::vector<Eigenpair> out;
  double lo_start = lambda_lo;
  for (int target = n_lo + 1; target <= n_hi; ++target) {
    double lo = lo_start, hi = lambda_hi;
    while (hi - lo > rel_tol * hi) {
      double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;  // double resolution reached
      if (count(mid) >= target)
        hi = mid;
      else
        lo = mid;
    }
    Eigenpair p;
    p.lambda = 0.5 * (lo + hi);
    p.k = k;
    p.ell = target;
    p.residual = dispersion(p.lambda, mu, profile).residual;
    out.push_back(p);
    lo_start = hi;
  }
  return out;
}

namespace {

struct EndState {
  double u = 0.0, du = 0.0;
  long exp2 = 0;
};

LayerCoef coef_from_left(const LayerRegime& reg, double y_left, double u, double du, long e) {
  LayerCoef c;
  c.regime = reg.tag;
  c.q = reg.q;
  c.omega = reg.wavenumber;
  c.exp2 = e;
  switch (reg.tag) {
    case Regime::Oscillatory: {
      const double w = reg.wavenumber;
      c.beta = std::hypot(u, du / w);
      const double phi = std::atan2(u * w, du);
      c.gamma = y_left - phi / w;
      break;
    }
    case Regime::Evanescent: {
      const double w = reg.wavenumber;
      c.decay = 0.5 * (u - du / w);
      c.grow = 0.5 * (u + du / w);
      break;
    }
    case Regime::Linear:
      c.val = u;
      c.slope = du;
      break;
  }
  return c;
}

LayerCoef coef_from_right(const LayerRegime& reg, double y_left, double dy, double u, double du,
                          long e) {
  LayerCoef c;
  c.regime = reg.tag;
  c.q = reg.q;
  c.omega = reg.wavenumber;
  c.exp2 = e;
  switch (reg.tag) {
    case Regime::Oscillatory: {
      const double w = reg.wavenumber;
      c.beta = std::hypot(u, du / w);
      const double phi_right = std::atan2(u * w, du);
      c.gamma = (y_left + dy) - phi_right / w;
      break;
    }
    case Regime::Evanescent: {
      const double w = reg.wavenumber;
      const double x = w * dy;
      // grow*e^{wx} = (u + du/w)/2, decay*e^{-wx} = (u - du/w)/2.
      if (x <= 300.0) {
        c.decay = 0.5 * (u - du / w) * std::exp(x);
        c.grow = 0.5 * (u + du / w) * std::exp(-x);
      } else {
        double mant;
        long ee;
        exp_split(x, mant, ee);
        c.decay = 0.5 * (u - du / w) * mant;
        c.grow = 0.5 * (u + du / w) / mant * std::exp2(-2.0 * static_cast<double>(ee));
        c.exp2 += ee;
      }
      break;
    }
    case Regime::Linear:
      c.val = u - du * dy;
      c.slope = du;
      break;
  }
  return c;
}

// (u, du) of the stored closed form at offset s from the layer's left
// endpoint; the 2^exp2 factor is NOT applied.
std::pair<double, double> eval_coef(const LayerCoef& c, double y_left, double s) {
  switch (c.regime) {
    case Regime::Oscillatory: {
      const double ph = c.omega * (y_left + s - c.gamma);
      return {c.beta * std::sin(ph), c.beta * c.omega * std::cos(ph)};
    }
    case Regime::Evanescent: {
      const double ep = std::exp(-c.omega * s), em = std::exp(c.omega * s);
      const double u = c.decay * ep + c.grow * em;
      const double du = c.omega * (-c.decay * ep + c.grow * em);
      return {u, du};
    }
    case Regime::Linear:
    default:
      return {c.val + c.slope * s, c.slope};
  }
}

// int_{s1}^{s2} u_mant^2 ds for the closed form (2^{2 exp2} not applied).
double coef_mass(const LayerCoef& c, double y_left, double s1, double s2) {
  switch (c.regime) {
    case Regime::Oscillatory: {
      const double w = c.omega;
      auto F = [&](double s) {
        const double ph = w * (y_left + s - c.gamma);
        return 0.5 * s - std::sin(2.0 * ph) / (4.0 * w);
      };
      return c.beta * c.beta * (F(s2) - F(s1));
    }
    case Regime::Evanescent: {
      const double w = c.omega;
      const double P = c.decay, Q = c.grow;
      // P^2 (e^{-2ws1} - e^{-2ws2}) / 2w
      const double pterm =
          -P * P * std::exp(-2.0 * w * s1) * std::expm1(-2.0 * w * (s2 - s1)) / (2.0 * w);
      double qterm;
      if (2.0 * w * s2 <= 600.0) {
        const double t = Q * std::exp(w * s1);
        qterm = t * t * std::expm1(2.0 * w * (s2 - s1)) / (2.0 * w);
      } else {
        const double t2 = Q * std::exp(w * s2), t1 = Q * std::exp(w * s1);
        qterm = (t2 * t2 - t1 * t1) / (2.0 * w);
      }
      return pterm + qterm + 2.0 * P * Q * (s2 - s1);
    }
    case Regime::Linear:
    default: {
      auto F = [&](double s) {
        const double v = c.val + c.slope * s;
        return c.slope == 0.0 ? c.val * c.val * s : v * v * v / (3.0 * c.slope);
      };
      return F(s2) - F(s1);
    }
  }
}

double amplitude_measure(const EndState& s, double wref) {
  return std::hypot(s.u, s.du / wref) * std::exp2(static_cast<double>(std::min<long>(s.exp2, 512)));
}

} // namespace

Eigenfunction1D build_eigenfunction(const Eigenpair& pair, double mu,
                                    const LayeredProfile& profile, double residual_tol) {
  DispersionResult disp = dispersion(pair.lambda, mu, profile);
  if (disp.residual > residual_tol) {
    std::ostringstream os;
    os << "lambda = " << pair.lambda << " is not an eigenvalue (residual " << disp.residual
       << ")";
    throw NotAnEigenvalue(os.str());
  }

  const double lambda = pair.lambda;
  const double tol_q = default_tol_q(mu);
  const auto& bp = profile.breakpoints();
  const std::size_t N = profile.layer_count();

  std::vector<LayerRegime> regs(N);
  for (std::size_t j = 0; j < N; ++j)
    regs[j] = layer_regime(lambda, mu, profile.values()[j], tol_q);

  // Forward states at every interface.
  std::vector<EndState> fwd(N + 1);
  {
    StateVector st{0.0, 1.0, 0};
    int zeros = 0;
    fwd[0] = {st.u, st.du, st.exp2};
    for (std::size_t j = 0; j < N; ++j) {
      step_layer(st, regs[j], bp[j + 1] - bp[j], zeros);
      fwd[j + 1] = {st.u, st.du, st.exp2};
    }
  }

  // Backward states (propagating the Dirichlet condition at H leftward),
  // so evanescent tails are represented from their stable side.
  std::vector<EndState> bwd(N + 1);
  std::size_t match = N;  // interface index where the two halves are glued
  double sigma = 1.0;
  long sigma_e = 0;
  if (N >= 2) {
    StateVector st{0.0, -1.0, 0};
    int zeros = 0;
    bwd[N] = {st.u, st.du, st.exp2};
    for (std::size_t j = N; j-- > 0;) {
      // Inverse propagator = propagator with (dy -> -dy) sign pattern.
      const double dy = bp[j + 1] - bp[j];
      LayerRegime reg = regs[j];
      StateVector tmp = st;
      switch (reg.tag) {
        case Regime::Oscillatory: {
          const double x = reg.wavenumber * dy, w = reg.wavenumber;
          const double cs = std::cos(x), sn = std::sin(x);
          tmp.u = st.u * cs - st.du * sn / w;
          tmp.du = st.u * w * sn + st.du * cs;
          break;
        }
        case Regime::Evanescent: {
          const double w = reg.wavenumber, x = w * dy;
          if (x <= 30.0) {
            const double ch = std::cosh(x), sh = std::sinh(x);
            tmp.u = st.u * ch - st.du * sh / w;
            tmp.du = -st.u * w * sh + st.du * ch;
          } else {
            double mant;
            long e;
            exp_split(x, mant, e);
            const double em = std::exp(-2.0 * x);
            const double ch = 0.5 * (1.0 + em), sh = 0.5 * (1.0 - em);
            tmp.u = (st.u * ch - st.du * sh / w) * mant;
            tmp.du = (-st.u * w * sh + st.du * ch) * mant;
            tmp.exp2 += e;
          }
          break;
        }
        case Regime::Linear:
          tmp.u = st.u - st.du * dy;
          tmp.du = st.du;
          break;
      }
      tmp.renormalize();
      st = tmp;
      (void)zeros;
      bwd[j] = {st.u, st.du, st.exp2};
    }

    // Glue where the forward amplitude peaks (stable on both sides).
    const double wref = std::max(mu, 1.0 / profile.height());
    double best = -1.0;
    for (std::size_t i = 1; i < N; ++i) {
      double a = amplitude_measure(fwd[i], wref);
      if (a > best) {
        best = a;
        match = i;
      }
    }
    const EndState& F = fwd[match];
    const EndState& G = bwd[match];
    if (std::abs(F.u) >= std::abs(F.du) / wref) {
      sigma = F.u / G.u;
    } else {
      sigma = F.du / G.du;
    }
    sigma_e = F.exp2 - G.exp2;
  }

  Eigenfunction1D ef;
  ef.lambda = lambda;
  ef.mu = mu;
  ef.k = pair.k;
  ef.ell = pair.ell;
  ef.profile = profile;
  ef.layers.resize(N);
  for (std::size_t j = 0; j < N; ++j) {
    if (j < match) {
      ef.layers[j] = coef_from_left(regs[j], bp[j], fwd[j].u, fwd[j].du, fwd[j].exp2);
    } else {
      const EndState& G = bwd[j + 1];
      LayerCoef c = coef_from_right(regs[j], bp[j], bp[j + 1] - bp[j], sigma * G.u,
                                    sigma * G.du, G.exp2 + sigma_e);
      ef.layers[j] = c;
    }
  }

  // Weighted normalization: int u^2 c^{-1} dy = 1.
  double norm2 = 0.0;
  for (std::size_t j = 0; j < N; ++j) {
    double m = coef_mass(ef.layers[j], bp[j], 0.0, bp[j + 1] - bp[j]) / profile.values()[j];
    norm2 += std::ldexp(m, static_cast<int>(2 * ef.layers[j].exp2));
  }
  const double scale_inv = std::sqrt(norm2);
  for (std::size_t j = 0; j < N; ++j) {
    LayerCoef& c = ef.layers[j];
    const double s = std::ldexp(1.0, static_cast<int>(c.exp2)) / scale_inv;
    c.beta *= s;
    c.decay *= s;
    c.grow *= s;
    c.val *= s;
    c.slope *= s;
    c.exp2 = 0;
  }
  return ef;
}

std::pair<double, double> Eigenfunction1D::value(double y) const {
  if (y < 0.0 || y > profile.height()) throw OutOfDomain("evaluation point outside [0,H]");
  std::size_t j = profile.layer_at(y);
  return eval_coef(layers[j], profile.breakpoints()[j], y - profile.breakpoints()[j]);
}

double Eigenfunction1D::transmission_residual() const {
  const auto& bp = profile.breakpoints();
  const double wref = std::max(mu, 1.0 / profile.height());
  double worst = 0.0;
  for (std::size_t i = 1; i < layers.size(); ++i) {
    auto [ul, dul] = eval_coef(layers[i - 1], bp[i - 1], bp[i] - bp[i - 1]);
    auto [ur, dur] = eval_coef(layers[i], bp[i], 0.0);
    double amp = std::max(std::hypot(ul, dul / wref), std::hypot(ur, dur / wref));
    if (amp == 0.0) continue;
    worst = std::max(worst, (std::abs(ul - ur) + std::abs(dul - dur) / wref) / amp);
  }
  return worst;
}

std::pair<double, double> evaluate(const Eigenfunction1D& ef, double y) { return ef.value(y); }

double mass(const Eigenfunction1D& ef, double a, double b, bool weighted) {
  if (a < 0.0 || b > ef.profile.height() || a >= b)
    throw OutOfDomain("mass interval must satisfy 0 <= a < b <= H");
  const auto& bp = ef.profile.breakpoints();
  double total = 0.0;
  for (std::size_t j = 0; j < ef.layers.size(); ++j) {
    const double lo = std::max(a, bp[j]);
    const double hi = std::min(b, bp[j + 1]);
    if (hi <= lo) continue;
    double m = coef_mass(ef.layers[j], bp[j], lo - bp[j], hi - bp[j]);
    if (weighted) m /= ef.profile.values()[j];
    total += m;
  }
  return total;
}

} // namespace strat
