#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <deque>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sixvertex/contour.hpp"
#include "sixvertex/errors.hpp"
#include "sixvertex/partition_exact.hpp"
#include "sixvertex/precision.hpp"
#include "sixvertex/quadrature.hpp"
#include "sixvertex/regression.hpp"
#include "sixvertex/root_finding.hpp"
#include "sixvertex/zeta.hpp"

namespace sixvertex {

// ---------------------------------------------------------------------------
// Reference expansions in k

template <class Real>
Real bk_expansion(int k, const Real& r, const Real& zeta) {
  using std::sqrt;
  const Real kk(k);
  return 1 - 1 / (2 * kk) + zeta / (8 * sqrt(pi_v<Real>() * (r - 1)) * kk * sqrt(kk));
}

template <class Real>
Real lk_expansion(int k, const Real& r, const Real& zeta) {
  using std::log;
  using std::sqrt;
  const Real kk(k);
  return -2 - 4 * ln2_v<Real>() - log(kk) / kk + 1 / kk -
         3 * zeta / (4 * sqrt(pi_v<Real>() * (r - 1)) * kk * sqrt(kk)) + 1 / (2 * kk * kk);
}

/// Two-term expansion of ln(h_k/(k!)²).
template <class Real>
Real norm_expansion(int k, const Real& r, const Real& zeta) {
  using std::sqrt;
  const Real kk(k);
  return -zeta / (2 * sqrt(pi_v<Real>() * (r - 1) * kk)) + 1 / (4 * kk);
}

// ---------------------------------------------------------------------------
// MRS numbers

/// b + ε²/2 − (2ε³/π)∫_0^{1/ε²} (r−1)b/(e^{4(r−1)bx}−1)·√(x/(1−ε²x)) dx − 1.
template <class Real>
Real f_b_eps(const Real& b, const Real& eps, const Real& r, const PrecisionContext& ctx) {
  using std::sqrt;
  if (!(b >= Real(0.5) && b <= Real(2))) throw DomainError("f_b_eps: b outside [1/2, 2]");
  if (!(eps >= 0 && eps <= 1)) throw DomainError("f_b_eps: eps outside [0, 1]");
  if (!(r > 1)) throw DomainError("f_b_eps: r must exceed 1");
  if (eps == 0) return b - 1;
  const Real c = (r - 1) * b;
  const Real e2 = eps * eps;
  auto g = [&](const Real& x, const Real&, const Real& dhi) {
    return Real(c * inv_expm1(Real(4 * c * x)) * sqrt(x / (e2 * dhi)));
  };
  const auto integral = integrate_singular(g, Real(0), Real(1 / e2), -0.5, -0.5, ctx, {}, "f_b_eps");
  return b + e2 / 2 - 2 * e2 * eps / pi_v<Real>() * integral.value - 1;
}

template <class Real>
struct MrsNumbers {
  int k = 0;
  Real b;
  Real beta;
  Real residual;
};

/// Root of f_b_eps(·, k^{−1/2}, r) in [1/2, 2], solved to |f| ≤ min(k^{−4}, quad_tol).
template <class Real>
MrsNumbers<Real> solve_bk(int k, const Real& r, const PrecisionContext& ctx) {
  using std::sqrt;
  if (k < 1) throw DomainError("solve_bk: k must be positive");
  const Real eps = 1 / sqrt(Real(k));
  const Real tol = std::min(std::pow(double(k), -4.0), ctx.quad_tol);
  auto f = [&](const Real& b) { return f_b_eps(b, eps, r, ctx); };
  MrsNumbers<Real> out;
  out.k = k;
  out.b = find_root(f, Real(0.5), Real(2), tol, "solve_bk");
  out.beta = 4 * Real(k) * out.b;
  out.residual = f(out.b);
  return out;
}

// ---------------------------------------------------------------------------
// Equilibrium problem for the weight e^{−x} − e^{−rx} rescaled to [0, 1]

struct ContourOptions {
  /// Stadium half-width parameter; 0 selects π/(4(r−1)).
  double delta = 0.0;
};

template <class Real>
class EquilibriumProblem {
 public:
  using Complex = std::complex<Real>;

  EquilibriumProblem(int k, const Real& r, const Real& b, const PrecisionContext& ctx,
                     ContourOptions opts = {})
      : k_(k), r_(r), b_(b), ctx_(ctx) {
    if (k < 1) throw DomainError("EquilibriumProblem: k must be positive");
    if (!(r > 1)) throw DomainError("EquilibriumProblem: r must exceed 1");
    gamma_ = 4 * (r - 1) * b;
    delta_ = opts.delta > 0 ? Real(opts.delta) : Real(pi_v<Real>() / (4 * (r - 1)));
    r0_ = delta_ / k;
    r1_ = delta_ * (1 + Real(1) / k);
    contour_for_radius(r1_);
  }

  int k() const { return k_; }
  const Real& r() const { return r_; }
  const Real& b() const { return b_; }
  const Real& gamma() const { return gamma_; }
  const Real& delta() const { return delta_; }

  /// Poles of 1/(e^{γky}−1) off the origin: 2πni/(γk).
  Complex pole(int n) const { return Complex(Real(0), 2 * pi_v<Real>() * n / (gamma_ * k_)); }

  /// 1/(e^{γky}−1).
  Real weight_factor(const Real& y) const { return inv_expm1(Real(gamma_ * k_ * y)); }
  Complex weight_factor(const Complex& y) const { return inv_expm1(Complex(gamma_ * k_ * y)); }

  Real V(const Real& x) const {
    using std::expm1;
    using std::log;
    return 4 * b_ * x + (log(4 * b_ * k_ * x) - log(-expm1(Real(-gamma_ * k_ * x)))) / k_;
  }

  Real V_prime(const Real& x) const { return 4 * b_ + 1 / (k_ * x) - gamma_ * weight_factor(x); }

  /// s_k(z) = −(γ/2πi)∮ √(y/(y−1)) dy/((e^{γky}−1)(y−z)) over a stadium enclosing z.
  Complex s_contour(const Complex& z) const { return contour_kernel(z, 1); }
  Complex q_contour(const Complex& z) const { return Complex(4 * b_) + s_contour(z); }
  Real q_contour(const Real& x) const { return q_contour(Complex(x, Real(0))).real(); }

  /// s_k(z) for real z > 1 with the cut collapsed onto [0, 1]:
  /// −γ√(z/(z−1))/(e^{γkz}−1) + (γ/π)∫_0^1 √(y/(1−y)) dy/((e^{γky}−1)(z−y)).
  Real s_real(const Real& z) const {
    using std::sqrt;
    if (!(z > 1)) throw DomainError("s_real: needs z > 1");
    const Real zm1 = z - 1;
    auto g = [&](const Real& y, const Real&, const Real& dhi) {
      return Real(sqrt(y / dhi) * weight_factor(y) / (zm1 + dhi));
    };
    const auto part = integrate_singular(g, Real(0), Real(1), -0.5, -0.5, ctx_, {}, "s_real");
    return -gamma_ * sqrt(z / zm1) * weight_factor(z) + gamma_ / pi_v<Real>() * part.value;
  }
  Real q_real(const Real& z) const { return 4 * b_ + s_real(z); }

  /// Coefficient of 1/z in s_k at infinity: (γ/π)∫_0^1 √(y/(1−y)) dy/(e^{γky}−1).
  Real a_k() const {
    using std::sqrt;
    auto g = [&](const Real& y, const Real&, const Real& dhi) {
      return Real(sqrt(y / dhi) * weight_factor(y));
    };
    const auto part = integrate_singular(g, Real(0), Real(1), -0.5, -0.5, ctx_, {}, "a_k");
    return gamma_ / pi_v<Real>() * part.value;
  }

  /// Central difference of the contour representation at z = 1, step 2^{−p/3}
  /// for a p-bit mantissa.
  Real q_prime_1_difference() const {
    const int p = static_cast<int>(precision_bits());
    const Real h = ldexp_real(Real(1), -p / 3);
    return (q_contour(Real(1 + h)) - q_contour(Real(1 - h))) / (2 * h);
  }

  /// q_k′(1) = −(γ/2πi)∮ √(y/(y−1)) dy/((e^{γky}−1)(y−1)²).
  Real q_prime_1_direct() const { return contour_kernel(Complex(Real(1), Real(0)), 2).real(); }

  /// ∫_1^∞ −γ/(e^{γkz}−1) dz, integrated with its e^{−γkz} envelope.
  Real I1() const {
    auto g = [&](const Real& z) { return Real(-gamma_ * weight_factor(z)); };
    const double rate = to_double(Real(gamma_ * k_));
    const Real inf = std::numeric_limits<Real>::infinity();
    return integrate_singular(g, Real(1), inf, 0.0, 0.0, ctx_, TailEnvelope{rate}, "I1").value;
  }

  /// ∫_1^∞ [√((z−1)/z)·q_k(z) + 2/z − 4b − 1/(kz)] dz, taken in u = 1/z with
  /// q_k from the real representation.
  Real I2() const {
    using std::sqrt;
    const Real g_over_pi = gamma_ / pi_v<Real>();
    auto g = [&](const Real& u, const Real&, const Real& du) {
      // J(u) = ∫_0^1 √(y/(1−y)) dy/((e^{γky}−1)(1−uy))
      auto inner = [&](const Real& y, const Real&, const Real& dhi) {
        return Real(sqrt(y / dhi) * weight_factor(y) / (du + u * dhi));
      };
      const Real J = integrate_singular(inner, Real(0), Real(1), -0.5, -0.5, ctx_, {}, "I2").value;
      const Real root = sqrt(du);
      const Real head = -4 * b_ / (1 + root) + 2 - Real(1) / k_ + root * g_over_pi * J;
      return Real(head / u - gamma_ * weight_factor(Real(1 / u)) / (u * u));
    };
    return integrate_singular(g, Real(0), Real(1), 0.0, 0.5, ctx_, {}, "I2").value;
  }

  /// l_k = I_2 − I_1 − V_k(1).
  Real l_k() const { return I2() - I1() - V(Real(1)); }

  /// ψ_k(x) = (1/2π)√((1−x)/x)·q_k(x), q_k from the contour.
  Real density(const Real& x) const {
    using std::sqrt;
    if (!(x > 0 && x < 1)) throw DomainError("density: x outside (0, 1)");
    return sqrt((1 - x) / x) * q_contour(x) / (2 * pi_v<Real>());
  }

  Real density_mass() const {
    using std::sqrt;
    auto g = [&](const Real& x, const Real& dlo, const Real& dhi) {
      return Real(sqrt(dhi / dlo) * q_contour(x) / (2 * pi_v<Real>()));
    };
    return integrate_singular(g, Real(0), Real(1), -0.5, 0.5, ctx_, {}, "density_mass").value;
  }

  /// 2∫_0^1 ln|x−y| ψ_k(y) dy, split at the logarithmic singularity.
  Real log_potential(const Real& x) const {
    using std::log;
    using std::sqrt;
    if (!(x > 0 && x < 1)) throw DomainError("log_potential: x outside (0, 1)");
    const Real two_pi = 2 * pi_v<Real>();
    auto left = [&](const Real& y, const Real& dlo, const Real& dhi) {
      return Real(log(dhi) * sqrt((1 - y) / dlo) * q_contour(y) / two_pi);
    };
    auto right = [&](const Real& y, const Real& dlo, const Real& dhi) {
      return Real(log(dlo) * sqrt(dhi / y) * q_contour(y) / two_pi);
    };
    const Real a = integrate_singular(left, Real(0), x, -0.5, kLogEndpoint, ctx_, {}, "log_potential").value;
    const Real c = integrate_singular(right, x, Real(1), kLogEndpoint, 0.5, ctx_, {}, "log_potential").value;
    return 2 * (a + c);
  }

  /// E(x) = 2∫ ln|x−y|ψ_k(y)dy − V_k(x) − l_k; zero on the support.
  Real euler_lagrange(const Real& x, const Real& l) const { return log_potential(x) - V(x) - l; }

 private:
  struct Stadium {
    Real right_radius;
    Contour<Real> contour;
  };

  static Real ldexp_real(const Real& x, int e) {
    using std::ldexp;
    if constexpr (is_big_float_v<Real>) {
      return mp::ldexp(x, e);
    } else {
      return ldexp(x, e);
    }
  }

  static unsigned precision_bits() {
    if constexpr (is_big_float_v<Real>) {
      return static_cast<unsigned>(std::ceil(BigFloat::default_precision() * 3.3219280948873623));
    } else {
      return std::numeric_limits<Real>::digits;
    }
  }

  // Stadium with left radius δ/k and the given right-cap radius. The poles
  // 2πni/(γk) sit on the imaginary axis next to the left cap, so clearing
  // n = ±1..±4 clears them all.
  const Contour<Real>& contour_for_radius(const Real& radius) const {
    for (const auto& s : stadia_)
      if (s.right_radius == radius) return s.contour;
    Stadium s{radius, stadium_contour(r0_, r1_, radius)};
    std::vector<Complex> poles;
    for (int n = 1; n <= 4; ++n) {
      poles.push_back(pole(n));
      poles.push_back(pole(-n));
    }
    check_clearance(s.contour, poles, to_double(Real(r0_ / 4)));
    stadia_.push_back(std::move(s));
    return stadia_.back().contour;
  }

  bool inside_stadium(const Complex& z, const Real& radius) const {
    using std::abs;
    const Real x = z.real();
    const Real y = abs(z.imag());
    if (x < 0) return cabs(z) < r0_;
    if (x > 1) return cabs(Complex(z - Complex(Real(1), Real(0)))) < radius;
    return y < r0_ + (r1_ - r0_) * x;
  }

  // Points right of 1 that the default stadium misses get a wider right cap
  // of radius 1.5|z−1|.
  const Contour<Real>& contour_enclosing(const Complex& z) const {
    if (inside_stadium(z, r1_)) return contour_for_radius(r1_);
    if (z.real() > 1) {
      const Real radius = Real(1.5) * cabs(Complex(z - Complex(Real(1), Real(0))));
      if (inside_stadium(z, radius)) return contour_for_radius(radius);
    }
    throw InvalidContour("q_contour", "point (" + to_decimal(z.real()) + ", " + to_decimal(z.imag()) +
                                          ") is not enclosed by an admissible stadium");
  }

  Complex contour_kernel(const Complex& z, int power) const {
    const auto& c = contour_enclosing(z);
    const Complex one(Real(1), Real(0));
    auto f = [&](const Complex& y) {
      Complex d = y - z;
      if (power == 2) d *= (y - z);
      return Complex(csqrt(Complex(y / (y - one))) * weight_factor(y) / d);
    };
    const Complex integral = contour_integral(f, c, ctx_).value;
    // −γ/(2πi)·I = (iγ/2π)·I
    return Complex(Real(0), gamma_ / (2 * pi_v<Real>())) * integral;
  }

  int k_;
  Real r_, b_, gamma_, delta_, r0_, r1_;
  PrecisionContext ctx_;
  mutable std::deque<Stadium> stadia_;
};

/// Callable ψ_k on (0, 1).
template <class Real>
struct EquilibriumDensity {
  const EquilibriumProblem<Real>* problem;
  Real operator()(const Real& x) const { return problem->density(x); }
};

template <class Real>
struct MrsSolution {
  int k = 0;
  Real r, b, beta, gamma;
  Real a, l;
  Real q0, q1, q1prime, q1prime_direct;
  Real I1, I2, V1;
};

template <class Real>
MrsSolution<Real> solve_mrs(int k, const Real& r, const PrecisionContext& ctx, ContourOptions opts = {}) {
  const auto mrs = solve_bk(k, r, ctx);
  const EquilibriumProblem<Real> prob(k, r, mrs.b, ctx, opts);
  MrsSolution<Real> s;
  s.k = k;
  s.r = r;
  s.b = mrs.b;
  s.beta = mrs.beta;
  s.gamma = prob.gamma();
  s.a = prob.a_k();
  s.I1 = prob.I1();
  s.I2 = prob.I2();
  s.V1 = prob.V(Real(1));
  s.l = s.I2 - s.I1 - s.V1;
  s.q0 = prob.q_contour(Real(0));
  s.q1 = prob.q_contour(Real(1));
  s.q1prime = prob.q_prime_1_difference();
  s.q1prime_direct = prob.q_prime_1_direct();
  return s;
}

// ---------------------------------------------------------------------------
// Norm asymptotics

template <class Real>
struct VanlessenNorm {
  Real log_h;                ///< ln h_k from the formula with computed q-values
  Real bracket;              ///< 1 + (3/(4q0) + 47/(12q1) − q1′/(4q1²))/k
  Real bracket_simplified;   ///< 1 + 7/(6k)
};

template <class Real>
VanlessenNorm<Real> h_vanlessen(const MrsSolution<Real>& s) {
  using std::log;
  const Real kk(s.k);
  VanlessenNorm<Real> v;
  v.bracket = 1 + (3 / (4 * s.q0) + 47 / (12 * s.q1) - s.q1prime / (4 * s.q1 * s.q1)) / kk;
  v.bracket_simplified = 1 + 7 / (6 * kk);
  v.log_h = log(pi_v<Real>() / 8) + (2 * kk + 2) * log(s.beta) + kk * s.l + log(v.bracket);
  return v;
}

/// ln k! at the current precision of Real.
template <class Real>
Real log_factorial(int k) {
  Real s = 0;
  for (int i = 2; i <= k; ++i) {
    using std::log;
    s += log(Real(i));
  }
  return s;
}

// ---------------------------------------------------------------------------
// Theorem harnesses

struct TheoremRow {
  int index = 0;
  BigFloat lhs, expansion, residual, residual_scaled;
};

struct TheoremReport {
  Rational alpha;
  unsigned bits = 0;
  std::vector<TheoremRow> rows;
  int fit_from = 0;                ///< first index used in the slope fit
  std::optional<double> slope;     ///< log|residual| vs log k, set with ≥ 8 fitted rows
  std::optional<double> drift;     ///< log|residual_scaled| vs log k over the same rows
};

/// Quarter-octave grid ⌊kmin·2^{j/4}⌋ ≤ kmax, deduplicated.
inline std::vector<int> quarter_octave_grid(int kmin, int kmax) {
  std::vector<int> ks;
  for (int j = 0;; ++j) {
    const int k = static_cast<int>(std::floor(kmin * std::pow(2.0, j / 4.0) + 1e-9));
    if (k > kmax) break;
    if (ks.empty() || ks.back() != k) ks.push_back(k);
  }
  return ks;
}

inline constexpr int kSlopeDiscard = 2;
inline constexpr int kMinSlopeRows = 8;

/// Residuals of ln(h_k/(k!)²) against its two-term expansion on the
/// quarter-octave grid of [kmin, kmax], from exact Hankel minors.
inline TheoremReport theorem1_report(int kmin, int kmax, const Rational& alpha, const PrecisionContext& ctx,
                                     const NormTable* cached = nullptr) {
  if (!(alpha > 1)) throw DomainError("theorem1_report: alpha must exceed 1");
  if (kmin < 1 || kmax < kmin) throw DomainError("theorem1_report: empty k range");
  const Rational r = (alpha + 1) / (alpha - 1);
  NormTable local;
  if (!cached || !cached->exact || cached->size() <= kmax) {
    local = norms_from_moments(moments_critical(2 * kmax, r, ctx), kmax + 1, ctx);
    cached = &local;
  }
  TheoremReport rep;
  rep.alpha = alpha;
  rep.bits = ctx.bits;
  PrecisionGuard guard(ctx.bits);
  const BigFloat zeta = zeta_three_halves_as<BigFloat>(ctx);
  const BigFloat rf = from_rational<BigFloat>(r);
  for (int k : quarter_octave_grid(kmin, kmax)) {
    TheoremRow row;
    row.index = k;
    row.lhs = cached->log_ratio(k, ctx.bits);
    row.expansion = norm_expansion(k, rf, zeta);
    row.residual = row.lhs - row.expansion;
    row.residual_scaled = row.residual * BigFloat(k) * sqrt(BigFloat(k));
    rep.rows.push_back(row);
  }
  if (static_cast<int>(rep.rows.size()) - kSlopeDiscard >= kMinSlopeRows) {
    std::vector<double> x, y, ys;
    for (std::size_t i = kSlopeDiscard; i < rep.rows.size(); ++i) {
      x.push_back(rep.rows[i].index);
      y.push_back(to_double(rep.rows[i].residual));
      ys.push_back(to_double(rep.rows[i].residual_scaled));
    }
    rep.fit_from = rep.rows[kSlopeDiscard].index;
    rep.slope = loglog_slope(x, y);
    rep.drift = loglog_slope(x, ys);
  }
  return rep;
}

struct Theorem2Row {
  int n = 0;
  BigFloat lnZ, S;
};

struct Theorem2Fit {
  Rational alpha;
  unsigned bits = 0;
  double lnF = 0, lnG = 0, kappa = 0, C0 = 0;
  double lnG_reference = 0;
  int fit_from = 0;
  std::vector<Theorem2Row> rows;
  std::vector<int> increment_n;
  std::vector<double> increments;  ///< S_n − S_{2n}
  std::optional<double> increment_slope;
};

/// Fit of ln Z_n − n² ln F on {√n, ln n, 1} over 3 ≤ n ≤ nmax, plus the
/// remainder S_n = ln Z_n − n² ln F − √n·lnG − (ln n)/4 with lnG = −ζ(3/2)√((α−1)/(2π)).
inline Theorem2Fit theorem2_fit(int nmax, const Rational& alpha, const PrecisionContext& ctx,
                                const NormTable* cached = nullptr) {
  if (!(alpha > 1)) throw DomainError("theorem2_fit: alpha must exceed 1");
  constexpr int first = kSlopeDiscard + 1;
  if (nmax < first + 2) throw SizeError("theorem2_fit: nmax too small for a three-parameter fit");
  const Rational r = (alpha + 1) / (alpha - 1);
  NormTable local;
  if (!cached || !cached->exact || cached->size() < nmax) {
    local = norms_from_moments(moments_critical(2 * nmax - 2, r, ctx), nmax, ctx);
    cached = &local;
  }
  Theorem2Fit fit;
  fit.alpha = alpha;
  fit.bits = ctx.bits;
  fit.fit_from = first;
  PrecisionGuard guard(ctx.bits);
  const BigFloat zeta = zeta_three_halves_as<BigFloat>(ctx);
  const BigFloat lnF = log(from_rational<BigFloat>((alpha + 1) / 2));
  const BigFloat lnG = -zeta * sqrt(from_rational<BigFloat>(alpha - 1) / (2 * pi_v<BigFloat>()));
  fit.lnF = to_double(lnF);
  fit.lnG_reference = to_double(lnG);
  BigFloat acc = 0;
  std::vector<double> c_sqrt, c_log, c_one, y;
  for (int n = 1; n <= nmax; ++n) {
    acc += cached->log_ratio(n - 1, ctx.bits);
    Theorem2Row row;
    row.n = n;
    row.lnZ = BigFloat(n) * n * lnF + acc;
    const BigFloat bn(n);
    row.S = acc - sqrt(bn) * lnG - log(bn) / 4;
    fit.rows.push_back(row);
    if (n >= first) {
      c_sqrt.push_back(std::sqrt(double(n)));
      c_log.push_back(std::log(double(n)));
      c_one.push_back(1.0);
      y.push_back(to_double(acc));
    }
  }
  const auto c = least_squares({c_sqrt, c_log, c_one}, y);
  fit.lnG = c[0];
  fit.kappa = c[1];
  fit.C0 = c[2];
  std::vector<double> ns;
  for (int n = first; 2 * n <= nmax; ++n) {
    fit.increment_n.push_back(n);
    fit.increments.push_back(to_double(BigFloat(fit.rows[n - 1].S - fit.rows[2 * n - 1].S)));
    ns.push_back(n);
  }
  if (static_cast<int>(ns.size()) >= kMinSlopeRows) fit.increment_slope = loglog_slope(ns, fit.increments);
  return fit;
}

// ---------------------------------------------------------------------------
// Off-critical reference asymptotics

template <class Real>
struct FerroAsymptotics {
  Real C, G, F;
  Real log_value;  ///< ln(C·G^n·F^{n²})
};

/// Ferroelectric phase 0 < γ < t: Z_n ≈ C·G^n·F^{n²}, C = 1 − e^{−4γ}, G = e^{γ−t},
/// F = sinh(t+γ)/sinh(2γ).
template <class Real>
FerroAsymptotics<Real> ref_asymptotics_ferro(int n, const Real& t, const Real& gamma) {
  using std::exp;
  using std::expm1;
  using std::log;
  using std::sinh;
  if (!(gamma > 0 && gamma < t)) throw DomainError("ref_asymptotics_ferro: needs 0 < gamma < t");
  FerroAsymptotics<Real> a;
  a.C = -expm1(Real(-4 * gamma));
  a.G = exp(gamma - t);
  a.F = sinh(t + gamma) / sinh(2 * gamma);
  const Real nn(n);
  a.log_value = log(a.C) + nn * (gamma - t) + nn * nn * log(a.F);
  return a;
}

template <class Real>
struct DisorderedFreeEnergy {
  Real F;
  Real kappa;
};

/// Disordered phase |t| < γ < π/2:
/// F = π sin(γ−t) sin(γ+t)/(2γ sin 2γ cos(πt/2γ)), κ = 1/12 − 2γ²/(3π(π−γ)).
template <class Real>
DisorderedFreeEnergy<Real> ref_free_energy_disordered(const Real& t, const Real& gamma) {
  using std::abs;
  using std::sin;
  const Real pi = pi_v<Real>();
  if (!(gamma > 0 && 2 * gamma < pi && abs(t) <= gamma))
    throw DomainError("ref_free_energy_disordered: needs |t| <= gamma < pi/2");
  // cos(πt/2γ) = sin(πd/2γ) with d the distance of t to the nearer end ±γ;
  // sin d / sin(πd/2γ) → 2γ/π as d → 0.
  const Real d = gamma - abs(t);
  const Real other = gamma + abs(t);
  Real ratio;
  if (d == 0) {
    ratio = 2 * gamma / pi;
  } else {
    ratio = sin(d) / sin(pi * d / (2 * gamma));
  }
  DisorderedFreeEnergy<Real> out;
  out.F = pi * ratio * sin(other) / (2 * gamma * sin(2 * gamma));
  out.kappa = Real(1) / 12 - 2 * gamma * gamma / (3 * pi * (pi - gamma));
  return out;
}

}  // namespace sixvertex
