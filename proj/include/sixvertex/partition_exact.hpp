#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "sixvertex/model.hpp"

namespace sixvertex {

enum class WeightMode { critical, discrete };

inline std::string to_string(WeightMode m) { return m == WeightMode::critical ? "critical" : "discrete"; }

/// Moments μ_0..μ_jmax of the critical weight e^{−x} − e^{−rx} on (0,∞) or the
/// discrete weight e^{−2(t−γ)l} − e^{−2(t+γ)l} on l = 1, 2, …
/// Values are stored divided by j!, which keeps exact integers small and is
/// the normalization the Hankel minors want anyway.
struct MomentTable {
  WeightMode mode = WeightMode::critical;
  bool exact = false;
  Rational r;                    // critical mode
  FerroParam<Rational> ferro{};  // discrete mode
  unsigned bits = 0;             // precision of `scaled`
  std::vector<Rational> scaled_exact;
  std::vector<BigFloat> scaled;

  int size() const { return static_cast<int>(exact ? scaled_exact.size() : scaled.size()); }

  Rational moment_exact(int j) const {
    Rational f(1);
    for (int i = 2; i <= j; ++i) f *= i;
    return f * scaled_exact.at(j);
  }
};

/// Integer data of the critical-line Hankel matrices: with r = p/q in lowest
/// terms, M_ij = C(i+j, i)·(p^{i+j+1} − q^{i+j+1}) and μ_{i+j}/(i!j!) = M_ij/p^{i+j+1}.
struct CriticalIntegers {
  BigInt p;
  BigInt q;
};

inline CriticalIntegers critical_integers(const Rational& r) {
  if (!(r > 1)) throw DomainError("critical weight needs r > 1");
  return {numerator(r), denominator(r)};
}

namespace detail {

inline BigInt binomial(int n, int k) {
  BigInt b(1);
  for (int i = 1; i <= k; ++i) b = b * (n - k + i) / i;
  return b;
}

inline BigInt factorial(int n) {
  BigInt f(1);
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

}  // namespace detail

/// μ_j = j!(1 − r^{−(j+1)}); exact when `exact`, otherwise BigFloat at ctx.bits.
inline MomentTable moments_critical(int jmax, const Rational& r, const PrecisionContext& ctx,
                                    bool exact = true) {
  if (!(r > 1)) throw DomainError("moments_critical: r must exceed 1");
  if (jmax < 0) throw DomainError("moments_critical: jmax must be non-negative");
  MomentTable m;
  m.mode = WeightMode::critical;
  m.exact = exact;
  m.r = r;
  m.bits = ctx.bits;
  Rational inv = 1 / r;
  Rational pw = inv;
  for (int j = 0; j <= jmax; ++j) {
    if (exact) {
      m.scaled_exact.push_back(1 - pw);
    } else {
      PrecisionGuard guard(ctx.bits);
      m.scaled.push_back(BigFloat(Rational(1 - pw)));
    }
    pw *= inv;
  }
  return m;
}

namespace detail {

// Coefficients of P_j with Li_{−j}(q) = P_j(q/(1−q)): P_0 = x, P_j = x(1+x)P'_{j−1}.
inline const std::vector<std::vector<BigInt>>& polylog_polynomials(int jmax) {
  static std::vector<std::vector<BigInt>> polys{{BigInt(0), BigInt(1)}};
  while (static_cast<int>(polys.size()) <= jmax) {
    const auto& prev = polys.back();
    // x(1+x)P'(x): coefficient of x^{i} gets i·c_i (from x·P') and (i−1)·c_{i−1} (from x²·P')
    std::vector<BigInt> next(prev.size() + 1, BigInt(0));
    for (std::size_t i = 1; i < prev.size(); ++i) {
      next[i] += prev[i] * static_cast<long>(i);
      next[i + 1] += prev[i] * static_cast<long>(i);
    }
    polys.push_back(std::move(next));
  }
  return polys;
}

inline BigFloat eval_poly(const std::vector<BigInt>& c, const BigFloat& x) {
  BigFloat acc = 0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + BigFloat(*it);
  return acc;
}

}  // namespace detail

/// Li_{−j}(q) = Σ_{l≥1} l^j q^l for 0 < q < 1, via the closed rational form.
inline BigFloat polylog_neg(int j, const BigFloat& q) {
  const auto& polys = detail::polylog_polynomials(j);
  return detail::eval_poly(polys[j], BigFloat(q / (1 - q)));
}

/// μ_j = Li_{−j}(q₋) − Li_{−j}(q₊), q∓ = e^{−2(t∓γ)}, at `bits` of precision.
inline MomentTable moments_discrete(int jmax, const FerroParam<Rational>& p, unsigned bits) {
  p.validate();
  MomentTable m;
  m.mode = WeightMode::discrete;
  m.exact = false;
  m.ferro = p;
  m.bits = bits;
  PrecisionGuard guard(bits);
  const BigFloat t(p.t), g(p.gamma);
  const BigFloat qm = exp(-2 * (t - g));
  const BigFloat qp = exp(-2 * (t + g));
  BigFloat fact = 1;
  for (int j = 0; j <= jmax; ++j) {
    if (j > 0) fact *= j;
    m.scaled.push_back((polylog_neg(j, qm) - polylog_neg(j, qp)) / fact);
  }
  return m;
}

/// Norms h_0..h_{k−1} stored as h_j/(j!)², the ratio of consecutive leading
/// minors of the factorial-scaled Hankel matrix μ_{i+j}/(i!j!).
struct NormTable {
  WeightMode mode = WeightMode::critical;
  bool exact = false;
  unsigned bits = 0;
  std::vector<Rational> ratio_exact;
  std::vector<BigFloat> ratio;
  // Critical exact mode: integer minors det M_k for k = 0..kmax (see CriticalIntegers).
  std::vector<BigInt> integer_minors;
  BigInt p;

  int size() const { return static_cast<int>(exact ? ratio_exact.size() : ratio.size()); }

  Rational h_exact(int k) const {
    const BigInt f = detail::factorial(k);
    return ratio_exact.at(k) * Rational(f * f);
  }

  /// D_k = det(μ_{i+j})_{i,j<k}; D_0 = 1.
  Rational hankel_minor_exact(int k) const {
    Rational d(1);
    for (int j = 0; j < k; ++j) d *= h_exact(j);
    return d;
  }

  /// ln(h_j/(j!)²) at the given precision.
  BigFloat log_ratio(int k, unsigned at_bits) const {
    PrecisionGuard guard(at_bits);
    if (exact) return log(BigFloat(ratio_exact.at(k)));
    return log(BigFloat(ratio.at(k)));
  }
};

namespace detail {

// Fraction-free elimination without pivoting; the k-th pivot is the k×k leading minor.
inline std::vector<BigInt> bareiss_leading_minors(std::vector<std::vector<BigInt>> a) {
  const int n = static_cast<int>(a.size());
  std::vector<BigInt> minors{BigInt(1)};
  BigInt prev(1);
  for (int k = 0; k < n; ++k) {
    if (a[k][k] == 0) throw PrecisionExhausted("norms_from_moments", "zero leading minor in exact elimination");
    minors.push_back(a[k][k]);
    for (int i = k + 1; i < n; ++i) {
      for (int j = k + 1; j < n; ++j) {
        a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
      }
    }
    prev = a[k][k];
  }
  return minors;
}

// LDLᵀ pivots of the symmetric matrix S_ij = C(i+j,i)·s_{i+j}; returns the
// first non-positive pivot index through `bad`.
inline std::vector<BigFloat> scaled_hankel_pivots(const std::vector<BigFloat>& s, int kmax,
                                                  std::optional<int>& bad) {
  std::vector<std::vector<BigFloat>> a(kmax, std::vector<BigFloat>(kmax));
  for (int i = 0; i < kmax; ++i)
    for (int j = 0; j < kmax; ++j) a[i][j] = BigFloat(binomial(i + j, i)) * s[i + j];
  std::vector<BigFloat> piv;
  for (int k = 0; k < kmax; ++k) {
    if (!(a[k][k] > 0)) {
      bad = k;
      return piv;
    }
    piv.push_back(a[k][k]);
    for (int i = k + 1; i < kmax; ++i) {
      const BigFloat l = a[i][k] / a[k][k];
      for (int j = k + 1; j < kmax; ++j) a[i][j] -= l * a[k][j];
    }
  }
  return piv;
}

inline unsigned discrete_start_bits(int kmax, const PrecisionContext& ctx) {
  const double k = std::max(kmax, 2);
  return std::max({256u, static_cast<unsigned>(8 * k * std::log2(k)), ctx.bits});
}

}  // namespace detail

/// Exact Bareiss route for critical moments, BigFloat LDLᵀ with precision
/// doubling otherwise.
inline NormTable norms_from_moments(const MomentTable& m, int kmax, const PrecisionContext& ctx) {
  if (kmax < 1) throw DomainError("norms_from_moments: kmax must be positive");
  if (m.size() < 2 * kmax - 1) throw DomainError("norms_from_moments: need moments up to 2*kmax-2");
  NormTable t;
  t.mode = m.mode;
  if (m.exact && m.mode == WeightMode::critical) {
    const auto [p, q] = critical_integers(m.r);
    std::vector<BigInt> ppow{BigInt(1)}, qpow{BigInt(1)};
    for (int e = 1; e <= 2 * kmax; ++e) {
      ppow.push_back(ppow.back() * p);
      qpow.push_back(qpow.back() * q);
    }
    std::vector<std::vector<BigInt>> a(kmax, std::vector<BigInt>(kmax));
    for (int i = 0; i < kmax; ++i)
      for (int j = 0; j < kmax; ++j)
        a[i][j] = detail::binomial(i + j, i) * (ppow[i + j + 1] - qpow[i + j + 1]);
    t.exact = true;
    t.p = p;
    t.integer_minors = detail::bareiss_leading_minors(std::move(a));
    for (int k = 0; k < kmax; ++k) {
      if (t.integer_minors[k + 1] <= 0)
        throw PrecisionExhausted("norms_from_moments", "non-positive exact Hankel minor");
      BigInt pk(1);
      for (int e = 0; e < 2 * k + 1; ++e) pk *= p;
      t.ratio_exact.push_back(Rational(t.integer_minors[k + 1], t.integer_minors[k] * pk));
    }
    return t;
  }

  auto regenerate = [&](unsigned bits) {
    if (m.mode == WeightMode::critical) {
      PrecisionContext c = ctx;
      c.bits = bits;
      return moments_critical(2 * kmax - 2, m.r, c, false);
    }
    return moments_discrete(2 * kmax - 2, m.ferro, bits);
  };
  unsigned bits = m.mode == WeightMode::discrete ? detail::discrete_start_bits(kmax, ctx) : ctx.bits;
  std::optional<std::vector<BigFloat>> previous;
  unsigned previous_bits = 0;
  std::string prev_est, last_est;
  for (int attempt = 0; attempt < 6; ++attempt, bits *= 2) {
    PrecisionGuard guard(bits);
    const MomentTable mt = regenerate(bits);
    std::optional<int> bad;
    auto piv = detail::scaled_hankel_pivots(mt.scaled, kmax, bad);
    if (bad) {
      previous.reset();
      continue;
    }
    prev_est = last_est;
    last_est = to_decimal(piv.back());
    if (previous) {
      bool agree = true;
      for (int k = 0; k < kmax && agree; ++k) {
        const BigFloat rel = abs((piv[k] - (*previous)[k]) / piv[k]);
        agree = rel.convert_to<double>() <= ctx.quad_tol;
      }
      if (agree) {
        t.exact = false;
        t.bits = previous_bits;
        PrecisionGuard keep(previous_bits);
        for (auto& v : *previous) t.ratio.push_back(BigFloat(v));
        return t;
      }
    }
    previous = std::move(piv);
    previous_bits = bits;
  }
  throw PrecisionExhausted("norms_from_moments", "Hankel pivots did not stabilize under precision doubling",
                           prev_est, last_est);
}

/// Norms of the discrete ferroelectric weight.
inline NormTable norms_discrete(int kmax, const FerroParam<Rational>& p, const PrecisionContext& ctx) {
  p.validate();
  const MomentTable m = moments_discrete(2 * kmax - 2, p, 64);
  return norms_from_moments(m, kmax, ctx);
}

enum class ZnRoute { brute, ik_discrete, critical_op };

inline std::string to_string(ZnRoute r) {
  switch (r) {
    case ZnRoute::brute: return "brute";
    case ZnRoute::ik_discrete: return "ik-discrete";
    case ZnRoute::critical_op: return "critical-op";
  }
  return "unknown";
}

struct ZnValue {
  int n = 0;
  ZnRoute route = ZnRoute::brute;
  std::optional<Rational> exact;
  BigFloat value;
  unsigned bits = 0;
};

/// Z_n at a/c = (α−1)/2, b/c = (α+1)/2, c = 1: ((α+1)/2)^{n²}·∏_{k<n} h_k/(k!)².
inline ZnValue zn_critical(int n, const Rational& alpha, const PrecisionContext& ctx,
                           const NormTable* cached = nullptr) {
  if (!(alpha > 1)) throw DomainError("zn_critical: alpha must exceed 1");
  if (n < 1) throw DomainError("zn_critical: n must be positive");
  const Rational r = (alpha + 1) / (alpha - 1);
  NormTable local;
  if (!cached || !cached->exact || cached->size() < n) {
    local = norms_from_moments(moments_critical(2 * n - 2, r, ctx), n, ctx);
    cached = &local;
  }
  // ∏ h_k/(k!)² = det M_n / p^{n²}
  BigInt pn(1);
  for (int e = 0; e < n * n; ++e) pn *= cached->p;
  const Rational F = (alpha + 1) / 2;
  Rational Fn(1);
  for (int e = 0; e < n * n; ++e) Fn *= F;
  ZnValue z;
  z.n = n;
  z.route = ZnRoute::critical_op;
  z.exact = Fn * Rational(cached->integer_minors[n], pn);
  z.bits = ctx.bits;
  PrecisionGuard guard(ctx.bits);
  z.value = BigFloat(*z.exact);
  return z;
}

/// d^mφ/dt^m for φ(t) = sinh(2γ)/(sinh(t+γ)sinh(t−γ)) = 4Σ_{l≥1} e^{−2tl} sinh(2γl),
/// summed term by term.
template <class Real>
Real phi_derivative(int m, const Real& t, const Real& gamma, const PrecisionContext& ctx) {
  using std::exp;
  using std::sinh;
  if (!(gamma > 0 && gamma < t)) throw DomainError("phi_derivative: series diverges unless 0 < gamma < t");
  Real sum = 0;
  bool decreasing = false;
  Real prev_mag = 0;
  for (long l = 1; l < 10000000; ++l) {
    Real term = 4 * exp(-2 * t * l) * sinh(2 * gamma * l);
    for (int i = 0; i < m; ++i) term *= Real(-2 * l);
    sum += term;
    using std::abs;
    const Real mag = abs(term);
    decreasing = decreasing || (l > 1 && mag < prev_mag);
    prev_mag = mag;
    if (decreasing && mag <= std::min(Real(ctx.quad_tol), machine_epsilon<Real>()) * abs(sum)) break;
  }
  return sum;
}

/// τ_n = det(φ^{(i+j)})_{i,j<n}, by elimination on the derivative matrix.
inline BigFloat tau_hankel(int n, const FerroParam<Rational>& p, const PrecisionContext& ctx) {
  PrecisionGuard guard(ctx.bits);
  const BigFloat t(p.t), g(p.gamma);
  std::vector<BigFloat> d;
  for (int m = 0; m <= 2 * n - 2; ++m) d.push_back(phi_derivative(m, t, g, ctx));
  std::vector<std::vector<BigFloat>> a(n, std::vector<BigFloat>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a[i][j] = d[i + j];
  BigFloat det = 1;
  for (int k = 0; k < n; ++k) {
    det *= a[k][k];
    for (int i = k + 1; i < n; ++i) {
      const BigFloat l = a[i][k] / a[k][k];
      for (int j = k + 1; j < n; ++j) a[i][j] -= l * a[k][j];
    }
  }
  return det;
}

/// Reduced Z_n (c = 1) in the ferroelectric phase:
/// [2 sinh(t−γ)sinh(t+γ)/sinh(2γ)]^{n²}·∏_{k<n} h_k/(k!)².
inline ZnValue zn_ferro(int n, const FerroParam<Rational>& p, const PrecisionContext& ctx,
                        const NormTable* cached = nullptr) {
  p.validate();
  if (n < 1) throw DomainError("zn_ferro: n must be positive");
  NormTable local;
  if (!cached || cached->size() < n) {
    local = norms_discrete(n, p, ctx);
    cached = &local;
  }
  const unsigned bits = std::max(cached->bits, ctx.bits);
  PrecisionGuard guard(bits);
  const BigFloat t(p.t), g(p.gamma);
  const BigFloat pref = 2 * sinh(t - g) * sinh(t + g) / sinh(2 * g);
  BigFloat logz = BigFloat(n) * n * log(pref);
  for (int k = 0; k < n; ++k) logz += log(BigFloat(cached->ratio[k]));
  ZnValue z;
  z.n = n;
  z.route = ZnRoute::ik_discrete;
  z.value = exp(logz);
  z.bits = bits;
  return z;
}

/// |spacing^{2k+1}·h_k(t_m, γ_m) − h_{k,α}| along a sequence approaching the critical line.
inline std::vector<double> scaling_limit_check(int k, const Rational& alpha,
                                               const std::vector<FerroParam<Rational>>& seq,
                                               const PrecisionContext& ctx) {
  const Rational r = (alpha + 1) / (alpha - 1);
  const NormTable crit = norms_from_moments(moments_critical(2 * k, r, ctx), k + 1, ctx);
  const Rational h_alpha = crit.h_exact(k);
  std::vector<double> out;
  for (const auto& p : seq) {
    const NormTable disc = norms_discrete(k + 1, p, ctx);
    PrecisionGuard guard(std::max(disc.bits, ctx.bits));
    const BigFloat spacing = BigFloat(Rational(2 * p.t - 2 * p.gamma));
    BigFloat kf = 1;
    for (int i = 2; i <= k; ++i) kf *= i;
    const BigFloat hk = disc.ratio[k] * kf * kf;
    out.push_back(BigFloat(abs(pow(spacing, 2 * k + 1) * hk - BigFloat(h_alpha))).convert_to<double>());
  }
  return out;
}

}  // namespace sixvertex
