#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <map>
#include <mutex>
#include <optional>
#include <type_traits>
#include <utility>
#include <vector>

#include <boost/math/special_functions/fpclassify.hpp>

#include "sixvertex/precision.hpp"

namespace sixvertex {

/// Gauss-Legendre nodes and weights on [-1, 1].
template <class Real>
struct GaussRule {
  std::vector<Real> nodes;
  std::vector<Real> weights;
};

namespace detail {

template <class Real>
GaussRule<Real> compute_gauss_legendre(int n) {
  using std::abs;
  using std::cos;
  GaussRule<Real> rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const Real eps = machine_epsilon<Real>();
  const Real pi = pi_v<Real>();
  for (int i = 0; i < (n + 1) / 2; ++i) {
    Real x = cos(pi * (Real(i) + Real(0.75)) / (Real(n) + Real(0.5)));
    Real dp = 0;
    for (int iter = 0; iter < 100; ++iter) {
      Real p0 = 1;
      Real p1 = x;
      for (int j = 2; j <= n; ++j) {
        Real p2 = ((2 * j - 1) * x * p1 - (j - 1) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1);
      const Real dx = p1 / dp;
      x -= dx;
      if (abs(dx) <= 4 * eps) break;
    }
    const Real w = 2 / ((1 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.weights[i] = w;
    rule.nodes[n - 1 - i] = x;
    rule.weights[n - 1 - i] = w;
  }
  return rule;
}

template <class T>
struct is_complex : std::false_type {};
template <class T>
struct is_complex<std::complex<T>> : std::true_type {};

template <class V>
auto magnitude(const V& v) {
  if constexpr (is_complex<V>::value) {
    return cabs(v);
  } else {
    using std::abs;
    return abs(v);
  }
}

// Calls f(x, x - lo, hi - x) when the integrand wants endpoint distances
// (useful when 1 - x must not be formed by cancellation), f(x) otherwise.
template <class F, class Real>
decltype(auto) call_with_distances(F& f, const Real& x, const Real& dlo, const Real& dhi) {
  if constexpr (std::is_invocable_v<F&, const Real&, const Real&, const Real&>) {
    return f(x, dlo, dhi);
  } else {
    return f(x);
  }
}

}  // namespace detail

/// Cached rule for the current precision of Real.
template <class Real>
const GaussRule<Real>& gauss_legendre(int n) {
  static std::mutex mutex;
  static std::map<std::pair<int, unsigned>, GaussRule<Real>> cache;
  unsigned prec = 0;
  if constexpr (is_big_float_v<Real>) prec = BigFloat::default_precision();
  std::lock_guard lock(mutex);
  auto key = std::make_pair(n, prec);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, detail::compute_gauss_legendre<Real>(n)).first;
  return it->second;
}

/// Panel order used by the adaptive integrator for a given tolerance.
inline int gauss_order(const PrecisionContext& ctx) {
  const double digits = -std::log10(ctx.quad_tol);
  return std::clamp(static_cast<int>(6 + 0.7 * digits), 10, 64);
}

template <class Value>
struct QuadResult {
  Value value;
  double error = 0.0;
  int panels = 0;
};

/// Globally adaptive composite Gauss-Legendre on [lo, hi]. The panel with the
/// largest error estimate (coarse rule against its two halves) is bisected
/// until the summed estimate drops below quad_tol times the L1 mass of f, or
/// below abs_tol when that is larger.
template <class Real, class F>
auto integrate_adaptive(F&& f, const Real& lo, const Real& hi, const PrecisionContext& ctx,
                        const char* stage = "integrate_adaptive", double abs_tol = 0.0)
    -> QuadResult<std::remove_cvref_t<std::invoke_result_t<F&, const Real&>>> {
  using Value = std::remove_cvref_t<std::invoke_result_t<F&, const Real&>>;
  const GaussRule<Real>& rule = gauss_legendre<Real>(gauss_order(ctx));

  auto gauss = [&](const Real& a, const Real& b) {
    const Real half = (b - a) / 2;
    const Real mid = (a + b) / 2;
    Value sum = Value(Real(0));
    Real l1 = 0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      const Value fx = f(mid + half * rule.nodes[i]);
      sum += fx * rule.weights[i];
      l1 += detail::magnitude(fx) * rule.weights[i];
    }
    using std::abs;
    return std::make_pair(Value(sum * half), Real(l1 * abs(half)));
  };

  struct Panel {
    Real a, b;
    Value left, right;
    Real l1;
    double err;
    int depth;
  };
  auto make_panel = [&](const Real& a, const Real& b, const Value& whole, int depth) {
    const Real m = (a + b) / 2;
    auto [left, l1l] = gauss(a, m);
    auto [right, l1r] = gauss(m, b);
    const double err = to_double(detail::magnitude(Value(whole - left - right)));
    return Panel{a, b, left, right, Real(l1l + l1r), err, depth};
  };
  auto by_error = [](const Panel& x, const Panel& y) { return x.err < y.err; };

  std::vector<Panel> heap;
  heap.push_back(make_panel(lo, hi, gauss(lo, hi).first, 0));

  const double eps = to_double(machine_epsilon<Real>());
  Value previous = heap.front().left + heap.front().right;
  for (;;) {
    Value total = Value(Real(0));
    Real l1 = 0;
    double err = 0.0;
    for (const Panel& p : heap) {
      total += p.left + p.right;
      l1 += p.l1;
      err += p.err;
    }
    const double scale = to_double(l1);
    const double tol = std::max(std::max(ctx.quad_tol, 50.0 * eps) * scale, abs_tol);
    if (err <= tol || scale == 0.0) {
      return {total, err, static_cast<int>(heap.size())};
    }
    std::pop_heap(heap.begin(), heap.end(), by_error);
    Panel worst = heap.back();
    heap.pop_back();
    if (worst.depth >= ctx.max_refine || heap.size() > 200000) {
      throw RefinementFailure(stage, "adaptive quadrature did not converge",
                              to_decimal(detail::magnitude(previous)),
                              to_decimal(detail::magnitude(total)));
    }
    previous = total;
    const Real m = (worst.a + worst.b) / 2;
    heap.push_back(make_panel(worst.a, m, worst.left, worst.depth + 1));
    std::push_heap(heap.begin(), heap.end(), by_error);
    heap.push_back(make_panel(m, worst.b, worst.right, worst.depth + 1));
    std::push_heap(heap.begin(), heap.end(), by_error);
  }
}

/// End exponent marking a logarithmic endpoint singularity; it gets the
/// quartic grading.
inline constexpr double kLogEndpoint = -0.0625;

/// Exponential envelope |f(x)| <= A e^{-rate x} of an integrand on [lo, ∞).
struct TailEnvelope {
  double rate = 1.0;
};

namespace detail {

inline bool is_integer_exponent(double p) { return p == std::floor(p); }
inline bool is_half_integer_exponent(double p) {
  return !is_integer_exponent(p) && is_integer_exponent(2.0 * p);
}
inline int grading_power(double p) {
  if (p == kLogEndpoint) return 4;
  if (is_integer_exponent(p)) return 1;
  return is_half_integer_exponent(p) ? 2 : 4;
}

// ∫_lo^{lo+len} f with x = lo + len·s^m; `from_hi` mirrors it onto the upper end.
template <class Real, class F>
auto integrate_graded(F& f, const Real& lo, const Real& hi, const Real& a, const Real& len,
                      int m, bool from_hi, const PrecisionContext& ctx, const char* stage,
                      double abs_tol = 0.0) {
  auto g = [&](const Real& s) {
    using std::pow;
    const Real sm1 = m == 1 ? Real(1) : (m == 2 ? s : Real(pow(s, m - 1)));
    const Real d = len * sm1 * s;
    const Real jac = len * m * sm1;
    if (from_hi) {
      const Real x = a - d;
      return call_with_distances(f, x, Real((hi - lo) - d), d) * jac;
    }
    const Real x = a + d;
    return call_with_distances(f, x, d, Real((hi - lo) - d)) * jac;
  };
  return integrate_adaptive(g, Real(0), Real(1), ctx, stage, abs_tol);
}

}  // namespace detail

/// ∫_lo^hi f(x) dx for integrands behaving like (x-lo)^p_lo and (hi-x)^p_hi at
/// the ends. Non-integer exponents are removed by x = lo + u² (half-integers)
/// or a quartic grading; the rest is adaptive Gauss. For hi = +∞ the caller
/// supplies the exponential decay rate and the range is extended in doubling
/// chunks until the tail bound |f(X)|/rate is below quad_tol of the total.
///
/// f may take (x) or (x, x - lo, hi - x).
template <class Real, class F>
auto integrate_singular(F&& f, const Real& lo, const Real& hi, double p_lo, double p_hi,
                        const PrecisionContext& ctx, std::optional<TailEnvelope> tail = {},
                        const char* stage = "integrate_singular") {
  const bool infinite = (boost::math::isinf)(hi);
  const int m_lo = detail::grading_power(p_lo);
  if (!infinite) {
    const int m_hi = detail::grading_power(p_hi);
    if (m_lo == 1 && m_hi == 1) {
      auto g = [&](const Real& x) { return detail::call_with_distances(f, x, Real(x - lo), Real(hi - x)); };
      return integrate_adaptive(g, lo, hi, ctx, stage);
    }
    if (m_hi == 1) return detail::integrate_graded(f, lo, hi, lo, Real(hi - lo), m_lo, false, ctx, stage);
    if (m_lo == 1) return detail::integrate_graded(f, lo, hi, hi, Real(hi - lo), m_hi, true, ctx, stage);
    const Real half = (hi - lo) / 2;
    auto left = detail::integrate_graded(f, lo, hi, lo, half, m_lo, false, ctx, stage);
    const double floor = ctx.quad_tol * to_double(detail::magnitude(left.value));
    auto right = detail::integrate_graded(f, lo, hi, hi, half, m_hi, true, ctx, stage, floor);
    left.value += right.value;
    left.error += right.error;
    left.panels += right.panels;
    return left;
  }

  if (!tail || !(tail->rate > 0.0))
    throw DomainError(std::string(stage) + ": infinite range needs a positive decay rate");
  const Real inf_marker = hi;
  // On [lo, ∞) the upper distance is reported as +∞.
  auto fin = [&](const Real& x, const Real& dlo, const Real&) {
    return detail::call_with_distances(f, x, dlo, inf_marker);
  };
  Real width = Real(8.0 / tail->rate);
  auto result = detail::integrate_graded(fin, lo, Real(lo + width), lo, width, m_lo, false, ctx, stage);
  Real x = lo + width;
  for (int chunk = 0; chunk < 200; ++chunk) {
    const Real next = x + width;
    auto part = integrate_adaptive(
        [&](const Real& s) { return detail::call_with_distances(f, s, Real(s - lo), inf_marker); },
        x, next, ctx, stage, ctx.quad_tol * to_double(detail::magnitude(result.value)));
    result.value += part.value;
    result.error += part.error;
    result.panels += part.panels;
    x = next;
    width *= 2;
    const auto total = detail::magnitude(result.value);
    const auto chunk_mag = detail::magnitude(part.value);
    const auto edge = detail::magnitude(detail::call_with_distances(f, x, Real(x - lo), inf_marker));
    const double bound = to_double(edge) / tail->rate;
    const double target = ctx.quad_tol * std::max(to_double(total), 1e-300);
    if (to_double(chunk_mag) <= target && bound <= target) return result;
  }
  throw RefinementFailure(stage, "tail truncation did not converge");
}

}  // namespace sixvertex
