#pragma once

#include <cmath>
#include <string>
#include <type_traits>

#include "sixvertex/precision.hpp"
#include "sixvertex/zeta.hpp"

namespace sixvertex {

/// Weights of the three vertex classes: a for types 1,2, b for 3,4, c for 5,6.
template <class W>
struct VertexWeights {
  W a;
  W b;
  W c;

  void validate() const {
    if (!(a > 0 && b > 0 && c > 0)) throw DomainError("VertexWeights: a, b, c must be positive");
  }

  VertexWeights scaled(const W& s) const { return {a * s, b * s, c * s}; }
  VertexWeights reduced() const { return {a / c, b / c, W(1)}; }
};

enum class Phase {
  ferroelectric,
  anti_ferroelectric,
  disordered,
  critical_fd,
  critical_afd,
  free_fermion,
};

inline std::string to_string(Phase p) {
  switch (p) {
    case Phase::ferroelectric: return "ferroelectric";
    case Phase::anti_ferroelectric: return "anti-ferroelectric";
    case Phase::disordered: return "disordered";
    case Phase::critical_fd: return "critical-FD";
    case Phase::critical_afd: return "critical-AFD";
    case Phase::free_fermion: return "free-fermion";
  }
  return "unknown";
}

template <class W>
struct PhasePoint {
  W x;
  W y;
  W delta;
  Phase phase;
};

template <class W>
W delta_of(const VertexWeights<W>& w) {
  w.validate();
  return (w.a * w.a + w.b * w.b - w.c * w.c) / (2 * w.a * w.b);
}

namespace detail {

// Tolerance for snapping Δ onto 0 or ±1: exact types snap only on equality.
template <class W>
W phase_tolerance() {
  if constexpr (std::is_same_v<W, Rational>) {
    return W(0);
  } else {
    return 64 * machine_epsilon<W>();
  }
}

}  // namespace detail

template <class W>
Phase phase_of_delta(const W& delta) {
  using std::abs;
  const W tol = detail::phase_tolerance<W>();
  if (abs(W(delta - 1)) <= tol) return Phase::critical_fd;
  if (abs(W(delta + 1)) <= tol) return Phase::critical_afd;
  if (abs(delta) <= tol) return Phase::free_fermion;
  if (delta > 1) return Phase::ferroelectric;
  if (delta < -1) return Phase::anti_ferroelectric;
  return Phase::disordered;
}

template <class W>
PhasePoint<W> classify(const VertexWeights<W>& w) {
  const W delta = delta_of(w);
  return {w.a / w.c, w.b / w.c, delta, phase_of_delta(delta)};
}

/// Ferroelectric parameters on the component γ > 0.
template <class Real>
struct FerroParam {
  Real t;
  Real gamma;

  void validate() const {
    if (!(gamma > 0 && gamma < t)) throw DomainError("FerroParam: need 0 < gamma < t");
  }
};

/// a = sinh(t−γ), b = sinh(t+γ), c = sinh(2γ).
template <class Real>
VertexWeights<Real> ferro_weights(const FerroParam<Real>& p) {
  using std::sinh;
  p.validate();
  return {sinh(p.t - p.gamma), sinh(p.t + p.gamma), sinh(2 * p.gamma)};
}

template <class Real>
PhasePoint<Real> ferro_reduced(const FerroParam<Real>& p) {
  using std::cosh;
  const auto w = ferro_weights(p);
  PhasePoint<Real> pt{w.a / w.c, w.b / w.c, cosh(2 * p.gamma), Phase::ferroelectric};
  return pt;
}

/// Disordered parameters, |t| < γ: a = sin(γ−t), b = sin(γ+t), c = sin(2γ).
template <class Real>
struct DisorderedParam {
  Real t;
  Real gamma;

  void validate() const {
    using std::abs;
    if (!(abs(t) < gamma && gamma < pi_v<Real>() / 2))
      throw DomainError("DisorderedParam: need |t| < gamma < pi/2");
  }
};

template <class Real>
VertexWeights<Real> disordered_weights(const DisorderedParam<Real>& p) {
  using std::sin;
  p.validate();
  return {sin(p.gamma - p.t), sin(p.gamma + p.t), sin(2 * p.gamma)};
}

/// A point a/c = (α−1)/2, b/c = (α+1)/2 on the ferroelectric/disordered line.
/// F = (α+1)/2 and lnG = −ζ(3/2)·√((α−1)/(2π)) are the leading asymptotic data.
struct CriticalPoint {
  Rational alpha;
  Rational r;
  Rational F;
  double lnG = 0.0;

  VertexWeights<Rational> weights() const { return {(alpha - 1) / 2, (alpha + 1) / 2, Rational(1)}; }
};

inline CriticalPoint critical_from_alpha(const Rational& alpha, const PrecisionContext& ctx) {
  if (!(alpha > 1)) throw DomainError("critical_from_alpha: alpha must exceed 1");
  CriticalPoint cp;
  cp.alpha = alpha;
  cp.r = (alpha + 1) / (alpha - 1);
  cp.F = (alpha + 1) / 2;
  PrecisionGuard guard(ctx.bits);
  const BigFloat zeta = zeta_three_halves_as<BigFloat>(ctx);
  const BigFloat am1 = BigFloat(Rational(alpha - 1));
  cp.lnG = BigFloat(-zeta * sqrt(am1 / (2 * pi_v<BigFloat>()))).convert_to<double>();
  return cp;
}

/// Spacing 2t − 2γ of the rescaled lattice l ↦ (2t − 2γ)l.
template <class Real>
struct LatticeSpacing {
  Real spacing;
};

template <class Real>
LatticeSpacing<Real> lattice_spacing(const FerroParam<Real>& p) {
  p.validate();
  return {2 * p.t - 2 * p.gamma};
}

}  // namespace sixvertex
