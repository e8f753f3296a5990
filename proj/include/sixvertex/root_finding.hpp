#pragma once

#include <cmath>

#include "sixvertex/precision.hpp"

namespace sixvertex {

/// Root of g in [lo, hi] by secant steps, falling back to bisection whenever
/// the secant point leaves the bracket or the bracket stops halving. Stops when
/// |g(x)| <= tol or the bracket is a few ulps wide.
template <class Real, class G>
Real find_root(G&& g, Real lo, Real hi, const Real& tol, const char* stage = "find_root") {
  using std::abs;
  Real glo = g(lo);
  Real ghi = g(hi);
  if (glo == 0) return lo;
  if (ghi == 0) return hi;
  if ((glo > 0) == (ghi > 0)) {
    throw BracketFailure(stage, "no sign change on the bracket", to_decimal(glo), to_decimal(ghi));
  }
  const Real eps = machine_epsilon<Real>();
  Real width = hi - lo;
  Real best = abs(glo) < abs(ghi) ? lo : hi;
  for (int iter = 0; iter < 400; ++iter) {
    Real x = hi - ghi * (hi - lo) / (ghi - glo);
    const bool outside = !(x > lo && x < hi);
    if (outside || (hi - lo) > width / 2) {
      x = (lo + hi) / 2;
    }
    width = hi - lo;
    const Real gx = g(x);
    best = x;
    if (abs(gx) <= tol || gx == 0) return x;
    if ((gx > 0) == (glo > 0)) {
      lo = x;
      glo = gx;
    } else {
      hi = x;
      ghi = gx;
    }
    if (hi - lo <= 4 * eps * (abs(lo) + abs(hi))) return abs(glo) < abs(ghi) ? lo : hi;
  }
  throw RefinementFailure(stage, "root iteration limit reached", to_decimal(lo), to_decimal(best));
}

}  // namespace sixvertex
