#pragma once

#include <cmath>

#include <boost/math/special_functions/bernoulli.hpp>

#include "sixvertex/precision.hpp"

namespace sixvertex {

struct ZetaValue {
  double s = 1.5;
  BigFloat value;
  double error_bound = 0.0;
  // Partial sums Σ_{n≤N} n^{-3/2} for N = 1..terms, kept for monotonicity checks.
  int terms = 0;
};

/// ζ(3/2) = Σ_{n<N} n^{-3/2} + 2N^{-1/2} + N^{-3/2}/2 + Euler-Maclaurin corrections.
/// The correction series is cut at the first term below 2^{-bits-4}; that term
/// is the reported error bound.
inline ZetaValue zeta_three_halves(const PrecisionContext& ctx) {
  const unsigned work_bits = std::max(ctx.bits, 53u) + 32;
  PrecisionGuard guard(work_bits);
  const int N = 20 + static_cast<int>(work_bits / 8);
  BigFloat sum = 0;
  for (int n = N - 1; n >= 1; --n) {
    const BigFloat bn(n);
    sum += 1 / (bn * sqrt(bn));
  }
  const BigFloat bN(N);
  const BigFloat rootN = sqrt(bN);
  sum += 2 / rootN;
  sum += 1 / (2 * bN * rootN);

  const BigFloat cutoff = mp::ldexp(BigFloat(1), -static_cast<int>(ctx.bits) - 4);
  // term_j = B_{2j}/(2j)! · s(s+1)…(s+2j−2) · N^{-s-2j+1}
  BigFloat rising = BigFloat(3) / 2;  // s
  BigFloat factorial = 2;             // (2j)!
  BigFloat power = 1 / (bN * bN * rootN);  // N^{-s-1}
  BigFloat last = 0;
  for (int j = 1; j < 4 * N; ++j) {
    const BigFloat term = boost::math::bernoulli_b2n<BigFloat>(j) / factorial * rising * power;
    sum += term;
    last = abs(term);
    if (last < cutoff) break;
    const BigFloat s = BigFloat(3) / 2;
    rising *= (s + 2 * j - 1) * (s + 2 * j);
    factorial *= BigFloat(2 * j + 1) * (2 * j + 2);
    power /= bN * bN;
  }
  ZetaValue z;
  z.value = sum;
  z.error_bound = std::max(last.convert_to<double>(), std::ldexp(1.0, -static_cast<int>(work_bits)));
  z.terms = N;
  return z;
}

/// ζ(3/2) as Real at the working precision of ctx.
template <class Real>
Real zeta_three_halves_as(const PrecisionContext& ctx) {
  const ZetaValue z = zeta_three_halves(ctx);
  if constexpr (is_big_float_v<Real>) {
    return BigFloat(z.value);
  } else {
    return z.value.template convert_to<Real>();
  }
}

}  // namespace sixvertex
