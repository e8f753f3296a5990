#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <limits>
#include <sstream>
#include <string>
#include <type_traits>

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include "sixvertex/errors.hpp"

namespace sixvertex {

namespace mp = boost::multiprecision;

/// Runtime-precision binary float (MPFR). Expression templates are disabled so
/// the type behaves like a plain value inside generic numeric code.
using BigFloat = mp::number<mp::mpfr_float_backend<0>, mp::et_off>;
using BigInt = mp::mpz_int;
using Rational = mp::mpq_rational;

template <class T>
inline constexpr bool is_big_float_v = std::is_same_v<std::remove_cvref_t<T>, BigFloat>;

/// Working precision and quadrature controls shared by every numeric routine.
struct PrecisionContext {
  unsigned bits = 128;
  double quad_tol = 1e-12;
  int max_refine = 60;

  void validate() const {
    if (bits < 53) throw DomainError("PrecisionContext: bits must be >= 53");
    if (!(quad_tol > 0.0 && quad_tol < 1.0))
      throw DomainError("PrecisionContext: quad_tol must lie in (0,1)");
    if (max_refine < 1) throw DomainError("PrecisionContext: max_refine must be positive");
  }

  PrecisionContext doubled() const {
    PrecisionContext c = *this;
    c.bits *= 2;
    return c;
  }

  // Default context, with SIXVERTEX_BITS overriding the precision.
  static PrecisionContext from_environment() {
    PrecisionContext c;
    if (const char* env = std::getenv("SIXVERTEX_BITS")) {
      char* end = nullptr;
      const unsigned long v = std::strtoul(env, &end, 10);
      if (end != env && *end == '\0' && v >= 53) c.bits = static_cast<unsigned>(v);
    }
    return c;
  }
};

inline unsigned bits_to_digits10(unsigned bits) {
  return static_cast<unsigned>(std::ceil(bits * 0.30102999566398120)) + 1;
}

/// Sets the default MPFR precision for newly created BigFloat values and
/// restores the previous one on scope exit. The default is process-global, so
/// BigFloat work at different precisions must not run concurrently.
class PrecisionGuard {
 public:
  explicit PrecisionGuard(unsigned bits) : saved_(BigFloat::default_precision()) {
    BigFloat::default_precision(bits_to_digits10(bits));
  }
  PrecisionGuard(const PrecisionGuard&) = delete;
  PrecisionGuard& operator=(const PrecisionGuard&) = delete;
  ~PrecisionGuard() { BigFloat::default_precision(saved_); }

 private:
  unsigned saved_;
};

template <class Real>
Real pi_v() {
  return boost::math::constants::pi<Real>();
}

template <class Real>
Real ln2_v() {
  return boost::math::constants::ln_two<Real>();
}

/// Unit roundoff of Real at the current precision.
template <class Real>
Real machine_epsilon() {
  if constexpr (is_big_float_v<Real>) {
    return mp::ldexp(BigFloat(1), 1 - static_cast<int>(mp::detail::digits10_2_2(
                                          BigFloat::default_precision())));
  } else {
    return std::numeric_limits<Real>::epsilon();
  }
}

template <class Real>
double to_double(const Real& x) {
  if constexpr (std::is_arithmetic_v<Real>) {
    return static_cast<double>(x);
  } else {
    return x.template convert_to<double>();
  }
}

template <class Real>
Real from_rational(const Rational& q) {
  if constexpr (std::is_arithmetic_v<Real>) {
    return q.template convert_to<Real>();
  } else {
    return Real(q);
  }
}

/// Decimal rendering with enough digits to round-trip at the current precision.
template <class Real>
std::string to_decimal(const Real& x) {
  std::ostringstream os;
  if constexpr (std::is_arithmetic_v<Real>) {
    os.precision(std::numeric_limits<Real>::max_digits10);
  } else {
    os.precision(BigFloat::default_precision() + 1);
  }
  os << x;
  return os.str();
}

inline std::string to_decimal(const Rational& q, unsigned bits) {
  PrecisionGuard guard(bits);
  return to_decimal(BigFloat(q));
}

// Principal-branch complex helpers that only rely on real elementary
// functions, so they work for double and BigFloat alike.
template <class Real>
std::complex<Real> csqrt(const std::complex<Real>& z) {
  using std::abs;
  using std::sqrt;
  const Real x = z.real();
  const Real y = z.imag();
  const Real m = sqrt(x * x + y * y);
  if (m == 0) return {Real(0), Real(0)};
  if (x >= 0) {
    const Real re = sqrt((m + x) / 2);
    return {re, y / (2 * re)};
  }
  Real im = sqrt((m - x) / 2);
  if (y < 0) im = -im;
  return {y / (2 * im), im};
}

template <class Real>
std::complex<Real> cexp(const std::complex<Real>& z) {
  using std::cos;
  using std::exp;
  using std::sin;
  const Real e = exp(z.real());
  return {e * cos(z.imag()), e * sin(z.imag())};
}

template <class Real>
Real cabs(const std::complex<Real>& z) {
  using std::sqrt;
  return sqrt(z.real() * z.real() + z.imag() * z.imag());
}

// 1/(e^z - 1), evaluated without overflow for large Re z.
template <class Real>
std::complex<Real> inv_expm1(const std::complex<Real>& z) {
  using std::expm1;
  if (z.real() > Real(1)) {
    const std::complex<Real> e = cexp(std::complex<Real>(-z.real(), -z.imag()));
    return e / (std::complex<Real>(Real(1), Real(0)) - e);
  }
  if (z.imag() == 0) return {Real(1) / expm1(z.real()), Real(0)};
  using std::cos;
  using std::exp;
  using std::sin;
  // e^{x+iy} - 1 = expm1(x) cos y - 2 sin^2(y/2) + i e^x sin y
  const Real s = sin(z.imag() / 2);
  const std::complex<Real> em1(expm1(z.real()) * cos(z.imag()) - 2 * s * s,
                               exp(z.real()) * sin(z.imag()));
  return std::complex<Real>(Real(1), Real(0)) / em1;
}

template <class Real>
Real inv_expm1(const Real& x) {
  using std::exp;
  using std::expm1;
  if (x > Real(1)) {
    const Real e = exp(-x);
    return e / (1 - e);
  }
  return Real(1) / expm1(x);
}

}  // namespace sixvertex
