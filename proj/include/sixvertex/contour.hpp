#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "sixvertex/quadrature.hpp"

namespace sixvertex {

/// One smooth piece of a closed curve, parametrized by t in [0, 1].
template <class Real>
struct ContourArc {
  using Complex = std::complex<Real>;
  std::function<Complex(const Real&)> point;
  std::function<Complex(const Real&)> derivative;
};

/// Positively oriented closed curve made of smooth arcs. A single periodic arc
/// (a circle, say) is integrated with the trapezoid rule, which converges
/// spectrally there; curves with corners go arc by arc through adaptive Gauss.
template <class Real>
struct Contour {
  std::vector<ContourArc<Real>> arcs;
  bool periodic = false;
};

template <class Real>
Contour<Real> circle_contour(std::complex<Real> center, Real radius) {
  using Complex = std::complex<Real>;
  Contour<Real> c;
  c.periodic = true;
  const Real two_pi = 2 * pi_v<Real>();
  c.arcs.push_back({[=](const Real& t) {
                      return center + radius * cexp(Complex(Real(0), two_pi * t));
                    },
                    [=](const Real& t) {
                      return Complex(Real(0), two_pi * radius) * cexp(Complex(Real(0), two_pi * t));
                    }});
  return c;
}

/// Stadium around [0, 1]: half-circle of radius `r0` on the left of 0, straight
/// sides from 0 ± i·r0 to 1 ± i·r1, half-circle right of 1. With r0 = δ/k and
/// r1 = δ(1 + 1/k) this is the curve |z − m(z)| = δ(1/k + m(z)), m(z) the
/// nearest point of [0, 1]. A right radius `rr` > r1 widens only the cap,
/// joined to the sides by vertical segments on Re z = 1.
template <class Real>
Contour<Real> stadium_contour(Real r0, Real r1, Real rr = Real(0)) {
  using Complex = std::complex<Real>;
  const Real pi = pi_v<Real>();
  if (rr < r1) rr = r1;
  const bool step = rr > r1;
  Contour<Real> c;
  // bottom side, 0 - i r0 -> 1 - i r1
  c.arcs.push_back({[=](const Real& t) { return Complex(t, -(r0 + (r1 - r0) * t)); },
                    [=](const Real&) { return Complex(Real(1), -(r1 - r0)); }});
  if (step) {
    c.arcs.push_back({[=](const Real& t) { return Complex(Real(1), -(r1 + (rr - r1) * t)); },
                      [=](const Real&) { return Complex(Real(0), -(rr - r1)); }});
  }
  // right cap, angle -π/2 -> π/2
  c.arcs.push_back({[=](const Real& t) {
                      return Complex(Real(1), Real(0)) + rr * cexp(Complex(Real(0), pi * (t - Real(0.5))));
                    },
                    [=](const Real& t) {
                      return Complex(Real(0), pi * rr) * cexp(Complex(Real(0), pi * (t - Real(0.5))));
                    }});
  if (step) {
    c.arcs.push_back({[=](const Real& t) { return Complex(Real(1), rr - (rr - r1) * t); },
                      [=](const Real&) { return Complex(Real(0), -(rr - r1)); }});
  }
  // top side, 1 + i r1 -> 0 + i r0
  c.arcs.push_back({[=](const Real& t) { return Complex(1 - t, r1 - (r1 - r0) * t); },
                    [=](const Real&) { return Complex(Real(-1), -(r1 - r0)); }});
  // left cap, angle π/2 -> 3π/2
  c.arcs.push_back({[=](const Real& t) {
                      return r0 * cexp(Complex(Real(0), pi * (t + Real(0.5))));
                    },
                    [=](const Real& t) {
                      return Complex(Real(0), pi * r0) * cexp(Complex(Real(0), pi * (t + Real(0.5))));
                    }});
  return c;
}

/// Winding number of the contour around z, from a dense polygonal sampling.
template <class Real>
int winding_number(const Contour<Real>& contour, std::complex<Real> z, int samples_per_arc = 512) {
  double total = 0.0;
  for (const auto& arc : contour.arcs) {
    std::complex<double> prev;
    for (int i = 0; i <= samples_per_arc; ++i) {
      const auto p = arc.point(Real(i) / samples_per_arc) - z;
      const std::complex<double> pd(to_double(p.real()), to_double(p.imag()));
      if (i > 0) total += std::arg(pd / prev);
      prev = pd;
    }
  }
  return static_cast<int>(std::lround(total / (2.0 * M_PI)));
}

/// Smallest distance from z to the sampled contour.
template <class Real>
double distance_to_contour(const Contour<Real>& contour, std::complex<Real> z,
                           int samples_per_arc = 2048) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& arc : contour.arcs) {
    for (int i = 0; i <= samples_per_arc; ++i) {
      const auto p = arc.point(Real(i) / samples_per_arc) - z;
      best = std::min(best, std::hypot(to_double(p.real()), to_double(p.imag())));
    }
  }
  return best;
}

/// Throws InvalidContour unless each point lies outside the contour and at
/// least `min_distance` away from it.
template <class Real>
void check_clearance(const Contour<Real>& contour, const std::vector<std::complex<Real>>& points,
                     double min_distance) {
  for (const auto& p : points) {
    const double d = distance_to_contour(contour, p);
    if (winding_number(contour, p) != 0 || d < min_distance) {
      throw InvalidContour("contour_integral",
                           "singularity at (" + to_decimal(p.real()) + ", " + to_decimal(p.imag()) +
                               ") is enclosed or closer than " + std::to_string(min_distance));
    }
  }
}

/// ∮ f(y) dy over the contour.
template <class Real, class F>
QuadResult<std::complex<Real>> contour_integral(F&& f, const Contour<Real>& contour,
                                                const PrecisionContext& ctx) {
  using Complex = std::complex<Real>;
  if (contour.periodic && contour.arcs.size() == 1) {
    const auto& arc = contour.arcs.front();
    auto trapezoid = [&](int n, Real& l1) {
      Complex sum(Real(0), Real(0));
      l1 = 0;
      for (int i = 0; i < n; ++i) {
        const Real t = Real(i) / n;
        const Complex v = f(arc.point(t)) * arc.derivative(t);
        sum += v;
        l1 += cabs(v);
      }
      l1 /= n;
      return Complex(sum / Real(n));
    };
    Real l1 = 0;
    Complex prev = trapezoid(16, l1);
    const double eps = to_double(machine_epsilon<Real>());
    for (int n = 32, level = 1; level <= ctx.max_refine && n <= (1 << 22); n *= 2, ++level) {
      const Complex cur = trapezoid(n, l1);
      const double diff = to_double(cabs(Complex(cur - prev)));
      if (diff <= std::max(ctx.quad_tol, 50.0 * eps) * to_double(l1)) {
        return {cur, diff, n};
      }
      prev = cur;
    }
    throw RefinementFailure("contour_integral", "trapezoid rule did not converge");
  }
  QuadResult<Complex> total{Complex(Real(0), Real(0)), 0.0, 0};
  for (const auto& arc : contour.arcs) {
    auto g = [&](const Real& t) { return Complex(f(arc.point(t)) * arc.derivative(t)); };
    auto part = integrate_adaptive(g, Real(0), Real(1), ctx, "contour_integral");
    total.value += part.value;
    total.error += part.error;
    total.panels += part.panels;
  }
  return total;
}

}  // namespace sixvertex
