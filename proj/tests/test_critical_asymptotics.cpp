#include <gtest/gtest.h>

#include <cmath>

#include "sixvertex/critical_asymptotics.hpp"

using namespace sixvertex;

namespace {

const PrecisionContext kCtx{};

double zeta15() { return zeta_three_halves_as<double>(kCtx); }

// MRS endpoint from (1/2π)∫_0^β Q′(x)√(x/(β−x))dx = k with
// Q′(x) = 1 + 1/x − (r−1)/(e^{(r−1)x}−1). Under x = β sin²θ the integrand
// becomes smooth, so composite Simpson in θ suffices.
double mrs_beta_oracle(int k, double r) {
  auto lhs = [&](double beta) {
    const int n = 20000;
    const double h = (M_PI / 2) / n;
    double sum = 0;
    for (int i = 0; i <= n; ++i) {
      const double th = i * h;
      const double s2 = std::sin(th) * std::sin(th);
      const double x = beta * s2;
      // Q′(x)·2β sin²θ, with the 1/x pieces cancelled by hand
      const double val = i == 0 ? 0.0 : 2 * beta * s2 + 2 - 2 * (r - 1) * x / std::expm1((r - 1) * x);
      const double w = (i == 0 || i == n) ? 1 : (i % 2 ? 4 : 2);
      sum += w * val;
    }
    return sum * h / 3 / (2 * M_PI) - k;
  };
  double lo = 2.0 * k, hi = 8.0 * k;
  for (int it = 0; it < 200; ++it) {
    const double mid = (lo + hi) / 2;
    (lhs(mid) > 0 ? hi : lo) = mid;
  }
  return (lo + hi) / 2;
}

}  // namespace

TEST(FBEps, VanishesAtOneAndZero) {
  for (double r : {1.5, 2.0, 5.0}) EXPECT_EQ(f_b_eps(1.0, 0.0, r, kCtx), 0.0);
}

TEST(FBEps, UnitSlopeInB) {
  const double h = 1e-6;
  EXPECT_NEAR((f_b_eps(1 + h, 0.0, 2.0, kCtx) - f_b_eps(1 - h, 0.0, 2.0, kCtx)) / (2 * h), 1.0, 1e-9);
  // nearly unit slope just off ε = 0
  const double e = 0.05;
  EXPECT_NEAR((f_b_eps(1 + h, e, 2.0, kCtx) - f_b_eps(1 - h, e, 2.0, kCtx)) / (2 * h), 1.0, 1e-3);
}

TEST(FBEps, SmallEpsilonExpansionIsFifthOrder) {
  const double r = 2.0, b = 1.0, z = zeta15();
  std::vector<double> eps, err;
  for (double e : {0.1, 0.05, 0.025, 0.0125}) {
    const double expansion = (b - 1) + e * e / 2 - e * e * e * z / (8 * std::sqrt(M_PI * b * (r - 1)));
    eps.push_back(e);
    err.push_back(f_b_eps(b, e, r, kCtx) - expansion);
  }
  EXPECT_NEAR(loglog_slope(eps, err), 5.0, 0.3);
}

TEST(FBEps, DomainErrors) {
  EXPECT_THROW(f_b_eps(0.4, 0.1, 2.0, kCtx), DomainError);
  EXPECT_THROW(f_b_eps(1.0, 1.5, 2.0, kCtx), DomainError);
  EXPECT_THROW(f_b_eps(1.0, 0.1, 1.0, kCtx), DomainError);
}

TEST(SolveBk, MatchesEndpointEquationOracle) {
  for (int k : {5, 25, 100}) {
    for (double r : {2.0, 3.5}) {
      const auto m = solve_bk(k, r, kCtx);
      EXPECT_NEAR(m.beta, mrs_beta_oracle(k, r), 1e-9 * m.beta) << k << " " << r;
    }
  }
}

TEST(SolveBk, HundredAtRTwo) {
  const auto m = solve_bk(100, 2.0, kCtx);
  EXPECT_NEAR(m.b, 0.9951848589, 1e-9);
  EXPECT_NEAR(m.beta, 398.074, 1e-3);
  EXPECT_LE(std::abs(m.residual), 1e-8);
  // the expansion alone gives 0.9951842
  EXPECT_NEAR(bk_expansion(100, 2.0, zeta15()), 0.9951842, 1e-7);
  EXPECT_LE(std::abs(m.b - bk_expansion(100, 2.0, zeta15())) * std::pow(100.0, 2.5), 0.1);
}

TEST(SolveBk, TendsToOneInsideSearchBox) {
  double prev = 0;
  for (int k : {1, 2, 10, 100, 1000}) {
    const auto m = solve_bk(k, 2.0, kCtx);
    EXPECT_GE(m.b, 0.5);
    EXPECT_LE(m.b, 2.0);
    EXPECT_GT(m.b, prev);
    prev = m.b;
  }
  EXPECT_NEAR(prev, 1.0, 1e-3);
}

TEST(SolveBk, ExpansionErrorDecaysLikeKToMinusFiveHalves) {
  std::vector<double> ks, err;
  for (int k : {25, 50, 100, 200}) {
    ks.push_back(k);
    err.push_back(solve_bk(k, 2.0, kCtx).b - bk_expansion(k, 2.0, zeta15()));
  }
  EXPECT_NEAR(loglog_slope(ks, err), -2.5, 0.3);
}

class Problem50 : public ::testing::Test {
 protected:
  void SetUp() override {
    b = solve_bk(50, 2.0, kCtx).b;
    prob = std::make_unique<EquilibriumProblem<double>>(50, 2.0, b, kCtx);
  }
  double b = 0;
  std::unique_ptr<EquilibriumProblem<double>> prob;
};

TEST_F(Problem50, ContourAndRealRoutesAgree) {
  for (double z : {1.5, 2.0, 4.0}) {
    const double qc = prob->q_contour(z);
    const double qr = prob->q_real(z);
    EXPECT_LE(std::abs(qc - qr), kCtx.quad_tol * std::abs(qr)) << z;
  }
}

TEST_F(Problem50, ContourRouteIsAnalyticOffTheAxis) {
  // q_k is real on the real axis and q(conj z) = conj q(z)
  const std::complex<double> z(0.4, 0.01);
  const auto a = prob->q_contour(z);
  const auto c = prob->q_contour(std::conj(z));
  EXPECT_NEAR(a.real(), c.real(), 1e-11);
  EXPECT_NEAR(a.imag(), -c.imag(), 1e-11);
  EXPECT_NEAR(prob->q_contour(std::complex<double>(0.3, 0.0)).imag(), 0.0, 1e-11);
}

TEST_F(Problem50, DerivativeRoutesAgree) {
  EXPECT_NEAR(prob->q_prime_1_difference(), prob->q_prime_1_direct(), 1e-8);
}

TEST_F(Problem50, MomentIdentity) {
  const double a = prob->a_k();
  EXPECT_LE(std::abs(a - (2 * b - 2 + 1.0 / 50)), 10 * kCtx.quad_tol);
  EXPECT_LE(std::abs(1 - (1.0 / 100 - a / 2 + b)), 10 * kCtx.quad_tol);
}

TEST_F(Problem50, LagrangeMultiplierPieces) {
  // I_1 = ln(1 − e^{−γk})/k in closed form
  const double g = prob->gamma();
  EXPECT_NEAR(prob->I1() / (std::log1p(-std::exp(-g * 50)) / 50), 1.0, 1e-12);
  EXPECT_LE(std::abs(prob->I1()), 1e-80);
  EXPECT_NEAR(prob->V(1.0), 4 * b + std::log(200 * b) / 50, 1e-14);
}

TEST_F(Problem50, DensityIsAProbabilityDensity) {
  for (int i = 1; i < 100; ++i) EXPECT_GT(prob->density(i / 100.0), 0.0);
  EXPECT_NEAR(prob->density_mass(), 1.0, kCtx.quad_tol);
}

TEST_F(Problem50, EulerLagrangeEquality) {
  const double l = prob->l_k();
  for (double x : {0.25, 0.5, 0.75}) EXPECT_LE(std::abs(prob->euler_lagrange(x, l)), 50 * kCtx.quad_tol) << x;
}

TEST_F(Problem50, EulerLagrangeDetectsWrongMultiplier) {
  const double l = prob->l_k();
  EXPECT_NEAR(prob->euler_lagrange(0.5, l + 1e-6), -1e-6, 1e-9);
}

TEST_F(Problem50, RejectsWideContourAndOutsidePoints) {
  // δ at the pole-clearance bound π/(2(r−1)) puts the first poles on the curve
  EXPECT_THROW(EquilibriumProblem<double>(50, 2.0, b, kCtx, ContourOptions{0.999 * M_PI / 2}), InvalidContour);
  EXPECT_THROW(prob->q_contour(std::complex<double>(0.5, 2.0)), InvalidContour);
  EXPECT_THROW(prob->q_contour(std::complex<double>(-0.5, 0.0)), InvalidContour);
}

TEST(QContour, CloseToFourAtHundred) {
  const auto m = solve_bk(100, 2.0, kCtx);
  EquilibriumProblem<double> p(100, 2.0, m.b, kCtx);
  for (double z : {0.0, 0.5, 1.0}) EXPECT_LE(std::abs(p.q_contour(z) - 4), 1.0) << z;
}

TEST(QContour, DeviationShrinksLikeInverseRootK) {
  for (double z : {0.0, 0.5, 1.0}) {
    double prev = 1e300;
    for (int k : {25, 100, 400}) {
      const auto m = solve_bk(k, 2.0, kCtx);
      EquilibriumProblem<double> p(k, 2.0, m.b, kCtx);
      const double dev = std::abs(p.q_contour(z) - 4);
      EXPECT_LT(dev, prev) << z << " " << k;
      EXPECT_LE(dev * std::sqrt(double(k)), 2.0) << z << " " << k;
      prev = dev;
    }
  }
}

TEST(QContour, DerivativeAtOneVanishes) {
  double prev = 1e300;
  for (int k : {25, 100, 400}) {
    const auto m = solve_bk(k, 2.0, kCtx);
    EquilibriumProblem<double> p(k, 2.0, m.b, kCtx);
    const double d = std::abs(p.q_prime_1_direct()) * std::sqrt(double(k));
    EXPECT_LT(d, prev);
    prev = d;
  }
}

TEST(QContour, ResolventRemainderDecay) {
  for (double z : {1.5, 2.0, 4.0}) {
    std::vector<double> ks, rem;
    for (int k : {25, 50, 100}) {
      const auto m = solve_bk(k, 2.0, kCtx);
      EquilibriumProblem<double> p(k, 2.0, m.b, kCtx);
      ks.push_back(k);
      rem.push_back(p.q_real(z) - 4 * m.b - p.a_k() / z);
      // fitted constant in |r_k| ≤ C/(z√(z−1)k^{5/2})
      EXPECT_LE(std::abs(rem.back()) * z * std::sqrt(z - 1) * std::pow(k, 2.5), 0.1);
    }
    EXPECT_NEAR(loglog_slope(ks, rem), -2.5, 0.2) << z;
  }
}

TEST(AkEval, IdentityPositivityAndDecay) {
  double prev = 1e300;
  for (int k : {2, 10, 50, 100}) {
    const auto m = solve_bk(k, 2.0, kCtx);
    EquilibriumProblem<double> p(k, 2.0, m.b, kCtx);
    const double a = p.a_k();
    EXPECT_GT(a, 0.0);
    EXPECT_LT(a, prev);
    EXPECT_LE(std::abs(a - (2 * m.b - 2 + 1.0 / k)), 10 * kCtx.quad_tol) << k;
    prev = a;
  }
}

TEST(LkEval, ClosedFormSelfTests) {
  // both integrands decay like 1/z², so integrate over u = 1/z in (0, 1]
  auto first = [](double u, double, double du) {
    const double root = std::sqrt(du);
    return (-1 / (1 + root) + 0.5) / u;
  };
  auto second = [](double u, double, double du) { return -1 / (1 + std::sqrt(du)); };
  EXPECT_NEAR(integrate_singular(first, 0.0, 1.0, 0.0, 0.5, kCtx).value, 0.5 - std::log(2.0), 1e-13);
  EXPECT_NEAR(integrate_singular(second, 0.0, 1.0, 0.0, 0.5, kCtx).value, 2 * std::log(2.0) - 2, 1e-13);
}

TEST(LkEval, HundredAtRTwo) {
  const auto s = solve_mrs<double>(100, 2.0, kCtx);
  EXPECT_NEAR(s.l, -4.80970, 1e-5);
  EXPECT_LE(std::abs(s.l - lk_expansion(100, 2.0, zeta15())) * std::pow(100.0, 2.5), 1.0);
  EXPECT_NEAR(lk_expansion(100, 2.0, zeta15()), -4.8096958, 1e-6);
}

TEST(LkEval, ApproachesLimit) {
  double prev = -1e300;
  for (int k : {10, 100, 1000}) {
    const double l = solve_mrs<double>(k, 2.0, kCtx).l;
    EXPECT_GT(l, prev);
    prev = l;
  }
  EXPECT_NEAR(prev, -2 - 4 * std::log(2.0), 0.01);
}

TEST(SolveMrs, BigFloatSpotCheck) {
  const auto d = solve_mrs<double>(25, 2.0, kCtx);
  PrecisionGuard guard(128);
  const PrecisionContext ctx{128, 1e-20, 60};
  const auto m = solve_mrs<BigFloat>(25, BigFloat(2), ctx);
  EXPECT_NEAR(to_double(m.b), d.b, 1e-14);
  EXPECT_NEAR(to_double(m.l), d.l, 1e-12);
  EXPECT_NEAR(to_double(m.q1prime_direct), d.q1prime_direct, 1e-12);
  EXPECT_LE(to_double(abs(m.a - (2 * m.b - 2 + BigFloat(1) / 25))), 1e-19);
  EXPECT_LE(to_double(abs(m.q1prime - m.q1prime_direct)), 1e-20);
}

TEST(Vanlessen, BracketNearSevenSixths) {
  for (int k : {25, 50, 100, 200}) {
    const auto v = h_vanlessen(solve_mrs<double>(k, 2.0, kCtx));
    EXPECT_LE(std::abs(v.bracket - v.bracket_simplified) * std::pow(k, 1.5), 1.0) << k;
    EXPECT_DOUBLE_EQ(v.bracket_simplified, 1 + 7.0 / (6 * k));
  }
}

TEST(Vanlessen, ReproducesNormExpansion) {
  for (int k : {25, 50, 100}) {
    const auto v = h_vanlessen(solve_mrs<double>(k, 2.0, kCtx));
    const double lhs = v.log_h - 2 * log_factorial<double>(k);
    EXPECT_LE(std::abs(lhs - norm_expansion(k, 2.0, zeta15())) * std::pow(k, 1.5), 1.0) << k;
  }
}

TEST(Vanlessen, AgreesWithExactNorms) {
  const auto nt = norms_from_moments(moments_critical(100, Rational(2), kCtx), 51, kCtx);
  for (int k : {25, 50}) {
    const auto v = h_vanlessen(solve_mrs<double>(k, 2.0, kCtx));
    const double exact = to_double(nt.log_ratio(k, 128)) + 2 * log_factorial<double>(k);
    EXPECT_LE(std::abs(std::expm1(v.log_h - exact)) * std::pow(k, 1.5), 1.0) << k;
  }
}

TEST(Theorem1, ExpansionAtHundred) {
  EXPECT_NEAR(norm_expansion(100, 2.0, zeta15()), -0.07119, 1e-5);
}

TEST(Theorem1, ReportRowsAndSlopeGate) {
  const auto rep = theorem1_report(16, 48, Rational(3), kCtx);
  ASSERT_EQ(rep.rows.size(), 7u);  // 16 19 22 26 32 38 45
  EXPECT_FALSE(rep.slope.has_value());
  for (const auto& row : rep.rows) {
    EXPECT_EQ(BigFloat(row.lhs - row.expansion), row.residual);
    EXPECT_LT(abs(row.residual_scaled), BigFloat(0.2));
  }
  const auto nt = norms_from_moments(moments_critical(90, Rational(2), kCtx), 46, kCtx);
  EXPECT_EQ(rep.rows[2].lhs, nt.log_ratio(22, kCtx.bits));
}

TEST(Theorem1, QuarterOctaveGrid) {
  EXPECT_EQ(quarter_octave_grid(16, 128),
            (std::vector<int>{16, 19, 22, 26, 32, 38, 45, 53, 64, 76, 90, 107, 128}));
  EXPECT_EQ(quarter_octave_grid(1, 2), (std::vector<int>{1, 2}));
}

TEST(Theorem2, RowsMatchPartitionFunction) {
  const auto fit = theorem2_fit(12, Rational(3), kCtx);
  ASSERT_EQ(fit.rows.size(), 12u);
  for (int n : {1, 3, 7, 12}) {
    const auto z = zn_critical(n, Rational(3), kCtx);
    PrecisionGuard guard(kCtx.bits);
    EXPECT_LE(to_double(abs(fit.rows[n - 1].lnZ - log(z.value))), 1e-30) << n;
  }
  EXPECT_NEAR(fit.lnF, std::log(2.0), 1e-15);
  EXPECT_NEAR(fit.lnG_reference, -zeta15() / std::sqrt(M_PI), 1e-14);
  EXPECT_FALSE(fit.increment_slope.has_value());
}

TEST(Theorem2, NeedsEnoughPoints) { EXPECT_THROW(theorem2_fit(4, Rational(3), kCtx), SizeError); }

TEST(FerroReference, ConstantsAndLimit) {
  for (double g : {0.01, 0.5, 3.0}) {
    const auto a = ref_asymptotics_ferro(5, 2 * g, g);
    EXPECT_GT(a.C, 0.0);
    EXPECT_LT(a.C, 1.0);
  }
  for (double alpha : {2.0, 3.0, 7.0}) {
    const double g = 1e-7;
    EXPECT_NEAR(ref_asymptotics_ferro(1, alpha * g, g).F, (alpha + 1) / 2, 1e-6);
  }
  EXPECT_THROW(ref_asymptotics_ferro(3, 0.5, 0.5), DomainError);
}

TEST(FerroReference, LogValue) {
  const auto a = ref_asymptotics_ferro(3, 1.5, 0.5);
  EXPECT_NEAR(a.log_value, std::log(a.C * a.G * a.G * a.G * std::pow(a.F, 9)), 1e-12);
}

TEST(DisorderedReference, FreeFermionPoint) {
  const auto d = ref_free_energy_disordered(0.0, M_PI / 4);
  EXPECT_NEAR(d.F, 1.0, 1e-15);
  EXPECT_NEAR(d.kappa, 1.0 / 36, 1e-15);
}

TEST(DisorderedReference, RemovableSingularity) {
  const double g = 0.6;
  for (double t : {g, -g}) EXPECT_NEAR(ref_free_energy_disordered(t, g).F, 1.0, 1e-14);
  const double near = ref_free_energy_disordered(g - 1e-7, g).F;
  EXPECT_NEAR(near, 1.0, 1e-6);
  EXPECT_THROW(ref_free_energy_disordered(0.7, g), DomainError);
}
