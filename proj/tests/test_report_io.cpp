#include <gtest/gtest.h>

#include <cmath>

#include "sixvertex/report_io.hpp"

using namespace sixvertex;

namespace {

const PrecisionContext kCtx{};

Table sample() {
  Table t;
  t.meta("table", "demo");
  t.meta("slope", fmt(-1.4369662911707448));
  t.columns = {"k", "value"};
  t.add_row({"1", "0.5"});
  t.add_row({"2", "-3.25e-07"});
  return t;
}

void expect_same(const Table& a, const Table& b) {
  EXPECT_EQ(a.metadata, b.metadata);
  EXPECT_EQ(a.columns, b.columns);
  EXPECT_EQ(a.rows, b.rows);
}

}  // namespace

TEST(Table, CsvLayout) {
  EXPECT_EQ(to_csv(sample()), "# table=demo\n# slope=-1.4369662911707448\nk,value\n1,0.5\n2,-3.25e-07\n");
}

TEST(Table, CsvAndJsonRoundTrip) {
  const Table t = sample();
  expect_same(parse_csv(to_csv(t)), t);
  expect_same(parse_json(to_json(t)), t);
  expect_same(parse_csv(to_csv(t)), parse_json(to_json(t)));
}

TEST(Table, RejectsRaggedRows) {
  Table t = sample();
  EXPECT_THROW(t.add_row({"3"}), ConsistencyError);
  EXPECT_THROW(t.column("missing"), DomainError);
  EXPECT_EQ(t.column("value"), 1u);
}

TEST(Table, DoublesRoundTripThroughStrings) {
  for (double x : {0.1, -4.8096958, 1e-300, 398.07394357}) EXPECT_EQ(std::stod(fmt(x)), x);
}

TEST(HkTable, CriticalColumnsAndValues) {
  const auto nt = norms_from_moments(moments_critical(8, Rational(2), kCtx), 5, kCtx);
  const Table t = hk_table(nt, 5, {{"alpha", "3"}}, kCtx.bits);
  EXPECT_EQ(t.columns, (std::vector<std::string>{"k", "h_k", "ln(h_k/(k!)^2)"}));
  ASSERT_EQ(t.rows.size(), 5u);
  EXPECT_EQ(*t.find_meta("alpha"), "3");
  EXPECT_EQ(*t.find_meta("bits"), std::to_string(kCtx.bits));
  PrecisionGuard guard(kCtx.bits);
  const Rational h[] = {Rational(1, 2), Rational(5, 8), Rational(109, 40)};
  for (int k = 0; k < 3; ++k) EXPECT_LT(to_double(abs(BigFloat(t.rows[k][1]) / BigFloat(h[k]) - 1)), 1e-36) << k;
  for (int k = 0; k < 5; ++k) {
    const BigFloat ln(t.rows[k][2]);
    EXPECT_LT(to_double(abs(ln - nt.log_ratio(k, kCtx.bits))), 1e-36) << k;
  }
}

TEST(HkTable, DiscreteMode) {
  const auto nt = norms_discrete(3, FerroParam<Rational>{Rational(3, 2), Rational(1, 2)}, kCtx);
  const Table t = hk_table(nt, 3, {{"t", "3/2"}, {"gamma", "1/2"}}, kCtx.bits);
  EXPECT_EQ(*t.find_meta("mode"), "discrete");
  EXPECT_EQ(t.rows.size(), 3u);
  EXPECT_THROW(hk_table(nt, 4, {}, kCtx.bits), DomainError);
}

TEST(MrsTable, Schema) {
  const auto nt = norms_from_moments(moments_critical(20, Rational(2), kCtx), 11, kCtx);
  const auto s = solve_mrs<double>(10, 2.0, kCtx);
  BigFloat exact;
  {
    PrecisionGuard guard(kCtx.bits);
    exact = nt.log_ratio(10, kCtx.bits) + 2 * log_factorial<BigFloat>(10);
  }
  const Table t = mrs_table({make_mrs_row(s, h_vanlessen(s), exact, 53, kCtx.bits)}, Rational(3), kCtx.bits);
  EXPECT_EQ(t.columns, (std::vector<std::string>{"k", "b_k", "beta_k", "a_k", "l_k", "q0", "q1", "q1prime",
                                                 "h_vanlessen", "h_exact", "rel_err"}));
  ASSERT_EQ(t.rows.size(), 1u);
  EXPECT_NEAR(std::stod(t.rows[0][t.column("b_k")]), s.b, 1e-15);
  const double rel = std::stod(t.rows[0][t.column("rel_err")]);
  const double hv = std::stod(t.rows[0][t.column("h_vanlessen")]);
  const double he = std::stod(t.rows[0][t.column("h_exact")]);
  EXPECT_NEAR(rel, hv / he - 1, 1e-12);
}

TEST(TheoremTables, Thm1SchemaAndSlopeMetadata) {
  const auto rep = theorem1_report(8, 64, Rational(3), kCtx);
  ASSERT_TRUE(rep.slope.has_value());
  const Table t = thm1_table(rep);
  EXPECT_EQ(t.columns, (std::vector<std::string>{"k", "lhs", "expansion", "residual", "residual_scaled"}));
  EXPECT_EQ(t.rows.size(), rep.rows.size());
  EXPECT_EQ(std::stod(*t.find_meta("slope")), *rep.slope);
  EXPECT_EQ(*t.find_meta("fit_from"), "11");
}

TEST(TheoremTables, Thm2Schema) {
  const Table t = thm2_table(theorem2_fit(10, Rational(3), kCtx));
  EXPECT_EQ(t.columns, (std::vector<std::string>{"n", "lnZ", "S_n"}));
  EXPECT_EQ(t.rows.size(), 10u);
  EXPECT_EQ(t.rows[0][1], "0");
  EXPECT_NE(t.find_meta("lnG_fit"), nullptr);
  EXPECT_EQ(t.find_meta("increment_slope"), nullptr);
}
