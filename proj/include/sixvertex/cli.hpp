#pragma once

#include <algorithm>
#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "sixvertex/critical_asymptotics.hpp"
#include "sixvertex/errors.hpp"
#include "sixvertex/model.hpp"
#include "sixvertex/partition_exact.hpp"
#include "sixvertex/report_io.hpp"
#include "sixvertex/vertex_enum.hpp"

namespace sixvertex::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kNumeric = 2, kInvariant = 3 };

/// Usage-level failure raised after argument parsing (bad parameter values).
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Exact rational from "3", "-2.125", "1e-3" or "7/3".
inline Rational parse_rational(const std::string& s) {
  static const std::regex frac(R"(^\s*([+-]?\d+)\s*/\s*(\d+)\s*$)");
  static const std::regex dec(R"(^\s*([+-]?)(\d*)(?:\.(\d*))?(?:[eE]([+-]?\d+))?\s*$)");
  std::smatch m;
  if (std::regex_match(s, m, frac)) {
    std::string d = m[2].str();
    d.erase(0, std::min(d.find_first_not_of('0'), d.size() - 1));
    const BigInt den(d);
    if (den == 0) throw UsageError("zero denominator in '" + s + "'");
    std::string num = m[1].str();
    const std::size_t sign = (num[0] == '+' || num[0] == '-') ? 1 : 0;
    num.erase(sign, std::min(num.find_first_not_of('0', sign), num.size() - 1) - sign);
    return Rational(BigInt(num), den);
  }
  if (std::regex_match(s, m, dec) && (m[2].length() + m[3].length()) > 0) {
    // leading zeros would make the integer parser read octal
    std::string digits = m[2].str() + m[3].str();
    digits.erase(0, std::min(digits.find_first_not_of('0'), digits.size() - 1));
    Rational q{BigInt(digits)};
    long e = -static_cast<long>(m[3].length());
    if (m[4].matched) e += std::stol(m[4].str());
    if (std::labs(e) > 10000) throw UsageError("exponent out of range in '" + s + "'");
    const BigInt ten(10);
    BigInt p(1);
    for (long i = 0; i < std::labs(e); ++i) p *= ten;
    q = e >= 0 ? Rational(q * p) : Rational(q / p);
    return m[1].str() == "-" ? Rational(-q) : q;
  }
  throw UsageError("not a number: '" + s + "'");
}

struct RunConfig {
  std::string command;
  std::string format = "text";
  std::string output;
  unsigned bits = 128;
  double quad_tol = 1e-12;
  std::string alpha, t, gamma, a, b, c;
  std::string mode;
  int n = 0, nmax = 0, kmin = 0, kmax = 0;
  std::vector<int> ks;
  double delta = 0.0;
  bool dump = false;

  PrecisionContext context() const {
    PrecisionContext ctx{bits, quad_tol, 60};
    ctx.validate();
    return ctx;
  }
};

namespace detail {

inline Format table_format(const RunConfig& cfg) { return cfg.format == "json" ? Format::json : Format::csv; }

inline Rational need_alpha(const RunConfig& cfg) {
  if (cfg.alpha.empty()) throw UsageError("--alpha is required");
  const Rational alpha = parse_rational(cfg.alpha);
  if (!(alpha > 1)) throw UsageError("--alpha must exceed 1");
  return alpha;
}

inline FerroParam<Rational> need_ferro(const RunConfig& cfg) {
  if (cfg.t.empty() || cfg.gamma.empty()) throw UsageError("--t and --gamma are required");
  FerroParam<Rational> p{parse_rational(cfg.t), parse_rational(cfg.gamma)};
  if (!(p.gamma > 0 && p.gamma < p.t)) throw UsageError("ferroelectric parameters need 0 < gamma < t");
  return p;
}

inline std::optional<VertexWeights<Rational>> weights(const RunConfig& cfg) {
  const int given = !cfg.a.empty() + !cfg.b.empty() + !cfg.c.empty();
  if (given == 0) return std::nullopt;
  if (given != 3) throw UsageError("--a, --b and --c go together");
  VertexWeights<Rational> w{parse_rational(cfg.a), parse_rational(cfg.b), parse_rational(cfg.c)};
  if (!(w.a > 0 && w.b > 0 && w.c > 0)) throw UsageError("weights must be positive");
  return w;
}

inline void need_one_parameterization(const RunConfig& cfg) {
  const bool crit = !cfg.alpha.empty();
  const bool ferro = !cfg.t.empty() || !cfg.gamma.empty();
  const bool abc = !cfg.a.empty() || !cfg.b.empty() || !cfg.c.empty();
  if (crit + ferro + abc > 1) throw UsageError("give exactly one of --alpha, (--t, --gamma) or (--a, --b, --c)");
}

inline std::string scalar(const RunConfig& cfg, const std::string& name, const std::string& value,
                          std::vector<std::pair<std::string, std::string>> meta) {
  if (cfg.format == "text") return value + "\n";
  Table t;
  for (auto& [k, v] : meta) t.meta(k, v);
  t.columns = {name};
  t.add_row({value});
  return render(t, table_format(cfg));
}

inline std::string cmd_enumerate(const RunConfig& cfg) {
  if (cfg.n < 1 || cfg.n > kMaxEnumerationSize)
    throw UsageError("--n must lie in [1, " + std::to_string(kMaxEnumerationSize) + "]");
  if (cfg.dump) {
    nlohmann::json all = nlohmann::json::array();
    for_each_configuration(cfg.n, [&](const Configuration& c) {
      nlohmann::json m = nlohmann::json::array();
      for (int i = 0; i < c.n; ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (int j = 0; j < c.n; ++j) row.push_back(c.at(i, j));
        m.push_back(row);
      }
      all.push_back(m);
    });
    return all.dump() + "\n";
  }
  std::uint64_t count = 0;
  for_each_configuration(cfg.n, [&](const Configuration&) { ++count; });
  const auto w = weights(cfg);
  Table t;
  t.meta("table", "enumerate");
  t.columns = {"n", "configurations"};
  std::vector<std::string> row{std::to_string(cfg.n), std::to_string(count)};
  if (w) {
    t.meta("a", fmt(w->a));
    t.meta("b", fmt(w->b));
    t.meta("c", fmt(w->c));
    t.columns.push_back("Z");
    row.push_back(fmt(partition_brute(cfg.n, *w)));
  }
  t.add_row(row);
  if (cfg.format == "text") {
    std::string s;
    for (std::size_t i = 0; i < row.size(); ++i) s += t.columns[i] + " " + row[i] + "\n";
    return s;
  }
  return render(t, table_format(cfg));
}

inline std::string cmd_zn(const RunConfig& cfg) {
  const auto ctx = cfg.context();
  if (cfg.n < 1) throw UsageError("--n must be positive");
  need_one_parameterization(cfg);
  if (cfg.mode == "critical") {
    const Rational alpha = need_alpha(cfg);
    const auto z = zn_critical(cfg.n, alpha, ctx);
    return scalar(cfg, "Z", fmt(*z.exact), {{"mode", "critical"}, {"alpha", fmt(alpha)}, {"n", std::to_string(cfg.n)}});
  }
  if (cfg.mode == "ferro") {
    const auto p = need_ferro(cfg);
    const auto z = zn_ferro(cfg.n, p, ctx);
    return scalar(cfg, "Z", fmt(z.value, ctx.bits),
                  {{"mode", "ferro"}, {"t", fmt(p.t)}, {"gamma", fmt(p.gamma)}, {"n", std::to_string(cfg.n)},
                   {"bits", std::to_string(ctx.bits)}});
  }
  if (cfg.mode == "brute") {
    if (cfg.n > kMaxEnumerationSize) throw UsageError("brute force needs n <= 8");
    std::optional<VertexWeights<Rational>> w = weights(cfg);
    if (!w && !cfg.alpha.empty()) w = critical_from_alpha(need_alpha(cfg), ctx).weights();
    if (!w) throw UsageError("brute mode needs --a --b --c or --alpha");
    return scalar(cfg, "Z", fmt(partition_brute(cfg.n, *w)),
                  {{"mode", "brute"}, {"a", fmt(w->a)}, {"b", fmt(w->b)}, {"c", fmt(w->c)}, {"n", std::to_string(cfg.n)}});
  }
  throw UsageError("--mode must be critical, ferro or brute");
}

inline std::string cmd_hk(const RunConfig& cfg) {
  const auto ctx = cfg.context();
  if (cfg.kmax < 1) throw UsageError("--kmax must be positive");
  need_one_parameterization(cfg);
  if (!cfg.alpha.empty()) {
    const Rational alpha = need_alpha(cfg);
    const Rational r = (alpha + 1) / (alpha - 1);
    const auto nt = norms_from_moments(moments_critical(2 * cfg.kmax - 2, r, ctx), cfg.kmax, ctx);
    return render(hk_table(nt, cfg.kmax, {{"alpha", fmt(alpha)}}, ctx.bits), table_format(cfg));
  }
  const auto p = need_ferro(cfg);
  const auto nt = norms_discrete(cfg.kmax, p, ctx);
  return render(hk_table(nt, cfg.kmax, {{"t", fmt(p.t)}, {"gamma", fmt(p.gamma)}}, ctx.bits), table_format(cfg));
}

template <class Real>
MrsRow mrs_row_as(int k, const Rational& r, const NormTable& nt, const PrecisionContext& ctx,
                  ContourOptions opts) {
  BigFloat log_h_exact;
  {
    PrecisionGuard guard(ctx.bits);
    log_h_exact = nt.log_ratio(k, ctx.bits) + 2 * log_factorial<BigFloat>(k);
  }
  if constexpr (std::is_same_v<Real, double>) {
    const auto s = solve_mrs<double>(k, from_rational<double>(r), ctx, opts);
    return make_mrs_row(s, h_vanlessen(s), log_h_exact, 53, ctx.bits);
  } else {
    PrecisionGuard guard(ctx.bits);
    const auto s = solve_mrs<BigFloat>(k, from_rational<BigFloat>(r), ctx, opts);
    return make_mrs_row(s, h_vanlessen(s), log_h_exact, ctx.bits, ctx.bits);
  }
}

inline std::string cmd_mrs(const RunConfig& cfg) {
  const auto ctx = cfg.context();
  const Rational alpha = need_alpha(cfg);
  if (cfg.ks.empty()) throw UsageError("--k is required");
  int kmax = 0;
  for (int k : cfg.ks) {
    if (k < 1) throw UsageError("--k values must be positive");
    kmax = std::max(kmax, k);
  }
  const Rational r = (alpha + 1) / (alpha - 1);
  const auto nt = norms_from_moments(moments_critical(2 * kmax, r, ctx), kmax + 1, ctx);
  std::vector<MrsRow> rows;
  if (cfg.delta < 0) throw UsageError("--delta must be positive");
  const ContourOptions opts{cfg.delta};
  for (int k : cfg.ks)
    rows.push_back(ctx.bits == 53 ? mrs_row_as<double>(k, r, nt, ctx, opts) : mrs_row_as<BigFloat>(k, r, nt, ctx, opts));
  return render(mrs_table(rows, alpha, ctx.bits), table_format(cfg));
}

inline std::string cmd_thm1(const RunConfig& cfg) {
  const auto ctx = cfg.context();
  const Rational alpha = need_alpha(cfg);
  if (cfg.kmin < 1 || cfg.kmax < cfg.kmin) throw UsageError("need 1 <= --kmin <= --kmax");
  return render(thm1_table(theorem1_report(cfg.kmin, cfg.kmax, alpha, ctx)), table_format(cfg));
}

inline std::string cmd_thm2(const RunConfig& cfg) {
  const auto ctx = cfg.context();
  const Rational alpha = need_alpha(cfg);
  if (cfg.nmax < 5) throw UsageError("--nmax must be at least 5");
  return render(thm2_table(theorem2_fit(cfg.nmax, alpha, ctx)), table_format(cfg));
}

// ---------------------------------------------------------------------------
// Invariant suite

struct CheckItem {
  std::string name;
  double budget_seconds;
  std::function<bool(std::string&)> run;
};

inline std::vector<CheckItem> check_items(const PrecisionContext& ctx) {
  std::vector<CheckItem> items;
  items.push_back({"asm_counts", 30, [](std::string& why) {
                     const int expected[] = {1, 2, 7, 42, 429, 7436};
                     for (int n = 1; n <= 6; ++n) {
                       if (partition_brute(n, VertexWeights<Rational>{1, 1, 1}) != expected[n - 1]) {
                         why = "n=" + std::to_string(n);
                         return false;
                       }
                     }
                     return true;
                   }});
  items.push_back({"critical_vs_brute", 30, [ctx](std::string& why) {
                     for (const Rational alpha : {Rational(2), Rational(3), Rational(7, 3)}) {
                       const auto w = critical_from_alpha(alpha, ctx).weights();
                       for (int n = 1; n <= 5; ++n) {
                         if (*zn_critical(n, alpha, ctx).exact != partition_brute(n, w)) {
                           why = "alpha=" + fmt(alpha) + " n=" + std::to_string(n);
                           return false;
                         }
                       }
                     }
                     return true;
                   }});
  items.push_back({"ferro_vs_brute", 60, [ctx](std::string& why) {
                     PrecisionContext hi = ctx;
                     hi.bits = std::max(ctx.bits, 256u);
                     hi.quad_tol = 1e-40;
                     const FerroParam<Rational> p{Rational(3, 2), Rational(1, 2)};
                     for (int n = 1; n <= 4; ++n) {
                       PrecisionGuard guard(hi.bits);
                       const BigFloat t(p.t), g(p.gamma);
                       const VertexWeights<BigFloat> w{sinh(t - g), sinh(t + g), sinh(2 * g)};
                       const BigFloat brute = partition_brute(n, w.reduced());
                       const BigFloat ik = zn_ferro(n, p, hi).value;
                       if (abs(ik / brute - 1) > BigFloat(1e-30)) {
                         why = "n=" + std::to_string(n);
                         return false;
                       }
                     }
                     return true;
                   }});
  items.push_back({"free_fermion", 30, [](std::string& why) {
                     PrecisionGuard guard(256);
                     const BigFloat q = pi_v<BigFloat>() / 4;
                     for (int n = 1; n <= 5; ++n) {
                       const VertexWeights<BigFloat> w{sin(q - BigFloat(0.3)), sin(q + BigFloat(0.3)), BigFloat(1)};
                       if (abs(partition_brute(n, w) - 1) > BigFloat(1e-30)) {
                         why = "n=" + std::to_string(n);
                         return false;
                       }
                     }
                     return true;
                   }});
  items.push_back({"equilibrium_k50", 120, [ctx](std::string& why) {
                     const auto m = solve_bk(50, 2.0, ctx);
                     EquilibriumProblem<double> p(50, 2.0, m.b, ctx);
                     const double a = p.a_k();
                     const double tol = ctx.quad_tol;
                     if (std::abs(a - (2 * m.b - 2 + 1.0 / 50)) > 10 * tol) {
                       why = "moment identity";
                       return false;
                     }
                     if (std::abs(p.density_mass() - 1) > tol) {
                       why = "normalization";
                       return false;
                     }
                     if (std::abs(p.q_contour(2.0) - p.q_real(2.0)) > tol * 4) {
                       why = "contour vs real route at z=2";
                       return false;
                     }
                     if (std::abs(p.q_prime_1_difference() - p.q_prime_1_direct()) > 1e-8) {
                       why = "q'(1) routes";
                       return false;
                     }
                     const double l = p.l_k();
                     for (double x : {0.25, 0.5, 0.75}) {
                       if (std::abs(p.euler_lagrange(x, l)) > 50 * tol) {
                         why = "Euler-Lagrange at x=" + fmt(x);
                         return false;
                       }
                     }
                     return true;
                   }});
  items.push_back({"vanlessen_bracket", 60, [ctx](std::string& why) {
                     for (int k : {25, 50, 100}) {
                       const auto v = h_vanlessen(solve_mrs<double>(k, 2.0, ctx));
                       if (std::abs(v.bracket - v.bracket_simplified) * std::pow(k, 1.5) > 1.0) {
                         why = "k=" + std::to_string(k);
                         return false;
                       }
                     }
                     return true;
                   }});
  return items;
}

inline int cmd_check(const RunConfig& cfg, std::ostream& out) {
  const auto ctx = cfg.context();
  bool all = true;
  for (const auto& item : check_items(ctx)) {
    std::string why;
    const auto t0 = std::chrono::steady_clock::now();
    bool ok = false;
    try {
      ok = item.run(why);
    } catch (const std::exception& e) {
      why = e.what();
    }
    const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (ok && dt > item.budget_seconds) {
      ok = false;
      why = "over time budget";
    }
    all = all && ok;
    out << (ok ? "[PASS] " : "[FAIL] ") << item.name;
    if (!ok) out << " (" << why << ")";
    out << '\n';
  }
  return all ? kOk : kInvariant;
}

inline void emit(const RunConfig& cfg, const std::string& text, std::ostream& out) {
  if (cfg.output.empty()) {
    out << text;
    return;
  }
  std::ofstream f(cfg.output, std::ios::binary);
  if (!f) throw UsageError("cannot open " + cfg.output);
  f << text;
}

}  // namespace detail

/// Parses argv and runs one subcommand; returns the process exit code.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  cfg.bits = PrecisionContext::from_environment().bits;
  CLI::App app{"Six-vertex DWBC partition functions and critical-line asymptotics", "sixvertex"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--format", cfg.format, "text, csv or json")->check(CLI::IsMember({"text", "csv", "json"}));
  app.add_option("--output", cfg.output, "write to this file instead of stdout");
  app.add_option("--bits", cfg.bits, "working precision in bits (SIXVERTEX_BITS)")->check(CLI::Range(53u, 1u << 20));
  app.add_option("--quad-tol", cfg.quad_tol, "relative quadrature tolerance");

  auto* en = app.add_subcommand("enumerate", "count DWBC configurations, optionally with Z_n");
  en->add_option("--n", cfg.n)->required();
  en->add_option("--a", cfg.a);
  en->add_option("--b", cfg.b);
  en->add_option("--c", cfg.c);
  en->add_flag("--dump", cfg.dump, "print all configurations as JSON vertex-type matrices");

  auto* zn = app.add_subcommand("zn", "partition function Z_n");
  zn->add_option("--mode", cfg.mode)->required()->check(CLI::IsMember({"critical", "ferro", "brute"}));
  zn->add_option("--n", cfg.n)->required();
  zn->add_option("--alpha", cfg.alpha);
  zn->add_option("--t", cfg.t);
  zn->add_option("--gamma", cfg.gamma);
  zn->add_option("--a", cfg.a);
  zn->add_option("--b", cfg.b);
  zn->add_option("--c", cfg.c);

  auto* hk = app.add_subcommand("hk", "orthogonal-polynomial norms h_k");
  hk->add_option("--alpha", cfg.alpha);
  hk->add_option("--t", cfg.t);
  hk->add_option("--gamma", cfg.gamma);
  hk->add_option("--kmax", cfg.kmax)->required();

  auto* mrs = app.add_subcommand("mrs", "MRS numbers, l_k, q-values and the Vanlessen norm");
  mrs->add_option("--alpha", cfg.alpha)->required();
  mrs->add_option("--k", cfg.ks)->required();
  mrs->add_option("--delta", cfg.delta, "stadium width parameter (default pi/(4(r-1)))");

  auto* t1 = app.add_subcommand("thm1", "ln(h_k/(k!)^2) against its expansion");
  t1->add_option("--alpha", cfg.alpha)->required();
  t1->add_option("--kmin", cfg.kmin)->required();
  t1->add_option("--kmax", cfg.kmax)->required();

  auto* t2 = app.add_subcommand("thm2", "fit of ln Z_n on the critical line");
  t2->add_option("--alpha", cfg.alpha)->required();
  t2->add_option("--nmax", cfg.nmax)->required();

  app.add_subcommand("check", "run the invariant suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  }
  cfg.command = app.get_subcommands().front()->get_name();

  try {
    if (cfg.command == "check") return detail::cmd_check(cfg, out);
    std::string text;
    if (cfg.command == "enumerate") text = detail::cmd_enumerate(cfg);
    else if (cfg.command == "zn") text = detail::cmd_zn(cfg);
    else if (cfg.command == "hk") text = detail::cmd_hk(cfg);
    else if (cfg.command == "mrs") text = detail::cmd_mrs(cfg);
    else if (cfg.command == "thm1") text = detail::cmd_thm1(cfg);
    else if (cfg.command == "thm2") text = detail::cmd_thm2(cfg);
    detail::emit(cfg, text, out);
    return kOk;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const NumericError& e) {
    err << "numeric failure in " << e.stage() << ": " << e.what() << '\n';
    auto shown = [](const std::string& v) { return v.empty() ? std::string("n/a") : v; };
    err << "  previous estimate: " << shown(e.previous_estimate()) << '\n';
    err << "  last estimate:     " << shown(e.last_estimate()) << '\n';
    return kNumeric;
  } catch (const SizeError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const DomainError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const ConsistencyError& e) {
    err << "invariant failure: " << e.what() << '\n';
    return kInvariant;
  }
}

}  // namespace sixvertex::cli
