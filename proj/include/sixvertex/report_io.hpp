#pragma once

#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "sixvertex/critical_asymptotics.hpp"
#include "sixvertex/errors.hpp"
#include "sixvertex/partition_exact.hpp"

namespace sixvertex {

enum class Format { csv, json };

/// Column table of decimal strings plus `key=value` metadata. CSV renders the
/// metadata as leading `#` lines; JSON carries the same strings.
struct Table {
  std::vector<std::pair<std::string, std::string>> metadata;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  void meta(std::string key, std::string value) { metadata.emplace_back(std::move(key), std::move(value)); }

  void add_row(std::vector<std::string> row) {
    if (row.size() != columns.size()) throw ConsistencyError("table row width differs from header");
    rows.push_back(std::move(row));
  }

  const std::string* find_meta(const std::string& key) const {
    for (const auto& [k, v] : metadata)
      if (k == key) return &v;
    return nullptr;
  }

  std::size_t column(const std::string& name) const {
    for (std::size_t i = 0; i < columns.size(); ++i)
      if (columns[i] == name) return i;
    throw DomainError("no column named " + name);
  }
};

inline std::string fmt(double x) { return to_decimal(x); }

inline std::string fmt(const BigFloat& x, unsigned bits) {
  PrecisionGuard guard(bits);
  return to_decimal(BigFloat(x));
}

inline std::string fmt(const Rational& q) {
  std::ostringstream os;
  os << q;
  return os.str();
}

inline std::string to_csv(const Table& t) {
  std::ostringstream os;
  for (const auto& [k, v] : t.metadata) os << "# " << k << '=' << v << '\n';
  for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
  os << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << row[i];
    os << '\n';
  }
  return os.str();
}

inline std::string to_json(const Table& t) {
  nlohmann::ordered_json j;
  j["metadata"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : t.metadata) j["metadata"][k] = v;
  j["columns"] = t.columns;
  j["rows"] = t.rows;
  return j.dump(2) + "\n";
}

inline std::string render(const Table& t, Format f) { return f == Format::csv ? to_csv(t) : to_json(t); }

inline Table parse_csv(const std::string& text) {
  Table t;
  std::istringstream in(text);
  std::string line;
  bool header = false;
  auto split = [](const std::string& s) {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream ls(s);
    while (std::getline(ls, cell, ',')) out.push_back(cell);
    return out;
  };
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line.rfind("# ", 0) == 0) {
      const auto eq = line.find('=');
      if (eq == std::string::npos) throw DomainError("metadata line without '='");
      t.meta(line.substr(2, eq - 2), line.substr(eq + 1));
    } else if (!header) {
      t.columns = split(line);
      header = true;
    } else {
      t.add_row(split(line));
    }
  }
  return t;
}

inline Table parse_json(const std::string& text) {
  const auto j = nlohmann::ordered_json::parse(text);
  Table t;
  for (const auto& [k, v] : j.at("metadata").items()) t.meta(k, v.get<std::string>());
  t.columns = j.at("columns").get<std::vector<std::string>>();
  for (const auto& row : j.at("rows")) t.add_row(row.get<std::vector<std::string>>());
  return t;
}

// ---------------------------------------------------------------------------
// Producers

/// Columns k, h_k, ln(h_k/(k!)²) for k < kmax. `params` names the weight
/// (alpha, or t and gamma) in the metadata.
inline Table hk_table(const NormTable& nt, int kmax,
                      const std::vector<std::pair<std::string, std::string>>& params, unsigned bits) {
  if (kmax < 1 || kmax > nt.size()) throw DomainError("hk_table: kmax outside the norm table");
  Table t;
  t.meta("table", "hk");
  t.meta("mode", to_string(nt.mode));
  for (const auto& [k, v] : params) t.meta(k, v);
  bits = std::max(bits, nt.bits);
  t.meta("bits", std::to_string(bits));
  t.columns = {"k", "h_k", "ln(h_k/(k!)^2)"};
  for (int k = 0; k < kmax; ++k) {
    std::string hk;
    if (nt.exact) {
      hk = to_decimal(nt.h_exact(k), bits);
    } else {
      PrecisionGuard guard(bits);
      BigFloat f = 1;
      for (int i = 2; i <= k; ++i) f *= i;
      hk = to_decimal(BigFloat(nt.ratio[k] * f * f));
    }
    t.add_row({std::to_string(k), hk, fmt(nt.log_ratio(k, bits), bits)});
  }
  return t;
}

/// One mrs.csv row; `bits` is the precision the MRS pipeline ran at (53 for
/// the double pipeline), which bounds the digits printed for its columns.
struct MrsRow {
  MrsSolution<BigFloat> mrs;
  VanlessenNorm<BigFloat> vanlessen;
  BigFloat log_h_exact;
  unsigned bits = 53;
};

template <class Real>
MrsRow make_mrs_row(const MrsSolution<Real>& s, const VanlessenNorm<Real>& v, const BigFloat& log_h_exact,
                    unsigned pipeline_bits, unsigned exact_bits) {
  PrecisionGuard guard(std::max(pipeline_bits, exact_bits));
  auto w = [](const Real& x) { return BigFloat(x); };
  MrsRow row;
  row.mrs = {s.k, w(s.r), w(s.b), w(s.beta), w(s.gamma), w(s.a), w(s.l), w(s.q0),
             w(s.q1), w(s.q1prime), w(s.q1prime_direct), w(s.I1), w(s.I2), w(s.V1)};
  row.vanlessen = {w(v.log_h), w(v.bracket), w(v.bracket_simplified)};
  row.log_h_exact = log_h_exact;
  row.bits = pipeline_bits;
  return row;
}

/// mrs.csv: k, b_k, beta_k, a_k, l_k, q0, q1, q1prime, h_vanlessen, h_exact, rel_err.
inline Table mrs_table(const std::vector<MrsRow>& rows, const Rational& alpha, unsigned exact_bits) {
  Table t;
  t.meta("table", "mrs");
  t.meta("alpha", fmt(alpha));
  t.meta("bits", std::to_string(exact_bits));
  if (!rows.empty()) t.meta("pipeline_bits", std::to_string(rows.front().bits));
  t.columns = {"k", "b_k", "beta_k", "a_k", "l_k", "q0", "q1", "q1prime", "h_vanlessen", "h_exact", "rel_err"};
  for (const auto& r : rows) {
    const auto& s = r.mrs;
    const unsigned pb = r.bits;
    PrecisionGuard guard(std::max(pb, exact_bits));
    const BigFloat hv = exp(r.vanlessen.log_h);
    const BigFloat he = exp(r.log_h_exact);
    const BigFloat rel = expm1(BigFloat(r.vanlessen.log_h - r.log_h_exact));
    t.add_row({std::to_string(s.k), fmt(s.b, pb), fmt(s.beta, pb), fmt(s.a, pb), fmt(s.l, pb), fmt(s.q0, pb),
               fmt(s.q1, pb), fmt(s.q1prime, pb), fmt(hv, pb), fmt(he, exact_bits), fmt(rel, pb)});
  }
  return t;
}

/// thm1.csv: k, lhs, expansion, residual, residual_scaled.
inline Table thm1_table(const TheoremReport& rep) {
  Table t;
  t.meta("table", "thm1");
  t.meta("alpha", fmt(rep.alpha));
  t.meta("bits", std::to_string(rep.bits));
  if (rep.slope) {
    t.meta("fit_from", std::to_string(rep.fit_from));
    t.meta("slope", fmt(*rep.slope));
    t.meta("scaled_drift", fmt(*rep.drift));
  }
  t.columns = {"k", "lhs", "expansion", "residual", "residual_scaled"};
  for (const auto& r : rep.rows) {
    t.add_row({std::to_string(r.index), fmt(r.lhs, rep.bits), fmt(r.expansion, rep.bits),
               fmt(r.residual, rep.bits), fmt(r.residual_scaled, rep.bits)});
  }
  return t;
}

/// thm2.csv: n, lnZ, S_n.
inline Table thm2_table(const Theorem2Fit& fit) {
  Table t;
  t.meta("table", "thm2");
  t.meta("alpha", fmt(fit.alpha));
  t.meta("bits", std::to_string(fit.bits));
  t.meta("fit_from", std::to_string(fit.fit_from));
  t.meta("lnF", fmt(fit.lnF));
  t.meta("lnG_fit", fmt(fit.lnG));
  t.meta("kappa_fit", fmt(fit.kappa));
  t.meta("C0_fit", fmt(fit.C0));
  t.meta("lnG_reference", fmt(fit.lnG_reference));
  if (fit.increment_slope) t.meta("increment_slope", fmt(*fit.increment_slope));
  t.columns = {"n", "lnZ", "S_n"};
  for (const auto& r : fit.rows) t.add_row({std::to_string(r.n), fmt(r.lnZ, fit.bits), fmt(r.S, fit.bits)});
  return t;
}

}  // namespace sixvertex
