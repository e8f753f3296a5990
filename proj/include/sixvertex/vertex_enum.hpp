#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sixvertex/model.hpp"

namespace sixvertex {

enum class HArrow : std::uint8_t { L, R };
enum class VArrow : std::uint8_t { U, D };

/// Arrows around one vertex.
struct VertexArrows {
  HArrow left;
  HArrow right;
  VArrow top;
  VArrow bottom;
};

/// Arrow pattern of types 1..6 (index 0 unused).
///   1,2: a-vertices, arrows pass straight through in both directions
///   3,4: b-vertices, horizontal and vertical arrows disagree
///   5: both horizontal arrows out, both vertical in; 6: the reverse
inline constexpr std::array<VertexArrows, 7> kVertexTable{{
    {HArrow::L, HArrow::L, VArrow::U, VArrow::U},
    {HArrow::R, HArrow::R, VArrow::U, VArrow::U},
    {HArrow::L, HArrow::L, VArrow::D, VArrow::D},
    {HArrow::R, HArrow::R, VArrow::D, VArrow::D},
    {HArrow::L, HArrow::L, VArrow::U, VArrow::U},
    {HArrow::L, HArrow::R, VArrow::D, VArrow::U},
    {HArrow::R, HArrow::L, VArrow::U, VArrow::D},
}};

inline bool satisfies_ice_rule(const VertexArrows& v) {
  int in = 0;
  in += v.left == HArrow::R;
  in += v.right == HArrow::L;
  in += v.top == VArrow::D;
  in += v.bottom == VArrow::U;
  return in == 2;
}

/// n×n grid of vertex types, row 0 at the top, with type counts N_1..N_6.
struct Configuration {
  int n = 0;
  std::vector<std::uint8_t> states;
  std::array<int, 7> counts{};

  int at(int row, int col) const { return states[static_cast<std::size_t>(row) * n + col]; }
  int n_a() const { return counts[1] + counts[2]; }
  int n_b() const { return counts[3] + counts[4]; }
  int n_c() const { return counts[5] + counts[6]; }
};

/// Throws ConsistencyError unless every vertex obeys the ice rule, shared edges
/// agree, the boundary is domain-wall (out on the left/right, in on top/bottom)
/// and the stored counts match the grid.
inline void validate_configuration(const Configuration& s) {
  if (s.n < 1 || s.states.size() != static_cast<std::size_t>(s.n) * s.n)
    throw ConsistencyError("configuration: grid size does not match n");
  std::array<int, 7> counts{};
  for (int i = 0; i < s.n; ++i) {
    for (int j = 0; j < s.n; ++j) {
      const int t = s.at(i, j);
      if (t < 1 || t > 6) throw ConsistencyError("configuration: vertex type outside 1..6");
      ++counts[t];
      const auto& v = kVertexTable[t];
      if (!satisfies_ice_rule(v)) throw ConsistencyError("configuration: ice rule violated");
      if (j == 0 && v.left != HArrow::L) throw ConsistencyError("configuration: left boundary");
      if (j == s.n - 1 && v.right != HArrow::R) throw ConsistencyError("configuration: right boundary");
      if (i == 0 && v.top != VArrow::D) throw ConsistencyError("configuration: top boundary");
      if (i == s.n - 1 && v.bottom != VArrow::U) throw ConsistencyError("configuration: bottom boundary");
      if (j + 1 < s.n && v.right != kVertexTable[s.at(i, j + 1)].left)
        throw ConsistencyError("configuration: horizontal edge mismatch");
      if (i + 1 < s.n && v.bottom != kVertexTable[s.at(i + 1, j)].top)
        throw ConsistencyError("configuration: vertical edge mismatch");
    }
  }
  if (counts != s.counts) throw ConsistencyError("configuration: stale vertex counts");
}

inline constexpr int kMaxEnumerationSize = 8;

inline void check_enumeration_size(int n) {
  if (n < 1 || n > kMaxEnumerationSize)
    throw SizeError("enumeration supports 1 <= n <= " + std::to_string(kMaxEnumerationSize));
}

namespace detail {

struct Enumerator {
  Configuration cfg;
  std::vector<VArrow> above;  // arrow on the edge above the current cell, per column

  template <class Visit>
  void cell(int idx, HArrow from_left, Visit& visit) {
    const int n = cfg.n;
    if (idx == n * n) {
      visit(static_cast<const Configuration&>(cfg));
      return;
    }
    const int i = idx / n;
    const int j = idx % n;
    const HArrow left = j == 0 ? HArrow::L : from_left;
    const VArrow top = above[j];
    for (int t = 1; t <= 6; ++t) {
      const auto& v = kVertexTable[t];
      if (v.left != left || v.top != top) continue;
      if (j == n - 1 && v.right != HArrow::R) continue;
      if (i == n - 1 && v.bottom != VArrow::U) continue;
      cfg.states[idx] = static_cast<std::uint8_t>(t);
      ++cfg.counts[t];
      above[j] = v.bottom;
      cell(idx + 1, v.right, visit);
      above[j] = top;
      --cfg.counts[t];
    }
  }
};

}  // namespace detail

/// Calls visit(const Configuration&) once per DWBC configuration, depth-first
/// in row-major order. The reference is only valid during the call.
template <class Visit>
void for_each_configuration(int n, Visit&& visit) {
  check_enumeration_size(n);
  detail::Enumerator e;
  e.cfg.n = n;
  e.cfg.states.assign(static_cast<std::size_t>(n) * n, 0);
  e.above.assign(n, VArrow::D);
  e.cell(0, HArrow::L, visit);
}

inline std::vector<Configuration> enumerate_configs(int n) {
  std::vector<Configuration> out;
  for_each_configuration(n, [&](const Configuration& c) { out.push_back(c); });
  return out;
}

/// Number of configurations with given (N_a, N_b); N_c = n² − N_a − N_b.
struct WeightEnumerator {
  int n = 0;
  std::uint64_t config_count = 0;
  std::map<std::pair<int, int>, std::uint64_t> counts;
};

inline WeightEnumerator weight_enumerator(int n) {
  WeightEnumerator we;
  we.n = n;
  for_each_configuration(n, [&](const Configuration& c) {
    ++we.counts[{c.n_a(), c.n_b()}];
    ++we.config_count;
  });
  return we;
}

namespace detail {

template <class W>
W power(const W& x, int e) {
  W r(1);
  for (int i = 0; i < e; ++i) r *= x;
  return r;
}

}  // namespace detail

template <class W>
W configuration_weight(const Configuration& s, const VertexWeights<W>& w) {
  return detail::power(w.a, s.n_a()) * detail::power(w.b, s.n_b()) * detail::power(w.c, s.n_c());
}

template <class W>
W partition_from_enumerator(const WeightEnumerator& we, const VertexWeights<W>& w) {
  W z(0);
  const int nn = we.n * we.n;
  for (const auto& [key, count] : we.counts) {
    const auto [na, nb] = key;
    z += W(static_cast<unsigned long long>(count)) * detail::power(w.a, na) * detail::power(w.b, nb) *
         detail::power(w.c, nn - na - nb);
  }
  return z;
}

template <class W>
struct EnumerationResult {
  int n = 0;
  std::uint64_t config_count = 0;
  W partition_value;
  std::optional<std::vector<W>> per_config_weights;
};

/// Σ_σ a^{N_1+N_2} b^{N_3+N_4} c^{N_5+N_6}; exact for Rational weights.
template <class W>
W partition_brute(int n, const VertexWeights<W>& w) {
  w.validate();
  return partition_from_enumerator(weight_enumerator(n), w);
}

template <class W>
EnumerationResult<W> enumerate_weighted(int n, const VertexWeights<W>& w, bool keep_weights) {
  w.validate();
  EnumerationResult<W> res;
  res.n = n;
  res.partition_value = W(0);
  if (keep_weights) res.per_config_weights.emplace();
  for_each_configuration(n, [&](const Configuration& c) {
    const W x = configuration_weight(c, w);
    res.partition_value += x;
    ++res.config_count;
    if (keep_weights) res.per_config_weights->push_back(x);
  });
  return res;
}

template <class W>
W gibbs_probability(const Configuration& s, const VertexWeights<W>& w) {
  validate_configuration(s);
  return configuration_weight(s, w) / partition_brute(s.n, w);
}

/// c-vertices (type 5) on the diagonal, type 3 above it, type 4 below.
inline Configuration ground_state(int n) {
  if (n < 1) throw SizeError("ground_state: n must be positive");
  Configuration s;
  s.n = n;
  s.states.resize(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const int t = i == j ? 5 : (j > i ? 3 : 4);
      s.states[static_cast<std::size_t>(i) * n + j] = static_cast<std::uint8_t>(t);
      ++s.counts[t];
    }
  }
  return s;
}

/// Type 5 ↦ +1, type 6 ↦ −1, everything else 0.
inline std::vector<std::vector<int>> to_sign_matrix(const Configuration& s) {
  std::vector<std::vector<int>> m(s.n, std::vector<int>(s.n, 0));
  for (int i = 0; i < s.n; ++i)
    for (int j = 0; j < s.n; ++j) m[i][j] = s.at(i, j) == 5 ? 1 : (s.at(i, j) == 6 ? -1 : 0);
  return m;
}

/// A(n) = ∏_{j=0}^{n−1} (3j+1)!/(n+j)!.
inline BigInt asm_count(int n) {
  Rational r(1);
  auto fact = [](int m) {
    BigInt f(1);
    for (int i = 2; i <= m; ++i) f *= i;
    return f;
  };
  for (int j = 0; j < n; ++j) r *= Rational(fact(3 * j + 1), fact(n + j));
  return numerator(r);
}

}  // namespace sixvertex
