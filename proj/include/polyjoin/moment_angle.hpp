#pragma once

// Rational cohomology of the moment-angle complex Z_K from full subcomplexes:
//   H^l(Z_K) = sum over I subset of V of H~^{l - |I| - 1}(K_I),
// with the I-summand in bidegree (-i, 2j), j = |I|, i = j - d - 1 for
// reduced degree d.

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "polyjoin/complex.hpp"
#include "polyjoin/error.hpp"
#include "polyjoin/guardrails.hpp"
#include "polyjoin/homology.hpp"
#include "polyjoin/operations.hpp"

namespace polyjoin {

struct BigradedBettiTable {
  std::size_t m = 0;                                    ///< vertex count of K
  std::map<std::pair<int, int>, std::size_t> entries;  ///< (i, j) -> rank of beta^{-i,2j}, nonzero only
  std::vector<std::size_t> totals;                     ///< rank of H^l(Z_K; Q), up to the last nonzero degree
};

/// Full subcomplex K_I with nonzero reduced homology and the degrees of Z_K it feeds.
struct Summand {
  Simplex subset;
  std::vector<std::size_t> betti;  ///< reduced Q-Betti of K_I, entry d + 1 for degree d
  std::vector<int> degrees;        ///< l = |I| + d + 1 for each nonzero entry
};

namespace detail {

template <VertexMask Mask>
void require_moment_angle_input(const BasicComplex<Mask>& k, const Guardrails& guard) {
  if (k.has_ghosts()) fail("moment-angle tables need a complex without ghost vertices; remove ghosts first");
  if (k.vertex_count() > guard.hochster_vertices) {
    fail(ErrorKind::guardrail, "complex has " + std::to_string(k.vertex_count()) +
                                   " vertices, above the full-subcomplex enumeration bound " +
                                   std::to_string(guard.hochster_vertices));
  }
}

/// Calls f(subset mask over k's indices, K_I) for every I, in order of
/// increasing bit pattern.
template <VertexMask Mask, class F>
void for_each_full_subcomplex(const BasicComplex<Mask>& k, F&& f) {
  const std::size_t m = k.vertex_count();
  const std::uint64_t count = std::uint64_t{1} << m;
  for (std::uint64_t bits = 0; bits < count; ++bits) {
    Mask sel = k.zero();
    std::vector<VertexId> labels;
    for (std::size_t i = 0; i < m; ++i) {
      if ((bits >> i) & 1U) {
        set_bit(sel, i);
        labels.push_back(k.vertices()[i]);
      }
    }
    f(sel, full_subcomplex(k, std::move(labels)));
  }
}

inline void trim_trailing_zeros(std::vector<std::size_t>& v) {
  while (!v.empty() && v.back() == 0) v.pop_back();
}

}  // namespace detail

/// Subsets I with nonzero reduced homology, ordered by size and then
/// lexicographically. Subsets that are faces of K must contribute nothing;
/// a violation throws a divergence error.
template <VertexMask Mask>
std::vector<Summand> summand_report(const BasicComplex<Mask>& k, const Guardrails& guard = {}) {
  detail::require_moment_angle_input(k, guard);
  std::vector<Summand> out;
  detail::for_each_full_subcomplex(k, [&](const Mask& sel, const BasicComplex<Mask>& sub) {
    auto betti = betti_over_field(sub, 0, guard);
    Summand s{sub.vertices(), std::move(betti), {}};
    for (std::size_t e = 0; e < s.betti.size(); ++e) {
      if (s.betti[e] != 0) s.degrees.push_back(static_cast<int>(s.subset.size() + e));
    }
    if (s.degrees.empty()) return;
    if (!is_empty(sel) && k.contains_mask(sel)) {
      fail(ErrorKind::divergence, "face " + to_string(s.subset) + " has nonzero reduced homology");
    }
    out.push_back(std::move(s));
  });
  std::stable_sort(out.begin(), out.end(), [](const Summand& a, const Summand& b) {
    return a.subset.size() != b.subset.size() ? a.subset.size() < b.subset.size() : a.subset < b.subset;
  });
  return out;
}

template <VertexMask Mask>
BigradedBettiTable hochster_bigraded(const BasicComplex<Mask>& k, const Guardrails& guard = {}) {
  BigradedBettiTable table;
  table.m = k.vertex_count();
  for (const auto& s : summand_report(k, guard)) {
    const int j = static_cast<int>(s.subset.size());
    for (std::size_t e = 0; e < s.betti.size(); ++e) {
      if (s.betti[e] == 0) continue;
      const int d = static_cast<int>(e) - 1;
      const auto l = static_cast<std::size_t>(j + d + 1);
      if (table.totals.size() <= l) table.totals.resize(l + 1, 0);
      table.totals[l] += s.betti[e];
      if (j > 0) table.entries[{j - d - 1, j}] += s.betti[e];
    }
  }
  detail::trim_trailing_zeros(table.totals);
  return table;
}

/// Ranks of H^l(Z_K; Q) for l = 0.. the top nonzero degree.
template <VertexMask Mask>
std::vector<std::size_t> total_betti_ZK(const BasicComplex<Mask>& k, const Guardrails& guard = {}) {
  return hochster_bigraded(k, guard).totals;
}

/// Some full subcomplex has torsion in its integral homology.
template <VertexMask Mask>
bool torsion_flag(const BasicComplex<Mask>& k, const Guardrails& guard = {}) {
  detail::require_moment_angle_input(k, guard);
  bool found = false;
  detail::for_each_full_subcomplex(k, [&](const Mask&, const BasicComplex<Mask>& sub) {
    if (found || sub.dimension() < 2) return;  // graphs are torsion-free
    for (const auto& g : homology_Z(sub, guard)) {
      if (!g.torsion.empty()) found = true;
    }
  });
  return found;
}

/// Z_K is 2-connected: no cohomology in degrees 1 and 2.
template <VertexMask Mask>
bool connectivity_check(const BasicComplex<Mask>& k, const Guardrails& guard = {}) {
  const auto t = total_betti_ZK(k, guard);
  return (t.size() <= 1 || t[1] == 0) && (t.size() <= 2 || t[2] == 0);
}

inline std::vector<std::size_t> convolve(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
  if (a.empty() || b.empty()) return {};
  std::vector<std::size_t> out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  detail::trim_trailing_zeros(out);
  return out;
}

/// Z_{K1*K2} = Z_{K1} x Z_{K2}: Poincare polynomials multiply.
template <VertexMask Mask>
bool kunneth_check(const BasicComplex<Mask>& a, const BasicComplex<Mask>& b, const Guardrails& guard = {}) {
  return total_betti_ZK(join(a, b), guard) == convolve(total_betti_ZK(a, guard), total_betti_ZK(b, guard));
}

struct DegreeComparison {
  int degree = 0;
  std::size_t computed = 0;
  std::size_t formula = 0;
  bool match() const { return computed == formula; }
};

struct PolygonReport {
  std::size_t n = 0;
  std::vector<std::size_t> totals;
  bool duality = false;  ///< beta^l = beta^{n+2-l} for all l
  bool ends = false;     ///< beta^0 = beta^{n+2} = 1
  std::vector<DegreeComparison> middle;

  bool formula_matches() const {
    return std::all_of(middle.begin(), middle.end(), [](const DegreeComparison& c) { return c.match(); });
  }
};

inline std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

/// Duality check for Z_{P_n}, plus a comparison of the middle degrees with the
/// connected-sum exponents c_k = (k-2) C(n-1, k-1), 3 <= k <= n-1, where each
/// S^k x S^{n+2-k} summand adds one to degrees k and n+2-k. The comparison is
/// reported, not enforced.
inline PolygonReport polygon_connected_sum_check(std::size_t n, const Guardrails& guard = {}) {
  if (n < 5 || n > 12) fail("polygon check needs 5 <= n <= 12, got " + std::to_string(n));
  PolygonReport rep;
  rep.n = n;
  rep.totals = total_betti_ZK(polygon(n), guard);
  auto beta = [&](std::size_t l) -> std::size_t { return l < rep.totals.size() ? rep.totals[l] : 0; };
  rep.duality = true;
  for (std::size_t l = 0; l <= n + 2; ++l) rep.duality = rep.duality && beta(l) == beta(n + 2 - l);
  rep.duality = rep.duality && rep.totals.size() <= n + 3;
  rep.ends = beta(0) == 1 && beta(n + 2) == 1;
  const auto c = [n](std::size_t k) -> std::size_t {
    return (k >= 3 && k + 1 <= n) ? (k - 2) * binomial(n - 1, k - 1) : 0;
  };
  for (std::size_t l = 3; l + 1 <= n; ++l) {
    rep.middle.push_back({static_cast<int>(l), beta(l), c(l) + c(n + 2 - l)});
  }
  return rep;
}

}  // namespace polyjoin
