#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "polyjoin/error.hpp"
#include "polyjoin/mask.hpp"

namespace polyjoin {

using VertexId = std::uint32_t;

/// A simplex as a strictly increasing list of vertex labels. The empty list is
/// the empty simplex.
using Simplex = std::vector<VertexId>;

/// Sorts and validates a vertex list; duplicates are rejected.
inline Simplex make_simplex(std::vector<VertexId> vertices) {
  std::sort(vertices.begin(), vertices.end());
  if (std::adjacent_find(vertices.begin(), vertices.end()) != vertices.end()) {
    fail("simplex has a repeated vertex");
  }
  return vertices;
}

inline std::string to_string(const Simplex& s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i != 0) out += ",";
    out += std::to_string(s[i]);
  }
  return out + "}";
}

/// Keeps the inclusion-maximal masks, deduplicated, in lexicographic order.
template <VertexMask Mask>
std::vector<Mask> maximalize(std::vector<Mask> masks) {
  std::sort(masks.begin(), masks.end(), [](const Mask& a, const Mask& b) {
    const std::size_t pa = popcount(a);
    const std::size_t pb = popcount(b);
    return pa != pb ? pa > pb : lex_less(a, b);
  });
  masks.erase(std::unique(masks.begin(), masks.end()), masks.end());
  std::vector<Mask> kept;
  kept.reserve(masks.size());
  for (auto& m : masks) {
    const bool dominated =
        std::any_of(kept.begin(), kept.end(), [&](const Mask& k) { return is_subset(m, k); });
    if (!dominated) kept.push_back(std::move(m));
  }
  std::sort(kept.begin(), kept.end(), [](const Mask& a, const Mask& b) { return lex_less(a, b); });
  return kept;
}

/**
 * Finite abstract simplicial complex on an explicit vertex set, stored by its
 * facets. Vertex labels map to mask indices in increasing order, so index
 * order and label order agree and masks compare lexicographically exactly as
 * the label lists they encode.
 *
 * Ghost vertices (members of the vertex set lying in no face) are kept. The
 * empty complex on V has the single facet {} and every vertex of V a ghost.
 * Values are immutable after construction.
 */
template <VertexMask Mask = WordMask>
class BasicComplex {
 public:
  using mask_type = Mask;

  /// The empty complex on no vertices.
  BasicComplex() : facets_{MaskTraits<Mask>::zero(0)} {}

  BasicComplex(std::vector<VertexId> vertices, const std::vector<Simplex>& facets)
      : vertices_(std::move(vertices)) {
    std::sort(vertices_.begin(), vertices_.end());
    if (std::adjacent_find(vertices_.begin(), vertices_.end()) != vertices_.end()) {
      fail("vertex set has a repeated label");
    }
    check_width();
    std::vector<Mask> masks;
    masks.reserve(facets.size() + 1);
    for (const auto& f : facets) masks.push_back(mask_of(make_simplex(f)));
    if (masks.empty()) masks.push_back(zero());
    facets_ = maximalize(std::move(masks));
  }

  /// Builds from masks over `vertices` (sorted, distinct); re-maximalizes.
  static BasicComplex from_masks(std::vector<VertexId> vertices, std::vector<Mask> masks) {
    BasicComplex k;
    k.vertices_ = std::move(vertices);
    k.check_width();
    if (masks.empty()) masks.push_back(k.zero());
    k.facets_ = maximalize(std::move(masks));
    return k;
  }

  /// Vertex set taken from the facets themselves (no ghosts).
  static BasicComplex from_facets(const std::vector<Simplex>& facets) {
    std::vector<VertexId> vs;
    for (const auto& f : facets) vs.insert(vs.end(), f.begin(), f.end());
    std::sort(vs.begin(), vs.end());
    vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
    return BasicComplex(std::move(vs), facets);
  }

  const std::vector<VertexId>& vertices() const noexcept { return vertices_; }
  std::size_t vertex_count() const noexcept { return vertices_.size(); }
  const std::vector<Mask>& facet_masks() const noexcept { return facets_; }

  std::vector<Simplex> facets() const {
    std::vector<Simplex> out;
    out.reserve(facets_.size());
    for (const auto& f : facets_) out.push_back(simplex_of(f));
    return out;
  }

  /// -1 for the empty complex.
  int dimension() const {
    std::size_t best = 0;
    for (const auto& f : facets_) best = std::max(best, popcount(f));
    return static_cast<int>(best) - 1;
  }

  bool is_empty_complex() const { return facets_.size() == 1 && is_empty(facets_.front()); }

  std::optional<std::size_t> index_of(VertexId v) const {
    const auto it = std::lower_bound(vertices_.begin(), vertices_.end(), v);
    if (it == vertices_.end() || *it != v) return std::nullopt;
    return static_cast<std::size_t>(it - vertices_.begin());
  }

  bool has_vertex(VertexId v) const { return index_of(v).has_value(); }

  std::size_t require_index(VertexId v) const {
    const auto i = index_of(v);
    if (!i) fail("unknown vertex " + std::to_string(v));
    return *i;
  }

  Mask zero() const { return MaskTraits<Mask>::zero(vertices_.size()); }

  Mask full_mask() const {
    Mask m = zero();
    for (std::size_t i = 0; i < vertices_.size(); ++i) set_bit(m, i);
    return m;
  }

  /// Mask of a sorted simplex; throws if a vertex is outside the vertex set.
  Mask mask_of(const Simplex& s) const {
    Mask m = zero();
    for (VertexId v : s) {
      const auto i = index_of(v);
      if (!i) fail("simplex " + to_string(s) + " uses vertex " + std::to_string(v) + " outside the vertex set");
      set_bit(m, *i);
    }
    return m;
  }

  Simplex simplex_of(const Mask& m) const {
    Simplex s;
    s.reserve(popcount(m));
    for_each_bit(m, [&](std::size_t i) { s.push_back(vertices_[i]); });
    return s;
  }

  bool contains_mask(const Mask& m) const {
    return std::any_of(facets_.begin(), facets_.end(), [&](const Mask& f) { return is_subset(m, f); });
  }

  /// True iff s is a face; vertices outside the vertex set give false.
  bool contains(const Simplex& s) const {
    Mask m = zero();
    for (VertexId v : s) {
      const auto i = index_of(v);
      if (!i) return false;
      set_bit(m, *i);
    }
    return contains_mask(m);
  }

  /// Union of all facets: the vertices that are not ghosts.
  Mask support() const {
    Mask m = zero();
    for (const auto& f : facets_) m = m | f;
    return m;
  }

  std::vector<VertexId> ghost_vertices() const {
    const Mask used = support();
    std::vector<VertexId> out;
    for (std::size_t i = 0; i < vertices_.size(); ++i) {
      if (!test_bit(used, i)) out.push_back(vertices_[i]);
    }
    return out;
  }

  bool has_ghosts() const { return popcount(support()) != vertices_.size(); }

  friend bool operator==(const BasicComplex& a, const BasicComplex& b) {
    return a.vertices_ == b.vertices_ && a.facets_ == b.facets_;
  }

 private:
  void check_width() const {
    if (vertices_.size() > MaskTraits<Mask>::max_width) {
      fail(ErrorKind::guardrail, "complex has " + std::to_string(vertices_.size()) +
                                     " vertices, more than the word encoding holds");
    }
  }

  std::vector<VertexId> vertices_;
  std::vector<Mask> facets_;
};

using SimplicialComplex = BasicComplex<WordMask>;
using LargeComplex = BasicComplex<DenseMask>;

}  // namespace polyjoin
