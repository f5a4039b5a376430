#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "polyjoin/complex.hpp"
#include "polyjoin/error.hpp"
#include "polyjoin/guardrails.hpp"
#include "polyjoin/operations.hpp"

namespace polyjoin {

/// (K_i, L_i): L is a subcomplex of K regarded on the vertex set of K.
template <VertexMask Mask>
struct ComplexPair {
  BasicComplex<Mask> K;
  BasicComplex<Mask> L;
};

/// Origin of a flattened vertex: outer vertex of M and inner vertex of K_i.
struct Provenance {
  VertexId outer = 0;
  VertexId inner = 0;

  friend bool operator==(const Provenance&, const Provenance&) = default;
};

/**
 * Input of a polyhedral join product: an outer complex M and one pair per
 * vertex of M, in increasing vertex order.
 *
 * Inner vertices are flattened to fresh labels through a layout: part i's
 * j-th inner vertex (in increasing order) gets layout[i][j]. The default
 * layout numbers parts consecutively from 1, ordered by outer vertex and then
 * by inner vertex; for inner vertex sets {1..k_i} this is offset(i) + v.
 * Sub-specs produced by `restricted_to` keep their parent's labels so that
 * complexes built from related specs live on compatible vertex sets.
 */
template <VertexMask Mask>
class PjpSpec {
 public:
  PjpSpec(BasicComplex<Mask> outer, std::vector<ComplexPair<Mask>> pairs)
      : outer_(std::move(outer)), pairs_(std::move(pairs)) {
    VertexId next = 1;
    for (const auto& p : pairs_) {
      std::vector<VertexId> labels;
      for (std::size_t j = 0; j < p.K.vertex_count(); ++j) labels.push_back(next++);
      layout_.push_back(std::move(labels));
    }
    validate();
  }

  PjpSpec(BasicComplex<Mask> outer, std::vector<ComplexPair<Mask>> pairs, std::vector<std::vector<VertexId>> layout)
      : outer_(std::move(outer)), pairs_(std::move(pairs)), layout_(std::move(layout)) {
    validate();
  }

  const BasicComplex<Mask>& outer() const noexcept { return outer_; }
  const std::vector<ComplexPair<Mask>>& pairs() const noexcept { return pairs_; }
  const std::vector<std::vector<VertexId>>& layout() const noexcept { return layout_; }
  std::size_t part_count() const noexcept { return pairs_.size(); }

  std::size_t part_index(VertexId outer_vertex) const { return outer_.require_index(outer_vertex); }

  /// Sorted union of all flattened labels.
  std::vector<VertexId> flat_vertices() const {
    std::vector<VertexId> out;
    for (const auto& labels : layout_) out.insert(out.end(), labels.begin(), labels.end());
    std::sort(out.begin(), out.end());
    return out;
  }

  std::map<VertexId, Provenance> provenance() const {
    std::map<VertexId, Provenance> out;
    for (std::size_t i = 0; i < pairs_.size(); ++i) {
      for (std::size_t j = 0; j < layout_[i].size(); ++j) {
        out[layout_[i][j]] = Provenance{outer_.vertices()[i], pairs_[i].K.vertices()[j]};
      }
    }
    return out;
  }

  std::map<VertexId, VertexId> label_map(std::size_t part) const {
    std::map<VertexId, VertexId> out;
    const auto& inner = pairs_[part].K.vertices();
    for (std::size_t j = 0; j < inner.size(); ++j) out[inner[j]] = layout_[part][j];
    return out;
  }

  BasicComplex<Mask> flat_K(std::size_t part) const { return relabel(pairs_[part].K, label_map(part)); }
  BasicComplex<Mask> flat_L(std::size_t part) const { return relabel(pairs_[part].L, label_map(part)); }

  /// Same pairs and labels over a new outer complex whose vertex set is a
  /// subset of the current one.
  PjpSpec restricted_to(BasicComplex<Mask> new_outer) const {
    std::vector<ComplexPair<Mask>> pairs;
    std::vector<std::vector<VertexId>> layout;
    for (VertexId v : new_outer.vertices()) {
      const auto i = outer_.index_of(v);
      if (!i) fail("restricted outer complex uses vertex " + std::to_string(v) + " outside M");
      pairs.push_back(pairs_[*i]);
      layout.push_back(layout_[*i]);
    }
    return PjpSpec(std::move(new_outer), std::move(pairs), std::move(layout));
  }

  /// Replaces the pair at outer vertex v, with explicit labels for its vertices.
  PjpSpec with_pair(VertexId v, ComplexPair<Mask> pair, std::vector<VertexId> labels) const {
    auto pairs = pairs_;
    auto layout = layout_;
    const std::size_t i = part_index(v);
    pairs[i] = std::move(pair);
    layout[i] = std::move(labels);
    return PjpSpec(outer_, std::move(pairs), std::move(layout));
  }

 private:
  void validate() const {
    if (pairs_.size() != outer_.vertex_count()) {
      fail("pairs: expected " + std::to_string(outer_.vertex_count()) + " pairs (one per vertex of M), got " +
           std::to_string(pairs_.size()));
    }
    if (layout_.size() != pairs_.size()) fail("layout: one label list per pair required");
    for (std::size_t i = 0; i < pairs_.size(); ++i) {
      const std::string where =
          "pairs[" + std::to_string(i) + "] (outer vertex " + std::to_string(outer_.vertices()[i]) + "): ";
      const auto& p = pairs_[i];
      if (p.L.vertices() != p.K.vertices()) fail(where + "L must be on the vertex set of K");
      if (!is_subcomplex(p.L, p.K)) fail(where + "L is not a subcomplex of K");
      if (layout_[i].size() != p.K.vertex_count()) fail(where + "layout size differs from |vertex_set(K)|");
    }
    auto flat = flat_vertices();
    if (std::adjacent_find(flat.begin(), flat.end()) != flat.end()) fail("layout: flattened labels collide");
  }

  BasicComplex<Mask> outer_;
  std::vector<ComplexPair<Mask>> pairs_;
  std::vector<std::vector<VertexId>> layout_;
};

namespace detail {

template <VertexMask Mask>
void check_construction_size(std::size_t vertices, const Guardrails& guard) {
  if (vertices > guard.construction_vertices) {
    fail(ErrorKind::guardrail, "construction has " + std::to_string(vertices) + " flattened vertices, above the bound " +
                                   std::to_string(guard.construction_vertices));
  }
  if (vertices > MaskTraits<Mask>::max_width) {
    fail(ErrorKind::guardrail, "construction has more vertices than the word encoding holds");
  }
}

}  // namespace detail

/// (K,L)^{*M}: union over facets sigma of M of the join of K_i (i in sigma)
/// and L_i (i not in sigma). Facets of each join are unions of one facet per
/// factor; the union over sigma is re-maximalized.
template <VertexMask Mask>
BasicComplex<Mask> polyhedral_join(const PjpSpec<Mask>& spec, const Guardrails& guard = {}) {
  auto flat = spec.flat_vertices();
  detail::check_construction_size<Mask>(flat.size(), guard);
  const Mask zero = MaskTraits<Mask>::zero(flat.size());

  const std::size_t m = spec.part_count();
  std::vector<std::vector<Mask>> k_facets(m);
  std::vector<std::vector<Mask>> l_facets(m);
  for (std::size_t i = 0; i < m; ++i) {
    const auto& pair = spec.pairs()[i];
    std::vector<std::size_t> target;
    for (VertexId label : spec.layout()[i]) {
      target.push_back(static_cast<std::size_t>(std::lower_bound(flat.begin(), flat.end(), label) - flat.begin()));
    }
    for (const auto& f : pair.K.facet_masks()) k_facets[i].push_back(detail::remap(f, target, zero));
    for (const auto& f : pair.L.facet_masks()) l_facets[i].push_back(detail::remap(f, target, zero));
  }

  std::vector<Mask> result;
  for (const auto& sigma : spec.outer().facet_masks()) {
    std::vector<Mask> partial{zero};
    for (std::size_t i = 0; i < m; ++i) {
      const auto& choices = test_bit(sigma, i) ? k_facets[i] : l_facets[i];
      std::vector<Mask> next;
      next.reserve(partial.size() * choices.size());
      for (const auto& a : partial) {
        for (const auto& c : choices) next.push_back(a | c);
      }
      partial = std::move(next);
    }
    result.insert(result.end(), partial.begin(), partial.end());
  }
  return BasicComplex<Mask>::from_masks(std::move(flat), std::move(result));
}

/// Stages M(0) = M, ..., M(m) of the sequential construction. Outer vertices
/// not yet expanded carry placeholder labels above every flattened label.
template <VertexMask Mask>
struct SequentialTrace {
  std::vector<BasicComplex<Mask>> stages;
  std::vector<VertexId> placeholders;  ///< label of outer vertex i before stage i+1
};

/**
 * Builds the product one outer vertex at a time: with p the placeholder of
 * the next outer vertex,
 *   M(i+1) = (M(i) \ p) * L  union  lk_{M(i)}(p) * K,
 * glued along lk_{M(i)}(p) * L. A ghost placeholder has a void link and
 * contributes (M(i) \ p) * L alone. The final stage is checked against the
 * direct construction and a mismatch throws a divergence error.
 */
template <VertexMask Mask>
SequentialTrace<Mask> sequential_pjp(const PjpSpec<Mask>& spec, const Guardrails& guard = {}) {
  const auto flat = spec.flat_vertices();
  detail::check_construction_size<Mask>(flat.size(), guard);
  const VertexId base = flat.empty() ? 0 : flat.back();

  SequentialTrace<Mask> trace;
  std::map<VertexId, VertexId> to_placeholder;
  for (std::size_t i = 0; i < spec.part_count(); ++i) {
    trace.placeholders.push_back(base + 1 + static_cast<VertexId>(i));
    to_placeholder[spec.outer().vertices()[i]] = trace.placeholders.back();
  }
  trace.stages.push_back(relabel(spec.outer(), to_placeholder));

  for (std::size_t i = 0; i < spec.part_count(); ++i) {
    const auto& current = trace.stages.back();
    const VertexId p = trace.placeholders[i];
    const bool ghost = !test_bit(current.support(), current.require_index(p));
    auto outside = join(deletion(current, p), spec.flat_L(i));
    if (ghost) {
      trace.stages.push_back(std::move(outside));
    } else {
      auto inside = join(link(current, p), spec.flat_K(i));
      trace.stages.push_back(union_same_vertexset(outside, inside));
    }
  }

  if (!(trace.stages.back() == polyhedral_join(spec, guard))) {
    fail(ErrorKind::divergence, "sequential/direct divergence");
  }
  return trace;
}

// ---- derived constructors ----------------------------------------------------

/// K(K_1, ..., K_m): pairs (K_i, empty complex on vertex_set(K_i)).
template <VertexMask Mask>
PjpSpec<Mask> substitution_spec(const BasicComplex<Mask>& outer, const std::vector<BasicComplex<Mask>>& parts) {
  if (parts.size() != outer.vertex_count()) {
    fail("substitution: expected " + std::to_string(outer.vertex_count()) + " parts, got " +
         std::to_string(parts.size()));
  }
  std::vector<ComplexPair<Mask>> pairs;
  for (const auto& k : parts) pairs.push_back({k, empty_complex<Mask>(k.vertices())});
  return PjpSpec<Mask>(outer, std::move(pairs));
}

/// K<K_1, ..., K_m>: pairs (full simplex on vertex_set(K_i), K_i).
template <VertexMask Mask>
PjpSpec<Mask> composition_spec(const BasicComplex<Mask>& outer, const std::vector<BasicComplex<Mask>>& parts) {
  if (parts.size() != outer.vertex_count()) {
    fail("composition: expected " + std::to_string(outer.vertex_count()) + " parts, got " +
         std::to_string(parts.size()));
  }
  std::vector<ComplexPair<Mask>> pairs;
  for (const auto& k : parts) pairs.push_back({simplex_on<Mask>(k.vertices()), k});
  return PjpSpec<Mask>(outer, std::move(pairs));
}

template <VertexMask Mask>
BasicComplex<Mask> substitution(const BasicComplex<Mask>& outer, const std::vector<BasicComplex<Mask>>& parts,
                                const Guardrails& guard = {}) {
  return polyhedral_join(substitution_spec(outer, parts), guard);
}

template <VertexMask Mask>
BasicComplex<Mask> composition(const BasicComplex<Mask>& outer, const std::vector<BasicComplex<Mask>>& parts,
                               const Guardrails& guard = {}) {
  return polyhedral_join(composition_spec(outer, parts), guard);
}

/// Every L_i is the empty complex.
template <VertexMask Mask>
bool is_substitution(const PjpSpec<Mask>& spec) {
  return std::all_of(spec.pairs().begin(), spec.pairs().end(),
                     [](const ComplexPair<Mask>& p) { return p.L.is_empty_complex(); });
}

/// Every K_i is the full simplex on its vertex set.
template <VertexMask Mask>
bool is_composition(const PjpSpec<Mask>& spec) {
  return std::all_of(spec.pairs().begin(), spec.pairs().end(), [](const ComplexPair<Mask>& p) {
    return p.K.facet_masks().size() == 1 && popcount(p.K.facet_masks().front()) == p.K.vertex_count();
  });
}

// ---- identities ---------------------------------------------------------------

/// (K,L)^{*(M \ i)} with the remaining parts keeping their labels.
template <VertexMask Mask>
BasicComplex<Mask> pjp_delete(const PjpSpec<Mask>& spec, VertexId i, const Guardrails& guard = {}) {
  return polyhedral_join(spec.restricted_to(deletion(spec.outer(), i)), guard);
}

/// (K,L)^{*lk_M(i)}, lk_M(i) regarded on vertex_set(M) \ {i}.
template <VertexMask Mask>
BasicComplex<Mask> pjp_link(const PjpSpec<Mask>& spec, VertexId i, const Guardrails& guard = {}) {
  return polyhedral_join(spec.restricted_to(link(spec.outer(), i)), guard);
}

/// The comparison spec (P,Q): pair i replaced by ({i}, empty). The single new
/// vertex takes the first label of part i (or a fresh one if K_i has none).
template <VertexMask Mask>
std::pair<PjpSpec<Mask>, VertexId> point_replacement(const PjpSpec<Mask>& spec, VertexId i) {
  const std::size_t part = spec.part_index(i);
  const auto flat = spec.flat_vertices();
  const VertexId label =
      spec.layout()[part].empty() ? (flat.empty() ? 1 : flat.back() + 1) : spec.layout()[part].front();
  ComplexPair<Mask> point{BasicComplex<Mask>({i}, {{i}}), empty_complex<Mask>({i})};
  return {spec.with_pair(i, std::move(point), {label}), label};
}

struct DeleteEqOutcome {
  bool deletion = false;        ///< (K,L)^{*M\i} == (P,Q)^{*M} \ i
  std::optional<bool> link;     ///< (K,L)^{*lk_M(i)} == lk_{(P,Q)^{*M}}(i); unset when i is a ghost of M

  bool holds() const { return deletion && link.value_or(true); }
};

template <VertexMask Mask>
DeleteEqOutcome deleteeq_check(const PjpSpec<Mask>& spec, VertexId i, const Guardrails& guard = {}) {
  const auto [replaced, label] = point_replacement(spec, i);
  const auto big = polyhedral_join(replaced, guard);
  DeleteEqOutcome out;
  out.deletion = deletion(big, label) == pjp_delete(spec, i, guard);
  const bool ghost = !test_bit(spec.outer().support(), spec.part_index(i));
  if (!ghost) out.link = link(big, label) == pjp_link(spec, i, guard);
  return out;
}

/// For a ghost vertex i of M: (K,L)^{*M} == (K,L)^{*(M without i)} * L_i.
template <VertexMask Mask>
bool ghost_extension_check(const PjpSpec<Mask>& spec, VertexId i, const Guardrails& guard = {}) {
  const std::size_t part = spec.part_index(i);
  if (test_bit(spec.outer().support(), part)) fail("vertex " + std::to_string(i) + " is not a ghost of M");
  const auto lhs = polyhedral_join(spec, guard);
  const auto rhs = join(polyhedral_join(spec.restricted_to(deletion(spec.outer(), i)), guard), spec.flat_L(part));
  return lhs == rhs;
}

/// Given M = M_A u M_B with N = M_A n M_B (all regarded on vertex_set(M)),
/// checks that the products over M_A and M_B cover the product over M and meet
/// in the product over N.
template <VertexMask Mask>
bool pjp_pushout_check(const PjpSpec<Mask>& spec, const BasicComplex<Mask>& m_a, const BasicComplex<Mask>& m_b,
                       const BasicComplex<Mask>& n, const Guardrails& guard = {}) {
  const auto& vs = spec.outer().vertices();
  const auto a = with_vertex_set(m_a, vs);
  const auto b = with_vertex_set(m_b, vs);
  const auto nn = with_vertex_set(n, vs);
  if (!(union_same_vertexset(a, b) == spec.outer())) fail("pushout precondition violated: M_A u M_B != M");
  if (!(intersection_same_vertexset(a, b) == nn)) fail("pushout precondition violated: M_A n M_B != N");
  const auto pa = polyhedral_join(spec.restricted_to(a), guard);
  const auto pb = polyhedral_join(spec.restricted_to(b), guard);
  const auto pm = polyhedral_join(spec, guard);
  const auto pn = polyhedral_join(spec.restricted_to(nn), guard);
  return union_same_vertexset(pa, pb) == pm && intersection_same_vertexset(pa, pb) == pn;
}

/// The star/deletion square at a non-ghost vertex i: the corners
/// P(lk)*K_i and P(M\i)*L_i cover P(M) and meet in P(lk)*L_i.
template <VertexMask Mask>
bool star_cover_check(const PjpSpec<Mask>& spec, VertexId i, const Guardrails& guard = {}) {
  const std::size_t part = spec.part_index(i);
  const auto lk = pjp_link(spec, i, guard);
  const auto del = pjp_delete(spec, i, guard);
  const auto k = spec.flat_K(part);
  const auto l = spec.flat_L(part);
  const auto with_k = join(lk, k);
  const auto del_l = join(del, l);
  return union_same_vertexset(with_k, del_l) == polyhedral_join(spec, guard) &&
         intersection_same_vertexset(with_k, del_l) == join(lk, l);
}

/// (K,L)^{*(M*N)} == (K,L)^{*M} * (K,L)^{*N}. Both inputs are relabeled
/// through the combined spec's layout so the two sides share vertex labels.
template <VertexMask Mask>
bool pjp_join_check(const PjpSpec<Mask>& spec_m, const PjpSpec<Mask>& spec_n, const Guardrails& guard = {}) {
  const auto outer = join(spec_m.outer(), spec_n.outer());
  std::vector<ComplexPair<Mask>> pairs;
  for (VertexId v : outer.vertices()) {
    pairs.push_back(spec_m.outer().has_vertex(v) ? spec_m.pairs()[spec_m.part_index(v)]
                                                 : spec_n.pairs()[spec_n.part_index(v)]);
  }
  const PjpSpec<Mask> combined(outer, std::move(pairs));
  const auto lhs = polyhedral_join(combined, guard);
  const auto rhs = join(polyhedral_join(combined.restricted_to(spec_m.outer()), guard),
                        polyhedral_join(combined.restricted_to(spec_n.outer()), guard));
  return lhs == rhs;
}

/// For N a subcomplex of M (vertex set a subset of M's): the product over N is
/// a subcomplex of the product over M, and when N is the full subcomplex on
/// its vertex set it is the full subcomplex on N's flattened labels.
template <VertexMask Mask>
bool pjp_subcomplex_check(const PjpSpec<Mask>& spec, const BasicComplex<Mask>& n, const Guardrails& guard = {}) {
  if (!is_subcomplex(n, spec.outer())) fail("N is not a subcomplex of M");
  const auto sub_spec = spec.restricted_to(n);
  const auto pn = polyhedral_join(sub_spec, guard);
  const auto pm = polyhedral_join(spec, guard);
  if (!is_subcomplex(pn, pm)) return false;
  if (full_subcomplex(spec.outer(), n.vertices()) == n) {
    return full_subcomplex(pm, sub_spec.flat_vertices()) == pn;
  }
  return true;
}

/// In a substitution complex, the full subcomplex on part i's labels is K_i.
template <VertexMask Mask>
bool substitution_part_check(const PjpSpec<Mask>& spec, std::size_t part, const Guardrails& guard = {}) {
  const auto built = polyhedral_join(spec, guard);
  return full_subcomplex(built, spec.layout()[part]) == spec.flat_K(part);
}

/// In a substitution complex, choosing one non-ghost vertex per part
/// (`choice[i]` is an inner label of K_i), the full subcomplex on the chosen
/// flattened vertices is a copy of M via i -> v_i. Returns that bijection when
/// it is a simplicial isomorphism, nullopt otherwise.
template <VertexMask Mask>
std::optional<VertexBijection> substitution_copy_check(const PjpSpec<Mask>& spec, const std::vector<VertexId>& choice,
                                                       const Guardrails& guard = {}) {
  if (choice.size() != spec.part_count()) fail("one chosen vertex per part required");
  const auto built = polyhedral_join(spec, guard);
  VertexBijection to_flat;
  std::vector<VertexId> chosen;
  for (std::size_t i = 0; i < spec.part_count(); ++i) {
    const auto labels = spec.label_map(i);
    const auto it = labels.find(choice[i]);
    if (it == labels.end()) fail("chosen vertex " + std::to_string(choice[i]) + " is not in part " + std::to_string(i));
    to_flat[spec.outer().vertices()[i]] = it->second;
    chosen.push_back(it->second);
  }
  if (full_subcomplex(built, chosen) == relabel(spec.outer(), to_flat)) return to_flat;
  return std::nullopt;
}

}  // namespace polyjoin
