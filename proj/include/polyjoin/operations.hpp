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
#include "polyjoin/mask.hpp"

namespace polyjoin {

// ---- face enumeration --------------------------------------------------------

namespace detail {

template <VertexMask Mask, class F>
void for_each_combination(const std::vector<std::size_t>& idx, std::size_t r, const Mask& zero, F&& f) {
  const std::size_t n = idx.size();
  if (r > n) return;
  std::vector<std::size_t> pos(r);
  for (std::size_t i = 0; i < r; ++i) pos[i] = i;
  while (true) {
    Mask m = zero;
    for (std::size_t p : pos) set_bit(m, idx[p]);
    f(m);
    std::size_t i = r;
    while (i > 0 && pos[i - 1] == n - r + (i - 1)) --i;
    if (i == 0) return;
    ++pos[i - 1];
    for (std::size_t j = i; j < r; ++j) pos[j] = pos[j - 1] + 1;
  }
}

template <VertexMask Mask>
void sort_lex_unique(std::vector<Mask>& masks) {
  std::sort(masks.begin(), masks.end(), [](const Mask& a, const Mask& b) { return lex_less(a, b); });
  masks.erase(std::unique(masks.begin(), masks.end()), masks.end());
}

/// Maps index i of `m` to index `target[i]` inside a mask of the given zero.
template <VertexMask Mask>
Mask remap(const Mask& m, const std::vector<std::size_t>& target, const Mask& zero) {
  Mask out = zero;
  for_each_bit(m, [&](std::size_t i) { set_bit(out, target[i]); });
  return out;
}

/// Index of each vertex of `from` inside `to`; every vertex must be present.
template <VertexMask Mask>
std::vector<std::size_t> index_map(const BasicComplex<Mask>& from, const std::vector<VertexId>& to) {
  std::vector<std::size_t> out;
  out.reserve(from.vertex_count());
  for (VertexId v : from.vertices()) {
    const auto it = std::lower_bound(to.begin(), to.end(), v);
    if (it == to.end() || *it != v) fail("vertex " + std::to_string(v) + " missing from target vertex set");
    out.push_back(static_cast<std::size_t>(it - to.begin()));
  }
  return out;
}

inline std::vector<VertexId> sorted_unique(std::vector<VertexId> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

}  // namespace detail

/// Faces of dimension `dim` (all faces, including {}, when nullopt), each once,
/// lexicographically ordered.
template <VertexMask Mask>
std::vector<Mask> face_masks(const BasicComplex<Mask>& k, std::optional<int> dim = std::nullopt) {
  std::vector<Mask> out;
  const Mask zero = k.zero();
  for (const auto& f : k.facet_masks()) {
    const auto idx = bit_indices(f);
    if (dim) {
      if (*dim < -1) continue;
      detail::for_each_combination(idx, static_cast<std::size_t>(*dim + 1), zero,
                                   [&](const Mask& m) { out.push_back(m); });
    } else {
      if (idx.size() > 40) fail(ErrorKind::guardrail, "facet too large to enumerate its faces");
      const std::uint64_t count = std::uint64_t{1} << idx.size();
      for (std::uint64_t sub = 0; sub < count; ++sub) {
        Mask m = zero;
        for (std::size_t b = 0; b < idx.size(); ++b) {
          if ((sub >> b) & 1U) set_bit(m, idx[b]);
        }
        out.push_back(std::move(m));
      }
    }
  }
  detail::sort_lex_unique(out);
  return out;
}

template <VertexMask Mask>
std::vector<Simplex> faces(const BasicComplex<Mask>& k, std::optional<int> dim = std::nullopt) {
  std::vector<Simplex> out;
  for (const auto& m : face_masks(k, dim)) out.push_back(k.simplex_of(m));
  return out;
}

/// Face counts f_{-1}, f_0, ..., f_{dim}.
template <VertexMask Mask>
std::vector<std::size_t> f_vector(const BasicComplex<Mask>& k) {
  std::vector<std::size_t> out(static_cast<std::size_t>(k.dimension() + 2), 0);
  for (const auto& m : face_masks(k)) ++out[popcount(m)];
  return out;
}

/// Unreduced Euler characteristic over nonempty faces.
template <VertexMask Mask>
long long euler_characteristic(const BasicComplex<Mask>& k) {
  const auto f = f_vector(k);
  long long chi = 0;
  for (std::size_t size = 1; size < f.size(); ++size) {
    chi += (size % 2 == 1 ? 1 : -1) * static_cast<long long>(f[size]);
  }
  return chi;
}

// ---- constructions -----------------------------------------------------------

template <VertexMask Mask = WordMask>
BasicComplex<Mask> empty_complex(std::vector<VertexId> vertices = {}) {
  return BasicComplex<Mask>(std::move(vertices), {});
}

/// Full simplex on {1..n}.
template <VertexMask Mask = WordMask>
BasicComplex<Mask> simplex_complex(std::size_t n) {
  std::vector<VertexId> vs(n);
  for (std::size_t i = 0; i < n; ++i) vs[i] = static_cast<VertexId>(i + 1);
  return BasicComplex<Mask>(vs, {vs});
}

/// Full simplex on an arbitrary vertex set.
template <VertexMask Mask = WordMask>
BasicComplex<Mask> simplex_on(const std::vector<VertexId>& vertices) {
  const auto vs = detail::sorted_unique(vertices);
  return BasicComplex<Mask>(vs, {vs});
}

/// Boundary of the (n-1)-simplex on {1..n}.
template <VertexMask Mask = WordMask>
BasicComplex<Mask> boundary_simplex(std::size_t n) {
  if (n == 0) fail("boundary_simplex needs n >= 1");
  std::vector<VertexId> vs(n);
  for (std::size_t i = 0; i < n; ++i) vs[i] = static_cast<VertexId>(i + 1);
  std::vector<Simplex> facets;
  for (std::size_t skip = 0; skip < n; ++skip) {
    Simplex f;
    for (std::size_t i = 0; i < n; ++i) {
      if (i != skip) f.push_back(vs[i]);
    }
    facets.push_back(std::move(f));
  }
  return BasicComplex<Mask>(vs, facets);
}

/// Boundary of the n-gon: edges {i, i+1} cyclically on {1..n}.
template <VertexMask Mask = WordMask>
BasicComplex<Mask> polygon(std::size_t n) {
  if (n < 3) fail("polygon needs n >= 3");
  std::vector<VertexId> vs(n);
  std::vector<Simplex> facets;
  for (std::size_t i = 0; i < n; ++i) {
    vs[i] = static_cast<VertexId>(i + 1);
    facets.push_back(make_simplex({static_cast<VertexId>(i + 1), static_cast<VertexId>((i + 1) % n + 1)}));
  }
  return BasicComplex<Mask>(vs, facets);
}

/// Same faces regarded on another vertex set, which must contain every
/// non-ghost vertex. Ghosts absent from `vertices` are dropped.
template <VertexMask Mask>
BasicComplex<Mask> with_vertex_set(const BasicComplex<Mask>& k, std::vector<VertexId> vertices) {
  vertices = detail::sorted_unique(std::move(vertices));
  std::vector<std::size_t> target(k.vertex_count(), 0);
  const Mask used = k.support();
  for (std::size_t i = 0; i < k.vertex_count(); ++i) {
    const auto it = std::lower_bound(vertices.begin(), vertices.end(), k.vertices()[i]);
    const bool present = it != vertices.end() && *it == k.vertices()[i];
    if (!present && test_bit(used, i)) {
      fail("vertex " + std::to_string(k.vertices()[i]) + " lies in a face and cannot be dropped");
    }
    if (present) target[i] = static_cast<std::size_t>(it - vertices.begin());
  }
  const Mask zero = MaskTraits<Mask>::zero(vertices.size());
  std::vector<Mask> masks;
  for (const auto& f : k.facet_masks()) masks.push_back(detail::remap(f, target, zero));
  return BasicComplex<Mask>::from_masks(std::move(vertices), std::move(masks));
}

template <VertexMask Mask>
BasicComplex<Mask> add_ghosts(const BasicComplex<Mask>& k, const std::vector<VertexId>& ghosts) {
  std::vector<VertexId> vs = k.vertices();
  vs.insert(vs.end(), ghosts.begin(), ghosts.end());
  return with_vertex_set(k, std::move(vs));
}

template <VertexMask Mask>
BasicComplex<Mask> drop_ghosts(const BasicComplex<Mask>& k) {
  return with_vertex_set(k, k.simplex_of(k.support()));
}

/// Relabels vertices through an injective map defined on the whole vertex set.
template <VertexMask Mask>
BasicComplex<Mask> relabel(const BasicComplex<Mask>& k, const std::map<VertexId, VertexId>& labels) {
  std::vector<VertexId> vs;
  vs.reserve(k.vertex_count());
  for (VertexId v : k.vertices()) {
    const auto it = labels.find(v);
    if (it == labels.end()) fail("relabel map misses vertex " + std::to_string(v));
    vs.push_back(it->second);
  }
  std::vector<Simplex> facets;
  for (const auto& f : k.facets()) {
    Simplex g;
    for (VertexId v : f) g.push_back(labels.at(v));
    facets.push_back(make_simplex(std::move(g)));
  }
  return BasicComplex<Mask>(std::move(vs), facets);
}

/// K1 * K2 on the union of the (disjoint) vertex sets.
template <VertexMask Mask>
BasicComplex<Mask> join(const BasicComplex<Mask>& a, const BasicComplex<Mask>& b) {
  std::vector<VertexId> vs = a.vertices();
  vs.insert(vs.end(), b.vertices().begin(), b.vertices().end());
  std::sort(vs.begin(), vs.end());
  if (std::adjacent_find(vs.begin(), vs.end()) != vs.end()) fail("non-disjoint join");
  const Mask zero = MaskTraits<Mask>::zero(vs.size());
  if (vs.size() > MaskTraits<Mask>::max_width) {
    fail(ErrorKind::guardrail, "join has more vertices than the word encoding holds");
  }
  const auto ma = detail::index_map(a, vs);
  const auto mb = detail::index_map(b, vs);
  std::vector<Mask> masks;
  masks.reserve(a.facet_masks().size() * b.facet_masks().size());
  for (const auto& fa : a.facet_masks()) {
    const Mask ra = detail::remap(fa, ma, zero);
    for (const auto& fb : b.facet_masks()) masks.push_back(ra | detail::remap(fb, mb, zero));
  }
  return BasicComplex<Mask>::from_masks(std::move(vs), std::move(masks));
}

namespace detail {

inline std::vector<VertexId> without(const std::vector<VertexId>& vs, VertexId v) {
  std::vector<VertexId> out;
  out.reserve(vs.size());
  for (VertexId u : vs) {
    if (u != v) out.push_back(u);
  }
  return out;
}

/// Index map from K's vertex set into the set with vertex `drop` removed.
inline std::vector<std::size_t> skip_index(std::size_t n, std::size_t drop) {
  std::vector<std::size_t> out(n, 0);
  for (std::size_t i = 0; i < n; ++i) out[i] = i < drop ? i : (i > drop ? i - 1 : 0);
  return out;
}

}  // namespace detail

/// K \ v: faces avoiding v, on vertex_set(K) \ {v}.
template <VertexMask Mask>
BasicComplex<Mask> deletion(const BasicComplex<Mask>& k, VertexId v) {
  const std::size_t i = k.require_index(v);
  auto vs = detail::without(k.vertices(), v);
  const auto target = detail::skip_index(k.vertex_count(), i);
  const Mask zero = MaskTraits<Mask>::zero(vs.size());
  std::vector<Mask> masks;
  for (const auto& f : k.facet_masks()) {
    Mask g = f;
    reset_bit(g, i);
    masks.push_back(detail::remap(g, target, zero));
  }
  return BasicComplex<Mask>::from_masks(std::move(vs), std::move(masks));
}

/// lk_K(v) on vertex_set(K) \ {v}. The link of a ghost vertex is void, which
/// is not representable, so that case throws.
template <VertexMask Mask>
BasicComplex<Mask> link(const BasicComplex<Mask>& k, VertexId v) {
  const std::size_t i = k.require_index(v);
  auto vs = detail::without(k.vertices(), v);
  const auto target = detail::skip_index(k.vertex_count(), i);
  const Mask zero = MaskTraits<Mask>::zero(vs.size());
  std::vector<Mask> masks;
  for (const auto& f : k.facet_masks()) {
    if (!test_bit(f, i)) continue;
    Mask g = f;
    reset_bit(g, i);
    masks.push_back(detail::remap(g, target, zero));
  }
  if (masks.empty()) fail("vertex " + std::to_string(v) + " is a ghost; its link is void");
  return BasicComplex<Mask>::from_masks(std::move(vs), std::move(masks));
}

/// st_K(v) on vertex_set(K).
template <VertexMask Mask>
BasicComplex<Mask> star(const BasicComplex<Mask>& k, VertexId v) {
  const std::size_t i = k.require_index(v);
  std::vector<Mask> masks;
  for (const auto& f : k.facet_masks()) {
    if (test_bit(f, i)) masks.push_back(f);
  }
  if (masks.empty()) fail("vertex " + std::to_string(v) + " is a ghost; its star is void");
  return BasicComplex<Mask>::from_masks(k.vertices(), std::move(masks));
}

/// K_I: faces of K inside I, on vertex set I.
template <VertexMask Mask>
BasicComplex<Mask> full_subcomplex(const BasicComplex<Mask>& k, std::vector<VertexId> subset) {
  subset = detail::sorted_unique(std::move(subset));
  Mask sel = k.zero();
  std::vector<std::size_t> target(k.vertex_count(), 0);
  for (std::size_t j = 0; j < subset.size(); ++j) {
    const auto i = k.index_of(subset[j]);
    if (!i) fail("full_subcomplex: vertex " + std::to_string(subset[j]) + " is not in the vertex set");
    set_bit(sel, *i);
    target[*i] = j;
  }
  const Mask zero = MaskTraits<Mask>::zero(subset.size());
  std::vector<Mask> masks;
  for (const auto& f : k.facet_masks()) masks.push_back(detail::remap(f & sel, target, zero));
  return BasicComplex<Mask>::from_masks(std::move(subset), std::move(masks));
}

/// Faces of dimension <= k.
template <VertexMask Mask>
BasicComplex<Mask> skeleton(const BasicComplex<Mask>& k, int dim) {
  if (dim < -1) fail("skeleton dimension must be >= -1");
  const std::size_t size = static_cast<std::size_t>(dim + 1);
  std::vector<Mask> masks;
  for (const auto& f : k.facet_masks()) {
    if (popcount(f) <= size) {
      masks.push_back(f);
    } else {
      detail::for_each_combination(bit_indices(f), size, k.zero(), [&](const Mask& m) { masks.push_back(m); });
    }
  }
  return BasicComplex<Mask>::from_masks(k.vertices(), std::move(masks));
}

template <VertexMask Mask>
BasicComplex<Mask> union_same_vertexset(const BasicComplex<Mask>& a, const BasicComplex<Mask>& b) {
  if (a.vertices() != b.vertices()) fail("union needs identical vertex sets");
  std::vector<Mask> masks = a.facet_masks();
  masks.insert(masks.end(), b.facet_masks().begin(), b.facet_masks().end());
  return BasicComplex<Mask>::from_masks(a.vertices(), std::move(masks));
}

template <VertexMask Mask>
BasicComplex<Mask> intersection_same_vertexset(const BasicComplex<Mask>& a, const BasicComplex<Mask>& b) {
  if (a.vertices() != b.vertices()) fail("intersection needs identical vertex sets");
  std::vector<Mask> masks;
  masks.reserve(a.facet_masks().size() * b.facet_masks().size());
  for (const auto& fa : a.facet_masks()) {
    for (const auto& fb : b.facet_masks()) masks.push_back(fa & fb);
  }
  return BasicComplex<Mask>::from_masks(a.vertices(), std::move(masks));
}

/// Every vertex of `a` is a vertex of `b` and every face of `a` is a face of `b`.
template <VertexMask Mask>
bool is_subcomplex(const BasicComplex<Mask>& a, const BasicComplex<Mask>& b) {
  for (VertexId v : a.vertices()) {
    if (!b.has_vertex(v)) return false;
  }
  for (const auto& f : a.facets()) {
    if (!b.contains(f)) return false;
  }
  return true;
}

// ---- missing faces and flagness ----------------------------------------------

/// Minimal non-faces as masks, lexicographically ordered. A candidate is
/// generated once, from the face obtained by dropping its largest vertex.
template <VertexMask Mask>
std::vector<Mask> minimal_missing_face_masks(const BasicComplex<Mask>& k) {
  std::vector<Mask> out;
  const std::size_t n = k.vertex_count();
  for (const auto& sigma : face_masks(k)) {
    const std::size_t start = is_empty(sigma) ? 0 : bit_indices(sigma).back() + 1;
    for (std::size_t u = start; u < n; ++u) {
      Mask omega = sigma;
      set_bit(omega, u);
      if (k.contains_mask(omega)) continue;
      bool minimal = true;
      for_each_bit(omega, [&](std::size_t x) {
        if (!minimal || x == u) return;
        Mask sub = omega;
        reset_bit(sub, x);
        if (!k.contains_mask(sub)) minimal = false;
      });
      if (minimal) out.push_back(std::move(omega));
    }
  }
  detail::sort_lex_unique(out);
  return out;
}

template <VertexMask Mask>
std::vector<Simplex> minimal_missing_faces(const BasicComplex<Mask>& k) {
  std::vector<Simplex> out;
  for (const auto& m : minimal_missing_face_masks(k)) out.push_back(k.simplex_of(m));
  return out;
}

/// Every minimal missing face has exactly two vertices. Ghost vertices are
/// one-vertex missing faces, so a complex with ghosts is never flag.
template <VertexMask Mask>
bool is_flag(const BasicComplex<Mask>& k) {
  const auto mmf = minimal_missing_face_masks(k);
  return std::all_of(mmf.begin(), mmf.end(), [](const Mask& m) { return popcount(m) == 2; });
}

/// Neighbourhood masks of the 1-skeleton.
template <VertexMask Mask>
std::vector<Mask> adjacency(const BasicComplex<Mask>& k) {
  std::vector<Mask> adj(k.vertex_count(), k.zero());
  for (const auto& f : k.facet_masks()) {
    for_each_bit(f, [&](std::size_t i) {
      Mask others = f;
      reset_bit(others, i);
      adj[i] = adj[i] | others;
    });
  }
  return adj;
}

namespace detail {

template <VertexMask Mask>
void bron_kerbosch(const std::vector<Mask>& adj, Mask r, Mask p, Mask x, std::vector<Mask>& out) {
  if (is_empty(p) && is_empty(x)) {
    out.push_back(r);
    return;
  }
  // Pivot: the vertex of P u X with the most neighbours in P.
  std::size_t pivot = 0;
  std::size_t best = 0;
  bool have = false;
  for_each_bit(p | x, [&](std::size_t u) {
    const std::size_t c = popcount(p & adj[u]);
    if (!have || c > best) {
      pivot = u;
      best = c;
      have = true;
    }
  });
  for (std::size_t v : bit_indices(minus(p, adj[pivot]))) {
    Mask rv = r;
    set_bit(rv, v);
    bron_kerbosch(adj, rv, p & adj[v], x & adj[v], out);
    reset_bit(p, v);
    set_bit(x, v);
  }
}

}  // namespace detail

/// Clique complex of the 1-skeleton, on the same vertex set (ghosts stay ghosts).
template <VertexMask Mask>
BasicComplex<Mask> clique_complex(const BasicComplex<Mask>& k) {
  const auto adj = adjacency(k);
  std::vector<Mask> cliques;
  detail::bron_kerbosch(adj, k.zero(), k.support(), k.zero(), cliques);
  return BasicComplex<Mask>::from_masks(k.vertices(), std::move(cliques));
}

/// Result of the k-skeleton-of-a-flag-complex test; `k` is set iff `value`.
struct SkeletonVerdict {
  bool value = false;
  std::optional<int> k;

  friend bool operator==(const SkeletonVerdict&, const SkeletonVerdict&) = default;
};

/// K is the k-skeleton of some flag complex for this particular k: dim K <= k
/// and K equals the k-skeleton of the clique complex of its 1-skeleton.
template <VertexMask Mask>
bool is_skeleton_of_flag_at(const BasicComplex<Mask>& k, int dim) {
  if (k.has_ghosts()) fail("remove ghosts first");
  if (k.dimension() > dim) return false;
  return skeleton(clique_complex(k), dim) == k;
}

/// Whether K is the k-skeleton of a flag complex for some k, reporting
/// k = dim K. Any flag complex with K as a skeleton shares K's 1-skeleton, so
/// the clique complex of that 1-skeleton is the only candidate to test.
template <VertexMask Mask>
SkeletonVerdict is_k_skeleton_of_flag(const BasicComplex<Mask>& k) {
  if (k.has_ghosts()) fail("remove ghosts first");
  const int d = k.dimension();
  if (skeleton(clique_complex(k), d) == k) return {true, d};
  return {false, std::nullopt};
}

// ---- isomorphism ---------------------------------------------------------------

using VertexBijection = std::map<VertexId, VertexId>;

namespace detail {

template <VertexMask Mask>
std::vector<std::vector<std::size_t>> vertex_signatures(const BasicComplex<Mask>& k,
                                                        const std::vector<Mask>& adj) {
  std::vector<std::vector<std::size_t>> sig(k.vertex_count());
  for (const auto& f : k.facet_masks()) {
    for_each_bit(f, [&](std::size_t i) { sig[i].push_back(popcount(f)); });
  }
  for (std::size_t i = 0; i < sig.size(); ++i) {
    std::sort(sig[i].begin(), sig[i].end());
    sig[i].push_back(popcount(adj[i]));  // degree, appended after the sorted sizes
  }
  return sig;
}

}  // namespace detail

/// Backtracking search for a vertex bijection carrying the facets of `a` onto
/// the facets of `b`. Returns a witness (a-label -> b-label) when one exists.
template <VertexMask Mask>
std::optional<VertexBijection> is_isomorphic(const BasicComplex<Mask>& a, const BasicComplex<Mask>& b,
                                             std::size_t bound = 16) {
  if (a.vertex_count() > bound || b.vertex_count() > bound) fail(ErrorKind::guardrail, "isomorphism bound exceeded");
  const std::size_t n = a.vertex_count();
  if (n != b.vertex_count() || a.facet_masks().size() != b.facet_masks().size()) return std::nullopt;

  const auto adj_a = adjacency(a);
  const auto adj_b = adjacency(b);
  const auto sig_a = detail::vertex_signatures(a, adj_a);
  const auto sig_b = detail::vertex_signatures(b, adj_b);
  {
    auto sa = sig_a;
    auto sb = sig_b;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    if (sa != sb) return std::nullopt;
  }

  // Assign high-degree vertices first; they prune hardest.
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return popcount(adj_a[x]) > popcount(adj_a[y]); });
  std::vector<std::size_t> step_of(n);
  for (std::size_t s = 0; s < n; ++s) step_of[order[s]] = s;

  // Facets of `a` grouped by the step at which they become fully assigned.
  std::vector<std::vector<const Mask*>> complete_at(n + 1);
  for (const auto& f : a.facet_masks()) {
    std::size_t last = 0;
    bool any = false;
    for_each_bit(f, [&](std::size_t i) {
      last = any ? std::max(last, step_of[i]) : step_of[i];
      any = true;
    });
    complete_at[any ? last + 1 : 0].push_back(&f);
  }
  const auto& facets_b = b.facet_masks();
  auto has_facet_b = [&](const Mask& m) {
    return std::binary_search(facets_b.begin(), facets_b.end(), m,
                              [](const Mask& x, const Mask& y) { return lex_less(x, y); });
  };

  std::vector<std::size_t> image(n, 0);
  std::vector<bool> used(n, false);
  const auto check_facets = [&](std::size_t step) {
    for (const Mask* f : complete_at[step]) {
      Mask g = b.zero();
      for_each_bit(*f, [&](std::size_t i) { set_bit(g, image[i]); });
      if (!has_facet_b(g)) return false;
    }
    return true;
  };
  if (!check_facets(0)) return std::nullopt;

  const auto search = [&](auto&& self, std::size_t step) -> bool {
    if (step == n) return true;
    const std::size_t v = order[step];
    for (std::size_t c = 0; c < n; ++c) {
      if (used[c] || sig_a[v] != sig_b[c]) continue;
      bool ok = true;
      for (std::size_t s = 0; s < step && ok; ++s) {
        const std::size_t u = order[s];
        ok = test_bit(adj_a[v], u) == test_bit(adj_b[c], image[u]);
      }
      if (!ok) continue;
      image[v] = c;
      used[c] = true;
      if (check_facets(step + 1) && self(self, step + 1)) return true;
      used[c] = false;
    }
    return false;
  };
  if (!search(search, 0)) return std::nullopt;

  VertexBijection witness;
  for (std::size_t i = 0; i < n; ++i) witness[a.vertices()[i]] = b.vertices()[image[i]];
  return witness;
}

}  // namespace polyjoin
