#pragma once

// Flag / skeleton classification of substitution complexes, the minimal
// missing face formula for K(K_1, ..., K_m), and a conservative checklist of
// the combinatorial hypotheses behind "the loop space of (CA,A)^K is a product
// of spheres and loops on spheres".

#include <algorithm>
#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "polyjoin/complex.hpp"
#include "polyjoin/error.hpp"
#include "polyjoin/guardrails.hpp"
#include "polyjoin/moment_angle.hpp"
#include "polyjoin/operations.hpp"
#include "polyjoin/polyhedral_join.hpp"

namespace polyjoin {

/// One lemma instantiated on a concrete input. `conclusion` is evaluated only
/// when the hypothesis holds.
struct LemmaFinding {
  std::string lemma;
  bool hypothesis_held = false;
  std::optional<bool> conclusion;
  std::string detail;

  bool sound() const { return !hypothesis_held || conclusion == true; }
};

struct ClassificationReport {
  bool is_flag = false;
  SkeletonVerdict k_skeleton;
  std::vector<Simplex> mmf;
  bool torsion_flag = false;
  std::size_t non_edges = 0;
  std::vector<LemmaFinding> notes;
};

namespace detail {

template <VertexMask Mask>
bool is_full_simplex(const BasicComplex<Mask>& k) {
  return !k.has_ghosts() && k.facet_masks().size() == 1 && popcount(k.facet_masks().front()) == k.vertex_count();
}

/// A complex that is the k-skeleton of a flag complex but not flag must miss
/// a (k+1)-simplex whose boundary it contains.
template <VertexMask Mask>
LemmaFinding kskelmis_finding(const BasicComplex<Mask>& k, const SkeletonVerdict& verdict, bool flag,
                              const std::vector<Simplex>& mmf) {
  LemmaFinding f{"kskelmis", false, std::nullopt, {}};
  if (!verdict.value || flag || is_full_simplex(k)) {
    f.detail = "needs a non-flag k-skeleton of a flag complex";
    return f;
  }
  f.hypothesis_held = true;
  const auto want = static_cast<std::size_t>(*verdict.k + 2);
  f.conclusion = std::any_of(mmf.begin(), mmf.end(), [&](const Simplex& s) { return s.size() == want; });
  f.detail = "minimal missing face on " + std::to_string(want) + " vertices";
  return f;
}

template <VertexMask Mask>
void require_ghost_free(const BasicComplex<Mask>& k, const std::string& what) {
  if (k.has_ghosts()) fail(what + " has ghost vertices; remove ghosts first");
}

}  // namespace detail

template <VertexMask Mask>
ClassificationReport classify(const BasicComplex<Mask>& k, const Guardrails& guard = {}) {
  detail::require_ghost_free(k, "complex");
  ClassificationReport rep;
  rep.is_flag = is_flag(k);
  rep.k_skeleton = is_k_skeleton_of_flag(k);
  rep.mmf = minimal_missing_faces(k);
  rep.torsion_flag = torsion_flag(k, guard);
  rep.non_edges = static_cast<std::size_t>(
      std::count_if(rep.mmf.begin(), rep.mmf.end(), [](const Simplex& s) { return s.size() == 2; }));
  rep.notes.push_back(detail::kskelmis_finding(k, rep.k_skeleton, rep.is_flag, rep.mmf));
  return rep;
}

/// Minimal missing faces of K(K_1, ..., K_m) against the prediction: the
/// missing faces of each part, plus every transversal of a missing face of K
/// (one non-ghost vertex from each part involved). Labels are the default
/// flattened layout.
template <VertexMask Mask>
bool mmf_substitution_check(const BasicComplex<Mask>& k, const std::vector<BasicComplex<Mask>>& parts,
                            const Guardrails& guard = {}) {
  detail::require_ghost_free(k, "outer complex");
  const auto spec = substitution_spec(k, parts);
  std::set<Simplex> predicted;
  for (std::size_t i = 0; i < spec.part_count(); ++i) {
    for (auto& s : minimal_missing_faces(spec.flat_K(i))) predicted.insert(std::move(s));
  }
  for (const auto& missing : minimal_missing_faces(k)) {
    std::vector<std::vector<VertexId>> choices;
    for (VertexId v : missing) {
      const std::size_t i = spec.part_index(v);
      const auto flat = spec.flat_K(i);
      std::vector<VertexId> live;
      for (VertexId u : flat.vertices()) {
        if (flat.contains({u})) live.push_back(u);
      }
      choices.push_back(std::move(live));
    }
    // odometer over the choice lists
    std::vector<std::size_t> at(choices.size(), 0);
    const bool any_empty = std::any_of(choices.begin(), choices.end(), [](const auto& c) { return c.empty(); });
    while (!any_empty) {
      Simplex s;
      for (std::size_t l = 0; l < choices.size(); ++l) s.push_back(choices[l][at[l]]);
      std::sort(s.begin(), s.end());
      predicted.insert(std::move(s));
      std::size_t l = 0;
      while (l < at.size() && ++at[l] == choices[l].size()) at[l++] = 0;
      if (l == at.size()) break;
    }
  }
  const auto built = minimal_missing_faces(polyhedral_join(spec, guard));
  return std::set<Simplex>(built.begin(), built.end()) == predicted;
}

/// Instantiates the non-flag / non-skeleton lemmas for substitution complexes
/// on (K, parts) and checks each conclusion whose hypothesis holds on the
/// built complex.
///
/// notflag         K not flag => B not flag
/// notflag_edge    some missing face of K on >= 3 vertices has a vertex whose
///                 part has an edge => B is not a k-skeleton of a flag complex
/// notflag1        K flag, some part not flag => B not flag
/// notflag2a       K flag, and for each k: some part is not the k-skeleton
///                 of a flag complex => neither is B
/// notflag2b       K flag, part i has a neighbour in K and is the
///                 (dim K_i)-skeleton of a flag complex => B is not
/// kskelmis        on B itself
/// new1            K the boundary of a simplex on >= 3 vertices, some part
///                 with an edge => B is not a k-skeleton for any k
/// mf              always applies; mmf_substitution_check
template <VertexMask Mask>
std::vector<LemmaFinding> substitution_flag_verdicts(const BasicComplex<Mask>& k,
                                                     const std::vector<BasicComplex<Mask>>& parts,
                                                     const Guardrails& guard = {}) {
  detail::require_ghost_free(k, "outer complex");
  for (std::size_t i = 0; i < parts.size(); ++i) detail::require_ghost_free(parts[i], "part " + std::to_string(i));
  const auto spec = substitution_spec(k, parts);
  const auto built = polyhedral_join(spec, guard);
  const bool k_flag = is_flag(k);
  const bool b_flag = is_flag(built);
  const auto b_skel = is_k_skeleton_of_flag(built);
  const auto k_mmf = minimal_missing_faces(k);
  const auto has_edge = [](const BasicComplex<Mask>& c) { return c.dimension() >= 1; };

  std::vector<LemmaFinding> out;
  auto add = [&](std::string lemma, bool hyp, auto&& conclusion, std::string detail) {
    LemmaFinding f{std::move(lemma), hyp, std::nullopt, {}};
    if (hyp) {
      f.conclusion = conclusion();
      f.detail = std::move(detail);
    }
    out.push_back(std::move(f));
  };

  add("notflag", !k_flag, [&] { return !b_flag; }, "outer complex not flag");

  std::string edge_at;
  for (const auto& missing : k_mmf) {
    if (missing.size() < 3 || !edge_at.empty()) continue;
    for (VertexId v : missing) {
      if (has_edge(parts[spec.part_index(v)])) {
        edge_at = "part at vertex " + std::to_string(v) + " has an edge, missing face " + to_string(missing);
        break;
      }
    }
  }
  add("notflag_edge", !edge_at.empty(), [&] { return !b_skel.value; }, edge_at);

  const auto unflagged = std::find_if(parts.begin(), parts.end(), [](const auto& p) { return !is_flag(p); });
  add("notflag1", k_flag && unflagged != parts.end(), [&] { return !b_flag; },
      unflagged == parts.end() ? std::string{}
                               : "part " + std::to_string(unflagged - parts.begin()) + " not flag");

  {
    std::vector<int> ks;
    for (int d = 0; k_flag && d <= static_cast<int>(built.vertex_count()); ++d) {
      if (std::any_of(parts.begin(), parts.end(), [&](const auto& p) { return !is_skeleton_of_flag_at(p, d); })) {
        ks.push_back(d);
      }
    }
    std::string detail = "k in {";
    for (std::size_t t = 0; t < ks.size(); ++t) detail += (t ? "," : "") + std::to_string(ks[t]);
    detail += "}";
    add("notflag2a", !ks.empty(),
        [&] { return std::none_of(ks.begin(), ks.end(), [&](int d) { return is_skeleton_of_flag_at(built, d); }); },
        detail);
  }

  {
    std::optional<std::size_t> part;
    const auto adj = adjacency(k);
    for (std::size_t i = 0; i < parts.size() && k_flag && !part; ++i) {
      if (!is_empty(adj[i]) && is_skeleton_of_flag_at(parts[i], parts[i].dimension())) part = i;
    }
    add("notflag2b", part.has_value(),
        [&] { return !is_skeleton_of_flag_at(built, parts[*part].dimension()); },
        part ? "part " + std::to_string(*part) + ", k = " + std::to_string(parts[*part].dimension()) : std::string{});
  }

  out.push_back(detail::kskelmis_finding(built, b_skel, b_flag, minimal_missing_faces(built)));

  const bool boundary = k.vertex_count() >= 3 && k_mmf.size() == 1 && k_mmf.front() == k.vertices();
  add("new1", boundary && std::any_of(parts.begin(), parts.end(), has_edge), [&] { return !b_skel.value; },
      boundary ? "outer complex is the boundary of a simplex" : std::string{});

  add("mf", true, [&] { return mmf_substitution_check(k, parts, guard); }, "minimal missing face formula");
  return out;
}

// ---- hypothesis checklist -----------------------------------------------------

enum class Family { simplex, simplex_skeleton, polygon_boundary, flag_skeleton, unknown };

inline std::string to_string(Family f) {
  switch (f) {
    case Family::simplex:
      return "simplex";
    case Family::simplex_skeleton:
      return "skeleton-of-simplex";
    case Family::polygon_boundary:
      return "polygon-boundary";
    case Family::flag_skeleton:
      return "skeleton-of-flag";
    case Family::unknown:
      break;
  }
  return "unknown";
}

/// Most specific known family containing k; complexes with ghosts are unknown.
template <VertexMask Mask>
Family recognize_family(const BasicComplex<Mask>& k) {
  if (k.has_ghosts()) return Family::unknown;
  if (detail::is_full_simplex(k)) return Family::simplex;
  if (skeleton(simplex_on<Mask>(k.vertices()), k.dimension()) == k) return Family::simplex_skeleton;
  const std::size_t n = k.vertex_count();
  if (n >= 4 && k.dimension() == 1 && k.facet_masks().size() == n) {
    const auto adj = adjacency(k);
    if (std::all_of(adj.begin(), adj.end(), [](const Mask& m) { return popcount(m) == 2; })) {
      Mask seen = k.zero();
      set_bit(seen, 0);
      for (Mask frontier = seen; !is_empty(frontier);) {
        Mask next = k.zero();
        for_each_bit(frontier, [&](std::size_t i) { next = next | adj[i]; });
        frontier = minus(next, seen);
        seen = seen | next;
      }
      if (seen == k.full_mask()) return Family::polygon_boundary;
    }
  }
  if (is_k_skeleton_of_flag(k).value) return Family::flag_skeleton;
  return Family::unknown;
}

enum class Overall { verified, unknown };

inline std::string to_string(Overall o) { return o == Overall::verified ? "VERIFIED" : "UNKNOWN"; }

struct PartEntry {
  VertexId outer_vertex = 0;
  Family family = Family::unknown;
  std::optional<bool> torsion;  ///< checked in composition mode only
};

struct HypothesisChecklist {
  Family outer_family = Family::unknown;
  std::vector<PartEntry> parts;
  bool substitution_mode = false;
  bool composition_mode = false;
  Overall overall = Overall::unknown;
  std::string lemma;  ///< lemma whose hypotheses were met, empty when UNKNOWN
  std::vector<std::string> reasons;
};

/// Recognized families for the outer complex and the parts. Substitution mode
/// needs every part and the outer complex recognized ("subpreserve").
/// Composition mode additionally needs each part's polyhedral product to
/// suspend to a wedge of spheres, accepted for simplices, skeleta of simplices
/// and polygon boundaries when torsion-free ("composition"). Anything else is
/// UNKNOWN; this never throws on unrecognized input.
template <VertexMask Mask>
HypothesisChecklist hypothesis_report(const PjpSpec<Mask>& spec, const Guardrails& guard = {}) {
  HypothesisChecklist rep;
  rep.outer_family = recognize_family(spec.outer());
  rep.substitution_mode = is_substitution(spec);
  rep.composition_mode = is_composition(spec);
  const bool use_inner = rep.substitution_mode || !rep.composition_mode;
  for (std::size_t i = 0; i < spec.part_count(); ++i) {
    const auto& part = use_inner ? spec.pairs()[i].K : spec.pairs()[i].L;
    rep.parts.push_back({spec.outer().vertices()[i], recognize_family(part), std::nullopt});
  }
  if (rep.outer_family == Family::unknown) rep.reasons.push_back("outer complex not in a recognized family");
  for (const auto& p : rep.parts) {
    if (p.family == Family::unknown) {
      rep.reasons.push_back("part at vertex " + std::to_string(p.outer_vertex) + " not in a recognized family");
    }
  }
  const bool recognized = rep.reasons.empty();

  if (rep.substitution_mode) {
    if (recognized) {
      rep.overall = Overall::verified;
      rep.lemma = "subpreserve";
    }
  } else if (rep.composition_mode) {
    bool ok = recognized;
    for (std::size_t i = 0; i < rep.parts.size(); ++i) {
      auto& p = rep.parts[i];
      if (p.family == Family::flag_skeleton) {
        rep.reasons.push_back("part at vertex " + std::to_string(p.outer_vertex) +
                              ": no wedge decomposition known for flag skeleta");
        ok = false;
      }
      const auto& part = spec.pairs()[i].L;
      if (p.family == Family::unknown || part.vertex_count() > guard.hochster_vertices) {
        ok = false;
        continue;
      }
      p.torsion = torsion_flag(part, guard);
      if (*p.torsion) {
        rep.reasons.push_back("part at vertex " + std::to_string(p.outer_vertex) + " has torsion");
        ok = false;
      }
    }
    if (ok) {
      rep.overall = Overall::verified;
      rep.lemma = "composition";
    }
  } else {
    rep.reasons.push_back("neither a substitution nor a composition");
  }
  return rep;
}

}  // namespace polyjoin
