#pragma once

// JSON reading and writing for complexes, specs and module reports.
//
//   complex  {"vertices":[1,2,3,4],"facets":[[1,2],[2,3],[3,4],[1,4]]}
//   spec     {"M": complex, "pairs":[{"K": complex, "L": complex}, ...]}
//            {"M": complex, "substitute":[complex, ...]}
//            {"M": complex, "compose":[complex, ...]}
//
// Writers emit canonical order. Readers accept any order; "vertices" may be
// omitted, in which case it is the union of the facets.

#include <algorithm>
#include <cstddef>
#include <iomanip>
#include <limits>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "polyjoin/classify.hpp"
#include "polyjoin/complex.hpp"
#include "polyjoin/error.hpp"
#include "polyjoin/homology.hpp"
#include "polyjoin/moment_angle.hpp"
#include "polyjoin/polyhedral_join.hpp"

namespace polyjoin {

using Json = nlohmann::ordered_json;

inline Json parse_json(const std::string& text, const std::string& source) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    fail(ErrorKind::parse, source + ": " + e.what());
  }
}

namespace detail {

inline const Json& field(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object()) fail(ErrorKind::parse, where + ": expected an object");
  const auto it = j.find(key);
  if (it == j.end()) fail(ErrorKind::parse, where + ": missing field \"" + key + "\"");
  return *it;
}

inline VertexId vertex_label(const Json& j, const std::string& where) {
  if (!j.is_number_integer() || j.get<long long>() < 0 ||
      j.get<long long>() > static_cast<long long>(std::numeric_limits<VertexId>::max())) {
    fail(ErrorKind::parse, where + ": vertex labels must be non-negative integers, got " + j.dump());
  }
  return static_cast<VertexId>(j.get<long long>());
}

inline Simplex simplex_from_json(const Json& j, const std::string& where) {
  if (!j.is_array()) fail(ErrorKind::parse, where + ": expected an array of vertex labels");
  Simplex s;
  for (const auto& v : j) s.push_back(vertex_label(v, where));
  return s;
}

inline Json simplices_json(std::vector<Simplex> list) {
  std::sort(list.begin(), list.end());
  Json out = Json::array();
  for (const auto& s : list) out.push_back(s);
  return out;
}

}  // namespace detail

template <VertexMask Mask>
Json to_json(const BasicComplex<Mask>& k) {
  Json j;
  j["vertices"] = k.vertices();
  j["facets"] = detail::simplices_json(k.facets());
  return j;
}

template <VertexMask Mask>
BasicComplex<Mask> complex_from_json(const Json& j, const std::string& where = "complex") {
  const auto& facets_json = detail::field(j, "facets", where);
  if (!facets_json.is_array()) fail(ErrorKind::parse, where + ".facets: expected an array");
  std::vector<Simplex> facets;
  for (std::size_t i = 0; i < facets_json.size(); ++i) {
    facets.push_back(detail::simplex_from_json(facets_json[i], where + ".facets[" + std::to_string(i) + "]"));
  }
  if (!j.contains("vertices")) return BasicComplex<Mask>::from_facets(facets);
  const auto& vs = j["vertices"];
  if (!vs.is_array()) fail(ErrorKind::parse, where + ".vertices: expected an array");
  std::vector<VertexId> vertices;
  for (const auto& v : vs) vertices.push_back(detail::vertex_label(v, where + ".vertices"));
  return BasicComplex<Mask>(std::move(vertices), facets);
}

/// Vertex count of a complex document, read without building it.
inline std::size_t complex_vertex_count(const Json& j) {
  std::set<long long> labels;
  if (j.is_object() && j.contains("vertices") && j["vertices"].is_array()) {
    for (const auto& v : j["vertices"]) {
      if (v.is_number_integer()) labels.insert(v.get<long long>());
    }
  }
  if (j.is_object() && j.contains("facets") && j["facets"].is_array()) {
    for (const auto& f : j["facets"]) {
      if (!f.is_array()) continue;
      for (const auto& v : f) {
        if (v.is_number_integer()) labels.insert(v.get<long long>());
      }
    }
  }
  return labels.size();
}

/// Largest vertex count among the complexes a spec would build: the outer
/// complex, each part, and the flattened total.
inline std::size_t spec_vertex_count(const Json& j) {
  if (!j.is_object()) return 0;
  std::size_t total = 0;
  std::size_t widest = j.contains("M") ? complex_vertex_count(j["M"]) : 0;
  auto visit = [&](const Json& c) {
    const std::size_t n = complex_vertex_count(c);
    total += n;
    widest = std::max(widest, n);
  };
  for (const char* key : {"substitute", "compose"}) {
    if (j.contains(key) && j[key].is_array()) {
      for (const auto& c : j[key]) visit(c);
    }
  }
  if (j.contains("pairs") && j["pairs"].is_array()) {
    for (const auto& p : j["pairs"]) {
      if (p.is_object() && p.contains("K")) visit(p["K"]);
    }
  }
  return std::max(widest, total);
}

template <VertexMask Mask>
PjpSpec<Mask> spec_from_json(const Json& j) {
  if (!j.is_object()) fail(ErrorKind::parse, "spec: expected an object");
  const auto outer = complex_from_json<Mask>(detail::field(j, "M", "spec"), "spec.M");
  const int forms = static_cast<int>(j.contains("pairs")) + static_cast<int>(j.contains("substitute")) +
                    static_cast<int>(j.contains("compose"));
  if (forms != 1) fail(ErrorKind::parse, "spec: exactly one of \"pairs\", \"substitute\", \"compose\" is required");
  for (const char* key : {"substitute", "compose"}) {
    if (!j.contains(key)) continue;
    const auto& list = j[key];
    if (!list.is_array()) fail(ErrorKind::parse, std::string("spec.") + key + ": expected an array");
    std::vector<BasicComplex<Mask>> parts;
    for (std::size_t i = 0; i < list.size(); ++i) {
      parts.push_back(complex_from_json<Mask>(list[i], std::string("spec.") + key + "[" + std::to_string(i) + "]"));
    }
    return std::string(key) == "substitute" ? substitution_spec(outer, parts) : composition_spec(outer, parts);
  }
  const auto& list = j["pairs"];
  if (!list.is_array()) fail(ErrorKind::parse, "spec.pairs: expected an array");
  std::vector<ComplexPair<Mask>> pairs;
  for (std::size_t i = 0; i < list.size(); ++i) {
    const std::string where = "spec.pairs[" + std::to_string(i) + "]";
    pairs.push_back({complex_from_json<Mask>(detail::field(list[i], "K", where), where + ".K"),
                     complex_from_json<Mask>(detail::field(list[i], "L", where), where + ".L")});
  }
  return PjpSpec<Mask>(outer, std::move(pairs));
}

template <VertexMask Mask>
Json to_json(const PjpSpec<Mask>& spec) {
  Json j;
  j["M"] = to_json(spec.outer());
  j["pairs"] = Json::array();
  for (const auto& p : spec.pairs()) j["pairs"].push_back({{"K", to_json(p.K)}, {"L", to_json(p.L)}});
  return j;
}

/// {"flat_label": [outer, inner], ...}
template <VertexMask Mask>
Json provenance_json(const PjpSpec<Mask>& spec) {
  Json j = Json::object();
  for (const auto& [flat, p] : spec.provenance()) j[std::to_string(flat)] = {p.outer, p.inner};
  return j;
}

inline Json to_json(const BigInt& n) {
  if (n >= 0 && n <= std::numeric_limits<std::uint64_t>::max()) return n.convert_to<std::uint64_t>();
  return n.str();
}

/// Nontrivial groups only, one object per degree.
inline Json homology_json(const std::vector<HomologyGroup>& groups) {
  Json out = Json::array();
  for (const auto& g : groups) {
    if (g.trivial()) continue;
    Json t = Json::array();
    for (const auto& x : g.torsion) t.push_back(to_json(x));
    out.push_back({{"degree", g.degree}, {"rank", g.rank}, {"torsion", t}});
  }
  return out;
}

/// Field coefficients: reduced Betti numbers (entry d + 1 for degree d).
inline Json homology_json(const std::vector<std::size_t>& betti) {
  std::vector<HomologyGroup> groups;
  for (std::size_t e = 0; e < betti.size(); ++e) groups.push_back({static_cast<int>(e) - 1, betti[e], {}});
  return homology_json(groups);
}

inline Json to_json(const BigradedBettiTable& t) {
  Json entries = Json::array();
  for (const auto& [ij, rank] : t.entries) entries.push_back({{"i", ij.first}, {"j", ij.second}, {"rank", rank}});
  return {{"bigraded", entries}, {"totals", t.totals}};
}

/// Rows i, columns j (the bidegree (-i, 2j) of H^*(Z_K)), then the totals.
inline std::string to_text(const BigradedBettiTable& t) {
  int max_i = 0;
  for (const auto& [ij, rank] : t.entries) max_i = std::max(max_i, ij.first);
  std::ostringstream os;
  os << "bigraded Betti numbers beta^{-i,2j}\n";
  os << std::setw(4) << "i\\j";
  for (std::size_t j = 1; j <= t.m; ++j) os << std::setw(6) << j;
  os << '\n';
  for (int i = 1; i <= max_i; ++i) {
    os << std::setw(4) << i;
    for (std::size_t j = 1; j <= t.m; ++j) {
      const auto it = t.entries.find({i, static_cast<int>(j)});
      if (it == t.entries.end()) {
        os << std::setw(6) << '.';
      } else {
        os << std::setw(6) << it->second;
      }
    }
    os << '\n';
  }
  os << "totals:";
  for (auto b : t.totals) os << ' ' << b;
  os << '\n';
  return os.str();
}

inline Json to_json(const LemmaFinding& f) {
  Json j;
  j["lemma"] = f.lemma;
  j["hypothesis_held"] = f.hypothesis_held;
  j["conclusion"] = f.conclusion ? Json(*f.conclusion) : Json(nullptr);
  j["detail"] = f.detail;
  return j;
}

inline Json to_json(const std::vector<LemmaFinding>& findings) {
  Json out = Json::array();
  for (const auto& f : findings) out.push_back(to_json(f));
  return out;
}

inline Json to_json(const SkeletonVerdict& v) {
  return {{"value", v.value}, {"k", v.k ? Json(*v.k) : Json(nullptr)}};
}

inline Json to_json(const ClassificationReport& r) {
  Json j;
  j["is_flag"] = r.is_flag;
  j["k_skeleton_of_flag"] = to_json(r.k_skeleton);
  j["mmf"] = detail::simplices_json(r.mmf);
  j["torsion_flag"] = r.torsion_flag;
  j["non_edges"] = r.non_edges;
  j["notes"] = to_json(r.notes);
  return j;
}

inline Json to_json(const HypothesisChecklist& h) {
  Json j;
  j["outer_family"] = to_string(h.outer_family);
  j["parts"] = Json::array();
  for (const auto& p : h.parts) {
    Json e{{"outer_vertex", p.outer_vertex}, {"family", to_string(p.family)}};
    if (p.torsion) e["torsion"] = *p.torsion;
    j["parts"].push_back(e);
  }
  j["substitution_mode"] = h.substitution_mode;
  j["composition_mode"] = h.composition_mode;
  j["overall"] = to_string(h.overall);
  j["lemma"] = h.lemma.empty() ? Json(nullptr) : Json(h.lemma);
  j["reasons"] = h.reasons;
  return j;
}

namespace detail {

inline std::string yes_no(bool b) { return b ? "yes" : "no"; }

inline void findings_text(std::ostringstream& os, const std::vector<LemmaFinding>& findings) {
  os << "  " << std::left << std::setw(14) << "lemma" << std::setw(12) << "hypothesis" << std::setw(12)
     << "conclusion" << "detail\n";
  for (const auto& f : findings) {
    const std::string c = f.conclusion ? (*f.conclusion ? "verified" : "FAILED") : "-";
    os << "  " << std::setw(14) << f.lemma << std::setw(12) << (f.hypothesis_held ? "held" : "-") << std::setw(12)
       << c << f.detail << '\n';
  }
  os << std::right;
}

}  // namespace detail

inline std::string to_text(const ClassificationReport& r) {
  std::ostringstream os;
  os << "flag:               " << detail::yes_no(r.is_flag) << '\n';
  os << "k-skeleton of flag: "
     << (r.k_skeleton.value ? "yes, k = " + std::to_string(*r.k_skeleton.k) : std::string("no")) << '\n';
  os << "torsion in some full subcomplex: " << detail::yes_no(r.torsion_flag) << '\n';
  os << "non-edges:          " << r.non_edges << '\n';
  os << "minimal missing faces (" << r.mmf.size() << "):";
  for (const auto& s : r.mmf) os << ' ' << to_string(s);
  os << "\nfindings:\n";
  detail::findings_text(os, r.notes);
  return os.str();
}

inline std::string to_text(const std::vector<LemmaFinding>& findings) {
  std::ostringstream os;
  os << "substitution findings:\n";
  detail::findings_text(os, findings);
  return os.str();
}

inline std::string to_text(const HypothesisChecklist& h) {
  std::ostringstream os;
  os << "mode: " << (h.substitution_mode ? "substitution" : h.composition_mode ? "composition" : "general") << '\n';
  os << "outer complex: " << to_string(h.outer_family) << '\n';
  for (const auto& p : h.parts) {
    os << "part at vertex " << p.outer_vertex << ": " << to_string(p.family);
    if (p.torsion) os << (*p.torsion ? ", torsion" : ", torsion-free");
    os << '\n';
  }
  os << "overall: " << to_string(h.overall);
  if (!h.lemma.empty()) os << " (hypotheses of lemma " << h.lemma << " met)";
  os << '\n';
  for (const auto& r : h.reasons) os << "  " << r << '\n';
  return os.str();
}

}  // namespace polyjoin
