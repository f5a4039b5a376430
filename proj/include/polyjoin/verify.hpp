#pragma once

// Seeded randomized suites for the combinatorial identities. Each case draws
// from its own generator, seeded from (suite seed, case index), so a failing
// case is reproducible in isolation from its transcript.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "polyjoin/classify.hpp"
#include "polyjoin/error.hpp"
#include "polyjoin/json_io.hpp"
#include "polyjoin/moment_angle.hpp"
#include "polyjoin/operations.hpp"
#include "polyjoin/polyhedral_join.hpp"
#include "polyjoin/random.hpp"

namespace polyjoin {

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"join",       "pushout", "deleteeq", "ghost",
                                                 "sequential", "mmf",     "fullsub",  "kunneth"};
  return names;
}

struct VerifySuiteConfig {
  std::string suite = "all";
  std::uint64_t seed = 0;
  std::size_t cases = 100;
  std::size_t max_outer = 4;
  std::size_t max_inner = 4;
};

struct CaseFailure {
  std::size_t index = 0;
  std::uint64_t case_seed = 0;
  std::string check;
  Json instance;
};

struct SuiteResult {
  std::string suite;
  std::uint64_t seed = 0;
  std::size_t cases = 0;
  std::size_t checks = 0;
  std::vector<CaseFailure> failures;

  bool passed() const { return failures.empty(); }
};

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Per-case bookkeeping handed to the suite bodies.
class CaseContext {
 public:
  CaseContext(std::uint64_t seed, SuiteResult& result, std::size_t index)
      : rng(seed), seed_(seed), result_(result), index_(index) {}

  Rng rng;
  Json instance = Json::object();

  void check(const std::string& name, bool ok) {
    ++result_.checks;
    if (!ok) result_.failures.push_back({index_, seed_, name, instance});
  }

 private:
  std::uint64_t seed_;
  SuiteResult& result_;
  std::size_t index_;
};

namespace detail {

template <VertexMask Mask>
PjpSpec<Mask> suite_spec(Rng& rng, const VerifySuiteConfig& cfg, bool outer_ghosts, bool inner_ghosts) {
  return random_spec<Mask>(rng, {1, cfg.max_outer, cfg.max_inner, outer_ghosts, inner_ghosts});
}

template <VertexMask Mask>
BasicComplex<Mask> facet_subset(Rng& rng, const BasicComplex<Mask>& m) {
  std::vector<Mask> keep;
  for (const auto& f : m.facet_masks()) {
    if (rng.chance(2, 3)) keep.push_back(f);
  }
  return BasicComplex<Mask>::from_masks(m.vertices(), std::move(keep));
}

template <VertexMask Mask>
void run_join(CaseContext& c, const VerifySuiteConfig& cfg) {
  const auto sm = suite_spec<Mask>(c.rng, cfg, c.rng.chance(1, 2), c.rng.chance(1, 3));
  const auto raw = suite_spec<Mask>(c.rng, cfg, false, c.rng.chance(1, 3));
  std::map<VertexId, VertexId> shift;
  for (VertexId v : raw.outer().vertices()) shift[v] = v + static_cast<VertexId>(cfg.max_outer);
  const PjpSpec<Mask> sn(relabel(raw.outer(), shift), raw.pairs());
  c.instance = {{"spec_M", to_json(sm)}, {"spec_N", to_json(sn)}};
  c.check("join", pjp_join_check(sm, sn));
}

template <VertexMask Mask>
void run_pushout(CaseContext& c, const VerifySuiteConfig& cfg) {
  const auto spec = suite_spec<Mask>(c.rng, cfg, c.rng.chance(1, 2), c.rng.chance(1, 3));
  const auto& m = spec.outer();
  const auto a = facet_subset(c.rng, m);
  std::vector<Mask> rest;
  for (const auto& f : m.facet_masks()) {
    if (!a.contains_mask(f) || c.rng.chance(1, 3)) rest.push_back(f);
  }
  const auto b = BasicComplex<Mask>::from_masks(m.vertices(), std::move(rest));
  c.instance = {{"spec", to_json(spec)}, {"M_A", to_json(a)}, {"M_B", to_json(b)}};
  c.check("pushout", pjp_pushout_check(spec, a, b, intersection_same_vertexset(a, b)));
  for (VertexId v : m.vertices()) {
    if (m.contains({v})) c.check("star cover at " + std::to_string(v), star_cover_check(spec, v));
  }
}

template <VertexMask Mask>
void run_deleteeq(CaseContext& c, const VerifySuiteConfig& cfg) {
  const auto spec = suite_spec<Mask>(c.rng, cfg, c.rng.chance(1, 2), c.rng.chance(1, 2));
  c.instance = {{"spec", to_json(spec)}};
  for (VertexId v : spec.outer().vertices()) {
    const auto out = deleteeq_check(spec, v);
    c.check("deletion at " + std::to_string(v), out.deletion);
    if (out.link) c.check("link at " + std::to_string(v), *out.link);
  }
}

template <VertexMask Mask>
void run_ghost(CaseContext& c, const VerifySuiteConfig& cfg) {
  auto spec = suite_spec<Mask>(c.rng, cfg, true, c.rng.chance(1, 2));
  if (!spec.outer().has_ghosts()) {
    // force a ghost: one extra outer vertex in no face
    const VertexId g = spec.outer().vertices().back() + 1;
    auto k = random_complex<Mask>(c.rng, {1, cfg.max_inner, c.rng.chance(1, 2)});
    auto l = random_subcomplex(c.rng, k);
    auto pairs = spec.pairs();
    pairs.push_back({std::move(k), std::move(l)});
    spec = PjpSpec<Mask>(add_ghosts(spec.outer(), {g}), std::move(pairs));
  }
  c.instance = {{"spec", to_json(spec)}};
  const auto& m = spec.outer();
  for (VertexId v : m.vertices()) {
    if (!m.contains({v})) c.check("ghost extension at " + std::to_string(v), ghost_extension_check(spec, v));
  }
}

template <VertexMask Mask>
void run_sequential(CaseContext& c, const VerifySuiteConfig& cfg) {
  const auto spec = suite_spec<Mask>(c.rng, cfg, c.rng.chance(1, 3), c.rng.chance(1, 3));
  c.instance = {{"spec", to_json(spec)}};
  try {
    const auto trace = sequential_pjp(spec);
    c.check("sequential equals direct", trace.stages.back() == polyhedral_join(spec));
    for (std::size_t i = 0; i + 1 < trace.stages.size(); ++i) {
      c.check("stage " + std::to_string(i) + " inside stage " + std::to_string(i + 1),
              is_subcomplex(deletion(trace.stages[i], trace.placeholders[i]), trace.stages[i + 1]));
    }
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::divergence) throw;
    c.check(std::string("sequential equals direct: ") + e.what(), false);
  }
}

template <VertexMask Mask>
void run_mmf(CaseContext& c, const VerifySuiteConfig& cfg) {
  const auto m = random_complex<Mask>(c.rng, {1, cfg.max_outer, false});
  std::vector<BasicComplex<Mask>> parts;
  Json list = Json::array();
  for (std::size_t i = 0; i < m.vertex_count(); ++i) {
    parts.push_back(random_complex<Mask>(c.rng, {1, cfg.max_inner, c.rng.chance(1, 4)}));
    list.push_back(to_json(parts.back()));
  }
  c.instance = {{"M", to_json(m)}, {"substitute", list}};
  c.check("mmf formula", mmf_substitution_check(m, parts));
}

template <VertexMask Mask>
void run_fullsub(CaseContext& c, const VerifySuiteConfig& cfg) {
  const auto spec = suite_spec<Mask>(c.rng, cfg, c.rng.chance(1, 2), c.rng.chance(1, 3));
  const auto& m = spec.outer();
  const auto n = facet_subset(c.rng, m);
  const auto full = full_subcomplex(m, c.rng.sample(m.vertices(), c.rng.uniform(0, m.vertex_count())));
  c.instance = {{"spec", to_json(spec)}, {"N", to_json(n)}, {"N_full", to_json(full)}};
  c.check("subcomplex", pjp_subcomplex_check(spec, n));
  c.check("full subcomplex", pjp_subcomplex_check(spec, full));

  // substitution on ghost-free complexes: part recovery and the copy of M
  const auto outer = random_complex<Mask>(c.rng, {1, cfg.max_outer, false});
  std::vector<BasicComplex<Mask>> parts;
  Json list = Json::array();
  for (std::size_t i = 0; i < outer.vertex_count(); ++i) {
    parts.push_back(random_complex<Mask>(c.rng, {1, cfg.max_inner, false}));
    list.push_back(to_json(parts.back()));
  }
  const auto sub = substitution_spec(outer, parts);
  std::vector<VertexId> choice;
  for (const auto& p : parts) choice.push_back(p.vertices()[c.rng.uniform(0, p.vertex_count() - 1)]);
  c.instance["substitution"] = {{"M", to_json(outer)}, {"substitute", list}};
  c.instance["choice"] = choice;
  for (std::size_t i = 0; i < sub.part_count(); ++i) {
    c.check("part " + std::to_string(i) + " recovered", substitution_part_check(sub, i));
  }
  const auto witness = substitution_copy_check(sub, choice);
  c.check("copy of M on chosen vertices", witness.has_value());
  if (witness) {
    std::vector<VertexId> chosen;
    for (const auto& [outer_v, flat] : *witness) chosen.push_back(flat);
    c.check("copy isomorphic to M", is_isomorphic(full_subcomplex(polyhedral_join(sub), chosen), outer).has_value());
  }
}

template <VertexMask Mask>
void run_kunneth(CaseContext& c, const VerifySuiteConfig& cfg) {
  const std::size_t bound = std::max(cfg.max_outer, cfg.max_inner) + 2;
  const auto a = random_complex<Mask>(c.rng, {1, bound, false});
  const auto raw = random_complex<Mask>(c.rng, {1, bound, false});
  std::map<VertexId, VertexId> shift;
  for (VertexId v : raw.vertices()) shift[v] = v + static_cast<VertexId>(bound);
  const auto b = relabel(raw, shift);
  c.instance = {{"K1", to_json(a)}, {"K2", to_json(b)}};
  c.check("kunneth", kunneth_check(a, b));
}

template <VertexMask Mask>
using SuiteBody = void (*)(CaseContext&, const VerifySuiteConfig&);

template <VertexMask Mask>
SuiteBody<Mask> suite_body(const std::string& name) {
  static const std::map<std::string, SuiteBody<Mask>> bodies = {
      {"join", &run_join<Mask>},       {"pushout", &run_pushout<Mask>},
      {"deleteeq", &run_deleteeq<Mask>}, {"ghost", &run_ghost<Mask>},
      {"sequential", &run_sequential<Mask>}, {"mmf", &run_mmf<Mask>},
      {"fullsub", &run_fullsub<Mask>}, {"kunneth", &run_kunneth<Mask>},
  };
  const auto it = bodies.find(name);
  if (it == bodies.end()) fail("unknown suite \"" + name + "\"");
  return it->second;
}

}  // namespace detail

/// Runs one named suite; "all" is handled by run_verify.
template <VertexMask Mask = WordMask>
SuiteResult run_suite(const std::string& name, std::uint64_t seed, const VerifySuiteConfig& cfg) {
  const auto body = detail::suite_body<Mask>(name);
  SuiteResult result{name, seed, cfg.cases, 0, {}};
  for (std::size_t i = 0; i < cfg.cases; ++i) {
    CaseContext c(splitmix64(seed ^ splitmix64(i)), result, i);
    body(c, cfg);
  }
  return result;
}

/// Suite "all" runs every suite, suite number t seeded with seed + t.
template <VertexMask Mask = WordMask>
std::vector<SuiteResult> run_verify(const VerifySuiteConfig& cfg) {
  if (cfg.max_outer == 0 || cfg.max_inner == 0) fail("bounds must be positive");
  std::vector<SuiteResult> out;
  if (cfg.suite == "all") {
    const auto& names = suite_names();
    for (std::size_t t = 0; t < names.size(); ++t) out.push_back(run_suite<Mask>(names[t], cfg.seed + t, cfg));
  } else {
    out.push_back(run_suite<Mask>(cfg.suite, cfg.seed, cfg));
  }
  return out;
}

/// Summary line per suite; a transcript block per failing check.
inline void write_transcript(std::ostream& os, const std::vector<SuiteResult>& results) {
  for (const auto& r : results) {
    os << "suite " << r.suite << " seed " << r.seed << ": " << r.cases << " cases, " << r.checks << " checks, "
       << r.failures.size() << " failures\n";
    for (const auto& f : r.failures) {
      os << "  FAIL case " << f.index << " (case seed " << f.case_seed << "): " << f.check << '\n';
      os << "    instance: " << f.instance.dump() << '\n';
    }
  }
}

}  // namespace polyjoin
