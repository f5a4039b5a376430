// Acceptance run: one PASS/FAIL line per criterion, exit status 0 iff all pass.

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "polyjoin/classify.hpp"
#include "polyjoin/homology.hpp"
#include "polyjoin/moment_angle.hpp"
#include "polyjoin/random.hpp"
#include "polyjoin/verify.hpp"

using namespace polyjoin;

namespace {

using Sizes = std::vector<std::size_t>;

struct Outcome {
  bool ok = true;
  std::string note;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      note = what;
    }
  }
};

std::string join_sizes(const Sizes& v) {
  std::ostringstream os;
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  return os.str();
}

Outcome golden_polygons() {
  Outcome o;
  for (auto [n, want, limit] : {std::tuple{4, Sizes{1, 0, 0, 2, 0, 0, 1}, 1.0},
                                std::tuple{5, Sizes{1, 0, 0, 5, 5, 0, 0, 1}, 1.0}}) {
    const auto start = std::chrono::steady_clock::now();
    const auto got = total_betti_ZK(polygon(static_cast<std::size_t>(n)));
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    o.require(got == want, "P" + std::to_string(n) + " totals " + join_sizes(got));
    o.require(secs < limit, "P" + std::to_string(n) + " took " + std::to_string(secs) + " s");
  }
  if (o.ok) o.note = "P4 (1,0,0,2,0,0,1), P5 (1,0,0,5,5,0,0,1)";
  return o;
}

Outcome polygon_sweep() {
  Outcome o;
  std::string mismatches;
  for (std::size_t n = 5; n <= 10; ++n) {
    const auto rep = polygon_connected_sum_check(n);
    o.require(rep.duality, "P" + std::to_string(n) + " duality fails");
    o.require(rep.ends, "P" + std::to_string(n) + " end degrees not 1");
    if (!rep.formula_matches()) mismatches += " " + std::to_string(n);
  }
  if (o.ok) o.note = "duality and ends exact for n=5..10; connected-sum formula MISMATCH flagged for n =" + mismatches;
  return o;
}

Outcome verify_suite(const std::string& suite, std::uint64_t seed, std::size_t cases) {
  Outcome o;
  const auto results = run_verify(VerifySuiteConfig{suite, seed, cases, 4, 4});
  std::size_t checks = 0;
  for (const auto& r : results) {
    checks += r.checks;
    if (!r.passed()) {
      std::ostringstream os;
      write_transcript(os, {r});
      o.require(false, os.str());
    }
  }
  if (o.ok) o.note = std::to_string(results.size()) + " suite(s), " + std::to_string(checks) + " checks";
  return o;
}

Outcome homology_engine() {
  Outcome o;
  for (std::size_t n = 2; n <= 5; ++n) {
    const auto groups = homology_Z(boundary_simplex(n + 1));
    for (const auto& g : groups) {
      const bool top = g.degree == static_cast<int>(n) - 1;
      o.require(top ? (g.rank == 1 && g.torsion.empty()) : g.trivial(),
                "boundary of the " + std::to_string(n) + "-simplex, degree " + std::to_string(g.degree));
    }
  }
  const auto rp2 = SimplicialComplex::from_facets({{1, 2, 3}, {1, 3, 4}, {1, 4, 5}, {1, 5, 6}, {1, 2, 6},
                                                   {2, 3, 5}, {2, 4, 5}, {2, 4, 6}, {3, 4, 6}, {3, 5, 6}});
  for (const auto& g : homology_Z(rp2)) {
    o.require(g.degree == 1 ? (g.rank == 0 && g.torsion == std::vector<BigInt>{2}) : g.trivial(),
              "RP2 integral homology in degree " + std::to_string(g.degree));
  }
  o.require(betti_over_field(rp2, 2) == Sizes{0, 0, 1, 1}, "RP2 over F2");
  o.require(betti_over_field(rp2, 0) == Sizes{0, 0, 0, 0}, "RP2 over Q");

  Rng rng(2024);
  for (int t = 0; t < 500; ++t) {
    const auto k = random_complex(rng, {1, 8, t % 3 == 0});
    const auto cc = chain_complex(k);  // throws on D.D != 0
    const auto q = betti_over_field(k);
    const auto z = homology_Z(k);
    long long alt = 0;
    for (std::size_t e = 0; e < q.size(); ++e) {
      o.require(q[e] == z[e].rank, "case " + std::to_string(t) + ": Q rank differs from Z free rank");
      alt += (e % 2 == 1 ? 1 : -1) * static_cast<long long>(q[e]);
    }
    o.require(alt == euler_characteristic(k) - 1, "case " + std::to_string(t) + ": Euler characteristic");
    o.require(cc.basis_size.size() == q.size(), "case " + std::to_string(t) + ": degree range");
  }
  if (o.ok) o.note = "spheres, RP2 over Z/F2/Q, 500 random complexes";
  return o;
}

Outcome kunneth() {
  Outcome o;
  Rng rng(6);
  for (int t = 0; t < 50; ++t) {
    const auto a = random_complex(rng, {1, 6, false});
    const auto raw = random_complex(rng, {1, 6, false});
    std::map<VertexId, VertexId> shift;
    for (VertexId v : raw.vertices()) shift[v] = v + 6;
    o.require(kunneth_check(a, relabel(raw, shift)), "pair " + std::to_string(t));
  }
  if (o.ok) o.note = "50 random pairs";
  return o;
}

Outcome connectivity() {
  Outcome o;
  Rng rng(7);
  for (int t = 0; t < 200; ++t) {
    const auto k = random_complex(rng, {1, 8, false});
    const auto totals = total_betti_ZK(k);
    auto beta = [&](std::size_t l) -> std::size_t { return l < totals.size() ? totals[l] : 0; };
    const std::size_t n = k.vertex_count();
    const std::size_t non_edges = n * (n - 1) / 2 - faces(k, 1).size();
    o.require(beta(1) == 0 && beta(2) == 0, "complex " + std::to_string(t) + ": degree 1 or 2 nonzero");
    o.require(beta(3) == non_edges, "complex " + std::to_string(t) + ": degree 3 differs from non-edge count");
  }
  if (o.ok) o.note = "200 random ghost-free complexes";
  return o;
}

Outcome classification() {
  Outcome o;
  const std::vector<SimplicialComplex> parts = {polygon(4), polygon(4), polygon(4)};
  const auto spec = substitution_spec(boundary_simplex(3), parts);
  const auto rep = classify(polyhedral_join(spec));
  o.require(!rep.is_flag, "built complex is flag");
  o.require(!rep.k_skeleton.value, "built complex is a skeleton of a flag complex");
  o.require(!rep.torsion_flag, "torsion found");
  const auto checklist = hypothesis_report(spec);
  o.require(checklist.overall == Overall::verified && checklist.lemma == "subpreserve",
            "hypothesis report " + to_string(checklist.overall) + " " + checklist.lemma);

  Rng rng(8);
  std::size_t held = 0;
  for (int t = 0; t < 100; ++t) {
    const auto inst = random_substitution(rng);
    for (const auto& f : substitution_flag_verdicts(inst.outer, inst.parts)) {
      o.require(f.sound(), "instance " + std::to_string(t) + ": " + f.lemma + " conclusion fails");
      held += f.hypothesis_held ? 1 : 0;
    }
  }
  if (o.ok) {
    o.note = "dD2(P4,P4,P4) not flag, no k, torsion-free, VERIFIED (subpreserve); " + std::to_string(held) +
             " lemma instantiations sound over 100 instances";
  }
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    std::string name;
    std::function<Outcome()> run;
    double limit;  ///< seconds, 0 for none
  };
  const std::vector<Criterion> criteria = {
      {"polygon golden values", golden_polygons, 2.0},
      {"polygon duality sweep", polygon_sweep, 30.0},
      {"identity suites (verify all, seed 42)", [] { return verify_suite("all", 42, 100); }, 60.0},
      {"minimal missing face formula (verify mmf, seed 7)", [] { return verify_suite("mmf", 7, 100); }, 0.0},
      {"homology engine", homology_engine, 60.0},
      {"Kunneth convolution", kunneth, 0.0},
      {"connectivity of Z_K", connectivity, 0.0},
      {"substitution classification", classification, 0.0},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (criteria[i].limit > 0 && secs > criteria[i].limit) o = {false, "over the time limit"};
    std::printf("%s criterion %zu: %s (%.2f s) - %s\n", o.ok ? "PASS" : "FAIL", i + 1, criteria[i].name.c_str(), secs,
                o.note.c_str());
    failed += o.ok ? 0 : 1;
  }
  return failed == 0 ? 0 : 1;
}
