// polyjoin: command-line front end.
//
// Machine output goes to stdout, diagnostics to stderr. Exit codes:
//   0 ok, 1 verification failure, 2 bad input, 3 guardrail, 4 divergence.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "polyjoin/classify.hpp"
#include "polyjoin/homology.hpp"
#include "polyjoin/json_io.hpp"
#include "polyjoin/moment_angle.hpp"
#include "polyjoin/operations.hpp"
#include "polyjoin/polyhedral_join.hpp"
#include "polyjoin/verify.hpp"

namespace {

using namespace polyjoin;

constexpr int kExitVerify = 1;
constexpr int kExitInput = 2;
constexpr int kExitGuardrail = 3;
constexpr int kExitDivergence = 4;

struct Options {
  std::string spec_file;
  std::string complex_file;
  std::string other_file;
  std::string out_file;
  std::string method = "direct";
  std::string coeff = "q";
  std::string format = "json";
  std::string op;
  bool provenance = false;
  std::optional<VertexId> vertex;
  std::vector<VertexId> subset;
  bool have_subset = false;
  int dim = 0;
  VerifySuiteConfig verify;
  std::vector<std::size_t> bounds;
  std::size_t polygon_n = 0;
};

Json read_json_file(const std::string& path) {
  std::string text;
  if (path == "-") {
    text.assign(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
  } else {
    std::ifstream in(path);
    if (!in) fail(ErrorKind::parse, "cannot read " + path);
    text.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
  }
  return parse_json(text, path);
}

void emit(const Options& opt, const std::string& text) {
  if (opt.out_file.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(opt.out_file);
  if (!out) fail("cannot write " + opt.out_file);
  out << text;
}

void emit(const Options& opt, const Json& j) { emit(opt, j.dump() + "\n"); }

/// Complexes wider than one machine word, or guardrails raised past it, use
/// the multi-word mask.
bool needs_dense(std::size_t vertices, const Guardrails& guard) {
  return vertices > 64 || guard.construction_vertices > 64;
}

template <VertexMask Mask>
int build(const Options& opt, const Json& doc, const Guardrails& guard) {
  const auto spec = spec_from_json<Mask>(doc);
  const auto built = opt.method == "sequential" ? sequential_pjp(spec, guard).stages.back()
                                                : polyhedral_join(spec, guard);
  Json out = to_json(built);
  if (opt.provenance) out["provenance"] = provenance_json(spec);
  emit(opt, out);
  return 0;
}

template <VertexMask Mask>
int run_op(const Options& opt, const Json& doc, const Guardrails& guard) {
  const auto k = complex_from_json<Mask>(doc);
  const auto& op = opt.op;
  auto need_vertex = [&]() -> VertexId {
    if (!opt.vertex) fail("op " + op + " needs --vertex");
    return *opt.vertex;
  };
  auto other = [&]() {
    if (opt.other_file.empty()) fail("op " + op + " needs --other");
    return complex_from_json<Mask>(read_json_file(opt.other_file), "other");
  };
  if (op == "join") {
    emit(opt, to_json(join(k, other())));
  } else if (op == "link") {
    emit(opt, to_json(link(k, need_vertex())));
  } else if (op == "star") {
    emit(opt, to_json(star(k, need_vertex())));
  } else if (op == "delete") {
    emit(opt, to_json(deletion(k, need_vertex())));
  } else if (op == "full") {
    if (!opt.have_subset) fail("op full needs --subset");
    emit(opt, to_json(full_subcomplex(k, opt.subset)));
  } else if (op == "skeleton") {
    emit(opt, to_json(skeleton(k, opt.dim)));
  } else if (op == "mmf") {
    emit(opt, detail::simplices_json(minimal_missing_faces(k)));
  } else if (op == "flag") {
    emit(opt, Json{{"is_flag", is_flag(k)}});
  } else if (op == "kskel") {
    emit(opt, to_json(is_k_skeleton_of_flag(k)));
  } else if (op == "iso") {
    const auto b = other();
    const auto bij = is_isomorphic(k, b, guard.isomorphism_vertices);
    Json out{{"isomorphic", bij.has_value()}, {"bijection", nullptr}};
    if (bij) {
      out["bijection"] = Json::object();
      for (const auto& [from, to] : *bij) out["bijection"][std::to_string(from)] = to;
    }
    emit(opt, out);
  } else if (op == "euler") {
    emit(opt, Json{{"euler_characteristic", euler_characteristic(k)}});
  } else {
    fail("unknown op \"" + op + "\"");
  }
  return 0;
}

template <VertexMask Mask>
int run_homology(const Options& opt, const Json& doc, const Guardrails& guard) {
  const auto k = complex_from_json<Mask>(doc);
  if (opt.coeff == "z") {
    emit(opt, homology_json(homology_Z(k, guard)));
  } else if (opt.coeff == "q") {
    emit(opt, homology_json(betti_over_field(k, 0, guard)));
  } else if (opt.coeff.rfind("p:", 0) == 0) {
    std::uint64_t p = 0;
    try {
      std::size_t used = 0;
      p = std::stoull(opt.coeff.substr(2), &used);
      if (used != opt.coeff.size() - 2) throw std::invalid_argument("trailing characters");
    } catch (const std::exception&) {
      fail("--coeff p:<prime> expects an integer, got " + opt.coeff);
    }
    emit(opt, homology_json(betti_over_field(k, p, guard)));
  } else {
    fail("--coeff must be q, z or p:<prime>, got " + opt.coeff);
  }
  return 0;
}

template <VertexMask Mask>
int run_hochster(const Options& opt, const Json& doc, const Guardrails& guard) {
  const auto table = hochster_bigraded(complex_from_json<Mask>(doc), guard);
  if (opt.format == "text") {
    emit(opt, to_text(table));
  } else {
    emit(opt, to_json(table));
  }
  return 0;
}

template <VertexMask Mask>
int run_classify(const Options& opt, const Json& doc, bool from_spec, const Guardrails& guard) {
  std::optional<PjpSpec<Mask>> spec;
  BasicComplex<Mask> k;
  if (from_spec) {
    spec.emplace(spec_from_json<Mask>(doc));
    k = polyhedral_join(*spec, guard);
  } else {
    k = complex_from_json<Mask>(doc);
  }
  const auto report = classify(k, guard);
  Json out = to_json(report);
  std::string text = to_text(report);
  if (spec) {
    const auto checklist = hypothesis_report(*spec, guard);
    out["hypothesis_report"] = to_json(checklist);
    text += "\nhypothesis checklist:\n" + to_text(checklist);
    const bool clean = !spec->outer().has_ghosts() &&
                       std::none_of(spec->pairs().begin(), spec->pairs().end(),
                                    [](const ComplexPair<Mask>& p) { return p.K.has_ghosts(); });
    if (is_substitution(*spec) && clean) {
      std::vector<BasicComplex<Mask>> parts;
      for (const auto& p : spec->pairs()) parts.push_back(p.K);
      const auto findings = substitution_flag_verdicts(spec->outer(), parts, guard);
      out["substitution_findings"] = to_json(findings);
      text += "\n" + to_text(findings);
    }
  }
  emit(opt, opt.format == "text" ? text : out.dump() + "\n");
  return 0;
}

int run_verify(const Options& opt) {
  auto cfg = opt.verify;
  if (!opt.bounds.empty()) {
    if (opt.bounds.size() != 2) fail("--bounds expects two numbers: max outer, max inner");
    cfg.max_outer = opt.bounds[0];
    cfg.max_inner = opt.bounds[1];
  }
  if (cfg.suite != "all" && std::find(suite_names().begin(), suite_names().end(), cfg.suite) == suite_names().end()) {
    fail("unknown suite \"" + cfg.suite + "\"");
  }
  const auto results = cfg.max_outer * cfg.max_inner * 2 > 64 ? run_verify<DenseMask>(cfg) : run_verify<WordMask>(cfg);
  std::ostringstream os;
  write_transcript(os, results);
  const bool ok = std::all_of(results.begin(), results.end(), [](const SuiteResult& r) { return r.passed(); });
  os << (ok ? "PASS" : "FAIL") << '\n';
  emit(opt, os.str());
  return ok ? 0 : kExitVerify;
}

int run_polygon(const Options& opt, const Guardrails& guard) {
  const auto rep = polygon_connected_sum_check(opt.polygon_n, guard);
  if (opt.format == "text") {
    std::ostringstream os;
    os << "P" << rep.n << " totals:";
    for (auto b : rep.totals) os << ' ' << b;
    os << "\nduality: " << (rep.duality ? "holds" : "FAILS") << ", ends: " << (rep.ends ? "1, 1" : "FAIL") << '\n';
    os << "degree  computed  connected-sum formula\n";
    for (const auto& c : rep.middle) {
      os << std::setw(6) << c.degree << std::setw(10) << c.computed << std::setw(10) << c.formula
         << (c.match() ? "" : "  MISMATCH") << '\n';
    }
    emit(opt, os.str());
  } else {
    Json middle = Json::array();
    for (const auto& c : rep.middle) {
      middle.push_back({{"degree", c.degree}, {"computed", c.computed}, {"formula", c.formula}, {"match", c.match()}});
    }
    emit(opt, Json{{"n", rep.n},
                   {"totals", rep.totals},
                   {"duality", rep.duality},
                   {"ends", rep.ends},
                   {"middle", middle},
                   {"formula_matches", rep.formula_matches()}});
  }
  // The formula comparison is informational; only the exact checks decide.
  return rep.duality && rep.ends ? 0 : kExitVerify;
}

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::guardrail:
      return kExitGuardrail;
    case ErrorKind::divergence:
      return kExitDivergence;
    case ErrorKind::parse:
    case ErrorKind::invalid_argument:
      break;
  }
  return kExitInput;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Polyhedral join products, homology and moment-angle tables"};
  app.require_subcommand(1);
  Options opt;

  auto* build_cmd = app.add_subcommand("build", "Construct (K,L)^{*M} from a spec file");
  build_cmd->add_option("--spec", opt.spec_file, "Spec JSON (- for stdin)")->required();
  build_cmd->add_option("--method", opt.method)->check(CLI::IsMember({"direct", "sequential"}));
  build_cmd->add_option("--out", opt.out_file, "Write the complex here instead of stdout");
  build_cmd->add_flag("--provenance", opt.provenance, "Add the flat label -> [outer, inner] map");

  auto* op_cmd = app.add_subcommand("op", "Simplicial operation on a complex file");
  op_cmd->add_option("name", opt.op)
      ->required()
      ->check(CLI::IsMember({"join", "link", "star", "delete", "full", "skeleton", "mmf", "flag", "kskel", "iso",
                             "euler"}));
  op_cmd->add_option("--complex", opt.complex_file)->required();
  op_cmd->add_option("--other", opt.other_file, "Second complex for join and iso");
  op_cmd->add_option("--vertex", opt.vertex);
  op_cmd->add_option("--subset", opt.subset)->delimiter(',')->each([&](const std::string&) { opt.have_subset = true; });
  op_cmd->add_option("--dim", opt.dim);
  op_cmd->add_option("--out", opt.out_file);

  auto* hom_cmd = app.add_subcommand("homology", "Reduced simplicial homology");
  hom_cmd->add_option("--complex", opt.complex_file)->required();
  hom_cmd->add_option("--coeff", opt.coeff, "q, z or p:<prime>");
  hom_cmd->add_option("--out", opt.out_file);

  auto* hoch_cmd = app.add_subcommand("hochster", "Bigraded Betti numbers of Z_K");
  hoch_cmd->add_option("--complex", opt.complex_file)->required();
  hoch_cmd->add_option("--format", opt.format)->check(CLI::IsMember({"json", "text"}));
  hoch_cmd->add_option("--out", opt.out_file);

  auto* cls_cmd = app.add_subcommand("classify", "Flag / skeleton classification and hypothesis checklist");
  auto* cls_complex = cls_cmd->add_option("--complex", opt.complex_file);
  auto* cls_spec = cls_cmd->add_option("--spec", opt.spec_file);
  cls_complex->excludes(cls_spec);
  cls_cmd->add_option("--format", opt.format)->check(CLI::IsMember({"json", "text"}));
  cls_cmd->add_option("--out", opt.out_file);

  auto* ver_cmd = app.add_subcommand("verify", "Seeded randomized identity suites");
  ver_cmd->add_option("--suite", opt.verify.suite);
  ver_cmd->add_option("--seed", opt.verify.seed);
  ver_cmd->add_option("--cases", opt.verify.cases);
  ver_cmd->add_option("--bounds", opt.bounds, "max outer vertices, max inner vertices")->delimiter(',');
  ver_cmd->add_option("--out", opt.out_file);

  auto* poly_cmd = app.add_subcommand("polygon", "Z_{P_n} duality check and connected-sum comparison");
  poly_cmd->add_option("--n", opt.polygon_n)->required();
  poly_cmd->add_option("--format", opt.format)->check(CLI::IsMember({"json", "text"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  try {
    const auto guard = Guardrails::from_env();
    if (*build_cmd) {
      const auto doc = read_json_file(opt.spec_file);
      return needs_dense(spec_vertex_count(doc), guard) ? build<DenseMask>(opt, doc, guard)
                                                        : build<WordMask>(opt, doc, guard);
    }
    if (*op_cmd || *hom_cmd || *hoch_cmd) {
      const auto doc = read_json_file(opt.complex_file);
      const bool dense = needs_dense(complex_vertex_count(doc), guard);
      if (*op_cmd) return dense ? run_op<DenseMask>(opt, doc, guard) : run_op<WordMask>(opt, doc, guard);
      if (*hom_cmd) return dense ? run_homology<DenseMask>(opt, doc, guard) : run_homology<WordMask>(opt, doc, guard);
      return dense ? run_hochster<DenseMask>(opt, doc, guard) : run_hochster<WordMask>(opt, doc, guard);
    }
    if (*cls_cmd) {
      const bool from_spec = !opt.spec_file.empty();
      if (!from_spec && opt.complex_file.empty()) fail("classify needs --complex or --spec");
      const auto doc = read_json_file(from_spec ? opt.spec_file : opt.complex_file);
      const std::size_t n = from_spec ? spec_vertex_count(doc) : complex_vertex_count(doc);
      return needs_dense(n, guard) ? run_classify<DenseMask>(opt, doc, from_spec, guard)
                                   : run_classify<WordMask>(opt, doc, from_spec, guard);
    }
    if (*ver_cmd) return run_verify(opt);
    if (*poly_cmd) return run_polygon(opt, guard);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code(e.kind());
  } catch (const Json::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  }
  return kExitInput;
}
