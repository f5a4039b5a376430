#include <gtest/gtest.h>

#include "polyjoin/json_io.hpp"
#include "polyjoin/random.hpp"

using namespace polyjoin;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorKind::divergence;
}

const char* kP4 = R"({"vertices":[1,2,3,4],"facets":[[1,2],[2,3],[3,4],[1,4]]})";

}  // namespace

TEST(JsonIo, ComplexCanonicalForm) {
  const auto k = complex_from_json<WordMask>(parse_json(R"({"facets":[[4,1],[3,4],[2,3],[2,1]]})", "t"));
  EXPECT_EQ(k, polygon(4));
  EXPECT_EQ(to_json(k).dump(), R"({"vertices":[1,2,3,4],"facets":[[1,2],[1,4],[2,3],[3,4]]})");
  EXPECT_EQ(to_json(empty_complex<WordMask>()).dump(), R"({"vertices":[],"facets":[[]]})");
  const auto ghosts = complex_from_json<WordMask>(parse_json(R"({"vertices":[1,2],"facets":[[]]})", "t"));
  EXPECT_TRUE(ghosts.is_empty_complex());
  EXPECT_EQ(ghosts.vertex_count(), 2u);
}

TEST(JsonIo, ComplexRoundTrip) {
  Rng rng(11);
  for (int t = 0; t < 50; ++t) {
    const auto k = random_complex(rng, {1, 8, t % 2 == 0});
    EXPECT_EQ(complex_from_json<WordMask>(parse_json(to_json(k).dump(), "t")), k);
    const LargeComplex big(k.vertices(), k.facets());
    EXPECT_EQ(to_json(big), to_json(k));
  }
}

TEST(JsonIo, ParseErrors) {
  EXPECT_EQ(kind_of([] { parse_json("{", "t"); }), ErrorKind::parse);
  EXPECT_EQ(kind_of([] { complex_from_json<WordMask>(parse_json(R"({"vertices":[1]})", "t")); }), ErrorKind::parse);
  EXPECT_EQ(kind_of([] { complex_from_json<WordMask>(parse_json(R"({"facets":[[1,-2]]})", "t")); }),
            ErrorKind::parse);
  EXPECT_EQ(kind_of([] { complex_from_json<WordMask>(parse_json(R"({"facets":[["a"]]})", "t")); }),
            ErrorKind::parse);
  EXPECT_EQ(kind_of([] { complex_from_json<WordMask>(parse_json(R"({"vertices":[1],"facets":[[2]]})", "t")); }),
            ErrorKind::invalid_argument);
}

TEST(JsonIo, SpecForms) {
  const std::string p4 = kP4;
  const auto sub = spec_from_json<WordMask>(
      parse_json(R"({"M":{"facets":[[1,2],[2,3],[1,3]]},"substitute":[)" + p4 + "," + p4 + "," + p4 + "]}", "t"));
  EXPECT_TRUE(is_substitution(sub));
  EXPECT_EQ(polyhedral_join(sub).vertex_count(), 12u);

  const auto comp = spec_from_json<WordMask>(
      parse_json(R"({"M":{"facets":[[1,2,3]]},"compose":[{"facets":[[1]]},{"facets":[[1]]},{"facets":[[1]]}]})", "t"));
  EXPECT_EQ(polyhedral_join(comp), simplex_complex(3));

  const auto round = spec_from_json<WordMask>(parse_json(to_json(sub).dump(), "t"));
  EXPECT_EQ(polyhedral_join(round), polyhedral_join(sub));

  const auto prov = provenance_json(sub);
  EXPECT_EQ(prov["5"], Json::array({2, 1}));
  EXPECT_EQ(prov.size(), 12u);
}

TEST(JsonIo, SpecErrorsNameTheField) {
  try {
    spec_from_json<WordMask>(parse_json(R"({"M":{"facets":[[1,2]]},"pairs":[{"K":{"facets":[[1]]},"L":{"vertices":[1],"facets":[[]]}}]})", "t"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::invalid_argument);
    EXPECT_NE(std::string(e.what()).find("pairs"), std::string::npos);
  }
  try {
    spec_from_json<WordMask>(parse_json(R"({"M":{"facets":[[1]]},"pairs":[{"K":{"facets":[[1]]}}]})", "t"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::parse);
    EXPECT_NE(std::string(e.what()).find("spec.pairs[0]"), std::string::npos);
  }
  EXPECT_EQ(kind_of([] { spec_from_json<WordMask>(parse_json(R"({"substitute":[]})", "t")); }), ErrorKind::parse);
  EXPECT_EQ(kind_of([] {
              spec_from_json<WordMask>(parse_json(R"({"M":{"facets":[[1]]},"substitute":[],"compose":[]})", "t"));
            }),
            ErrorKind::parse);
}

TEST(JsonIo, VertexCounts) {
  EXPECT_EQ(complex_vertex_count(parse_json(kP4, "t")), 4u);
  EXPECT_EQ(complex_vertex_count(parse_json(R"({"vertices":[9],"facets":[[1,2]]})", "t")), 3u);
  const std::string p4 = kP4;
  EXPECT_EQ(spec_vertex_count(parse_json(R"({"M":{"facets":[[1,2]]},"substitute":[)" + p4 + "," + p4 + "]}", "t")),
            8u);
}

TEST(JsonIo, Reports) {
  Json h = homology_json(homology_Z(boundary_simplex(4)));
  EXPECT_EQ(h.dump(), R"([{"degree":2,"rank":1,"torsion":[]}])");
  EXPECT_EQ(homology_json(std::vector<std::size_t>{0, 0, 1}).dump(), R"([{"degree":1,"rank":1,"torsion":[]}])");
  EXPECT_EQ(to_json(BigInt(1) << 70), Json("1180591620717411303424"));

  const auto table = hochster_bigraded(polygon(4));
  EXPECT_EQ(to_json(table).dump(),
            R"({"bigraded":[{"i":1,"j":2,"rank":2},{"i":2,"j":4,"rank":1}],"totals":[1,0,0,2,0,0,1]})");
  const auto text = to_text(table);
  EXPECT_NE(text.find("totals: 1 0 0 2 0 0 1"), std::string::npos);

  const auto rep = to_json(classify(boundary_simplex(3)));
  EXPECT_EQ(rep["k_skeleton_of_flag"].dump(), R"({"value":true,"k":1})");
  EXPECT_EQ(rep["notes"][0]["lemma"], "kskelmis");
}
