#include <gtest/gtest.h>

#include <sstream>

#include "polyjoin/verify.hpp"

using namespace polyjoin;

namespace {

std::string transcript(const VerifySuiteConfig& cfg) {
  std::ostringstream os;
  write_transcript(os, run_verify(cfg));
  return os.str();
}

}  // namespace

TEST(Verify, EverySuitePassesSmall) {
  VerifySuiteConfig cfg;
  cfg.seed = 3;
  cfg.cases = 20;
  const auto results = run_verify(cfg);
  ASSERT_EQ(results.size(), suite_names().size());
  for (std::size_t t = 0; t < results.size(); ++t) {
    EXPECT_EQ(results[t].suite, suite_names()[t]);
    EXPECT_EQ(results[t].seed, 3u + t);
    EXPECT_TRUE(results[t].passed()) << results[t].suite;
    EXPECT_GE(results[t].checks, results[t].cases);
  }
}

TEST(Verify, Deterministic) {
  VerifySuiteConfig cfg{"all", 42, 10, 4, 4};
  EXPECT_EQ(transcript(cfg), transcript(cfg));
  VerifySuiteConfig other = cfg;
  other.seed = 43;
  // the check counts depend on the instances drawn
  EXPECT_NE(transcript(cfg), transcript(other));
}

TEST(Verify, DenseMaskMatchesWordMask) {
  VerifySuiteConfig cfg{"all", 5, 10, 3, 3};
  std::ostringstream a;
  std::ostringstream b;
  write_transcript(a, run_verify<WordMask>(cfg));
  write_transcript(b, run_verify<DenseMask>(cfg));
  EXPECT_EQ(a.str(), b.str());
}

TEST(Verify, TranscriptFormat) {
  SuiteResult r{"mmf", 7, 2, 0, {}};
  CaseContext c(99, r, 1);
  c.instance = {{"M", to_json(polygon(4))}};
  c.check("ok", true);
  c.check("broken", false);
  std::ostringstream os;
  write_transcript(os, {r});
  EXPECT_EQ(os.str(),
            "suite mmf seed 7: 2 cases, 2 checks, 1 failures\n"
            "  FAIL case 1 (case seed 99): broken\n"
            "    instance: {\"M\":{\"vertices\":[1,2,3,4],\"facets\":[[1,2],[1,4],[2,3],[3,4]]}}\n");
  EXPECT_FALSE(r.passed());
}

TEST(Verify, Errors) {
  EXPECT_THROW(run_verify(VerifySuiteConfig{"nope", 1, 1, 4, 4}), Error);
  EXPECT_THROW(run_verify(VerifySuiteConfig{"join", 1, 1, 0, 4}), Error);
  try {
    run_verify(VerifySuiteConfig{"join", 1, 5, 8, 8});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::guardrail);
  }
}
