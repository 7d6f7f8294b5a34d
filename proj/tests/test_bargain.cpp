#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "icbargain/bargain.hpp"
#include "icbargain/error.hpp"
#include "icbargain/gdof.hpp"
#include "oracles.hpp"

using namespace icbargain;

namespace {

RegularityReport report_for(const ChannelParams& ch) {
  const auto p = hk_problem(ch);
  return is_regular(ch, std::get<Polytope>(p.feasible), p.d0);
}

}  // namespace

TEST_CASE("essential: MAC always") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> db(-10.0, 40.0);
  for (int i = 0; i < 200; ++i) {
    const double p1 = db_to_linear(db(rng));
    const double p2 = db_to_linear(db(rng));
    CHECK(is_essential({mac_region(p1, p2), disagreement_point({1.0, 1.0, p1, p2})}));
  }
}

TEST_CASE("essential: strong H-K(0,0) always") {
  oracle::ChannelSampler rs(6);
  for (int i = 0; i < 200; ++i) CHECK(is_essential(hk_problem(rs.strong())));
}

TEST_CASE("essential: d0 on a sum face is not") {
  const GdofParams theta(1.0, 0.4, 0.4);
  const auto reg = gdof_region(theta);
  const auto d0 = gdof_disagreement(theta);
  CHECK(d0.u1 == doctest::Approx(0.6));
  CHECK(d0.u2 == doctest::Approx(0.6));
  CHECK_FALSE(is_essential({reg.polytope, d0}));
}

TEST_CASE("essential: efficient point and interior point") {
  const auto reg = mac_region(10.0, 10.0);
  const auto ext = extreme_points(reg);
  CHECK_FALSE(is_essential({reg, ext[0]}));
  CHECK(is_essential({reg, {0.1, 0.1}}));
  const auto tdm = tdm_region(10.0, 10.0);
  CHECK(is_essential({tdm, {0.5, 0.5}}));
  CHECK_FALSE(is_essential({tdm, tdm.at(0.3)}));
}

TEST_CASE("regularity examples") {
  SUBCASE("a = b = 1 is regular") {
    const auto rep = report_for({1.0, 1.0, 100.0, 100.0});
    CHECK(rep.essential);
    CHECK(rep.regular);
    CHECK(rep.structurally_regular);
    CHECK(rep.failed_conditions.empty());
  }
  SUBCASE("a = 3, b = 5 is not") {
    const auto rep = report_for({3.0, 5.0, 100.0, 100.0});
    CHECK(rep.essential);
    CHECK_FALSE(rep.regular);
    CHECK_FALSE(rep.structurally_regular);
    CHECK_FALSE(rep.failed_conditions.empty());
  }
  SUBCASE("mixed a = 0.2, b = 1.2 at 10/20 dB is regular") {
    const auto rep = report_for({0.2, 1.2, 10.0, 100.0});
    CHECK(rep.regular);
    CHECK(rep.structurally_regular);
  }
  SUBCASE("weak a = 0.2, b = 0.5 at 20/20 dB is regular") {
    const auto rep = report_for({0.2, 0.5, 100.0, 100.0});
    CHECK(rep.regular);
    CHECK(rep.structurally_regular);
  }
  SUBCASE("strong capacity region is accepted as the strong region") {
    const ChannelParams ch(1.0, 1.0, 10.0, 10.0);
    const auto rep = is_regular(ch, strong_capacity_region(ch), disagreement_point(ch));
    CHECK(rep.regular);
  }
}

TEST_CASE("is_regular rejects a foreign region") {
  const ChannelParams ch(0.2, 0.5, 100.0, 100.0);
  try {
    is_regular(ch, mac_region(100.0, 100.0), disagreement_point(ch));
    FAIL("expected precondition error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kPrecondition);
  }
  CHECK_THROWS_AS(is_regular(ch, hk_region(ch, {0.5, 0.5}), disagreement_point(ch)), Error);
}

TEST_CASE("closed-form and structural regularity agree") {
  oracle::ChannelSampler rs(77);
  rs.lo_db = 0.0;
  rs.hi_db = 30.0;
  int regular = 0;
  int irregular = 0;
  for (int i = 0; i < 1500; ++i) {
    const auto ch = i % 3 == 0 ? rs.strong() : (i % 3 == 1 ? rs.weak() : rs.mixed());
    const auto out = phase1(ch);
    if (!out.cooperate) continue;
    const auto rep = report_for(ch);
    CHECK(rep.essential);
    CHECK(rep.regular == rep.structurally_regular);
    CHECK(rep.regular == rep.failed_conditions.empty());
    if (rep.regular) {
      CHECK(rep.essential);
      ++regular;
    } else {
      ++irregular;
    }
  }
  CHECK(regular > 20);
  CHECK(irregular > 20);
}

TEST_CASE("strong regularity on the a = b = 1 line only") {
  for (double p : {1.0, 10.0, 1000.0}) {
    CHECK(report_for({1.0, 1.0, p, 2 * p}).regular);
    CHECK_FALSE(report_for({1.0, 1.5, p, 2 * p}).regular);
    CHECK_FALSE(report_for({1.5, 1.0, p, 2 * p}).regular);
  }
}

TEST_CASE("phase 1 examples") {
  SUBCASE("mixed instance cooperates with a one-sided split") {
    const auto out = phase1({0.2, 1.2, 10.0, 100.0});
    CHECK(out.cooperate);
    CHECK(out.reason == Phase1Reason::kOk);
    REQUIRE(out.split.has_value());
    CHECK(out.split->alpha == 0.0);
    CHECK(out.split->beta == doctest::Approx(0.05).epsilon(1e-14));
    CHECK(out.scheme == "HK(0,0.05)");
  }
  SUBCASE("noisy instance fails") {
    const auto out = phase1({0.01, 0.01, 1.0, 1.0});
    CHECK_FALSE(out.cooperate);
    CHECK(out.reason == Phase1Reason::kNoisyOptimal);
    CHECK_FALSE(out.split.has_value());
    REQUIRE(out.failed_conditions.size() == 1);
    CHECK(out.failed_conditions[0].lhs == doctest::Approx(0.202));
  }
  SUBCASE("weak with aP2 <= 1 fails with a degenerate split") {
    const auto out = phase1({0.5, 0.5, 100.0, 2.0});
    CHECK_FALSE(out.cooperate);
    CHECK(out.reason == Phase1Reason::kSplitDegenerate);
    REQUIRE_FALSE(out.failed_conditions.empty());
    CHECK(out.failed_conditions[0].name == "aP2 > 1");
  }
  SUBCASE("mixed with aP2 <= 1 fails") {
    const auto out = phase1({0.005, 2.0, 100.0, 100.0});
    CHECK(out.reason == Phase1Reason::kSplitDegenerate);
  }
  SUBCASE("mixed b-weak uses bP1") {
    const auto out = phase1({2.0, 0.005, 100.0, 100.0});
    CHECK(out.reason == Phase1Reason::kSplitDegenerate);
    CHECK(out.failed_conditions[0].name == "bP1 > 1");
  }
  SUBCASE("strong always cooperates with (0,0)") {
    oracle::ChannelSampler rs(8);
    for (int i = 0; i < 100; ++i) {
      const auto out = phase1(rs.strong());
      CHECK(out.cooperate);
      CHECK(out.split->alpha == 0.0);
      CHECK(out.split->beta == 0.0);
    }
  }
}

TEST_CASE("phase 1 cooperation implies an essential problem") {
  oracle::ChannelSampler rs(9);
  rs.lo_db = -5.0;
  int coop = 0;
  for (int i = 0; i < 900; ++i) {
    const auto ch = i % 3 == 0 ? rs.strong() : (i % 3 == 1 ? rs.weak() : rs.mixed());
    const auto out = phase1(ch);
    CHECK(out.cooperate == (out.reason == Phase1Reason::kOk));
    CHECK(out.split.has_value() == out.cooperate);
    if (!out.cooperate) continue;
    ++coop;
    CHECK(is_essential({hk_region(ch, *out.split), disagreement_point(ch)}));
  }
  CHECK(coop > 300);
}

TEST_CASE("frontier monotonicity helper") {
  CHECK(frontier_strictly_monotone({{{0, 2}, {1, 1}, {2, 0}}}));
  CHECK_FALSE(frontier_strictly_monotone({{{0, 2}, {1, 2}, {2, 0}}}));
  CHECK_FALSE(frontier_strictly_monotone({{{0, 2}, {0, 1}}}));
  CHECK_FALSE(frontier_strictly_monotone({{{0, 2}}}));
}
