#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "icbargain/error.hpp"
#include "icbargain/gdof.hpp"
#include "oracles.hpp"

using namespace icbargain;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::kInternal;
}

double bound(const GdofRegion& r, const std::string& name) {
  for (const auto& [n, v] : r.bounds) {
    if (n == name) return v;
  }
  FAIL("missing bound " << name);
  return 0.0;
}

}  // namespace

TEST_CASE("parameter validation") {
  CHECK(code_of([] { GdofParams(0.0, 1.0, 1.0); }) == ErrorCode::kDomain);
  CHECK(code_of([] { GdofParams(1.0, -1.0, 1.0); }) == ErrorCode::kDomain);
  CHECK(code_of([] { GdofParams(1.0, 1.0, std::nan("")); }) == ErrorCode::kDomain);
  const auto th = GdofParams::from_snr(100.0, 1000.0, 10.0, 100.0);
  CHECK(th.theta1() == doctest::Approx(1.5));
  CHECK(th.theta2() == doctest::Approx(0.5));
  CHECK(th.theta3() == doctest::Approx(1.0));
  CHECK(code_of([] { GdofParams::from_snr(1.0, 10.0, 10.0, 10.0); }) == ErrorCode::kDomain);
}

TEST_CASE("regime classification") {
  CHECK(classify_gdof({1.0, 1.2, 1.5}) == GdofRegime::kD1Strong);
  CHECK(classify_gdof({1.0, 1.0, 1.0}) == GdofRegime::kD1Strong);
  CHECK(classify_gdof({1.0, 0.5, 0.5}) == GdofRegime::kD2Weak);
  CHECK(classify_gdof({1.0, 1.2, 0.8}) == GdofRegime::kD3Mixed);
  CHECK(code_of([] { classify_gdof({1.0, 0.5, 1.5}); }) == ErrorCode::kUnsupportedRegime);
  CHECK(code_of([] { gdof_region({1.0, 0.5, 1.5}); }) == ErrorCode::kUnsupportedRegime);
  CHECK(code_of([] { gdof_phase1({1.0, 0.5, 1.5}); }) == ErrorCode::kUnsupportedRegime);
}

TEST_CASE("region bounds") {
  const auto strong = gdof_region({1.0, 1.2, 1.5});
  CHECK(strong.regime == GdofRegime::kD1Strong);
  CHECK(bound(strong, "varphi1") == doctest::Approx(1.2).epsilon(1e-15));
  REQUIRE(strong.polytope.rows.size() == 1);
  CHECK(strong.polytope.rows[0].c2 == 1.0);

  const auto mixed = gdof_region({1.0, 1.2, 0.8});
  CHECK(bound(mixed, "varphi5") == doctest::Approx(1.2).epsilon(1e-15));
  CHECK(bound(mixed, "varphi6") == doctest::Approx(2.2).epsilon(1e-15));
  REQUIRE(mixed.polytope.rows.size() == 2);
  CHECK(mixed.polytope.rows[1].c2 == 2.0);

  const auto weak = gdof_region({1.0, 0.5, 0.5});
  CHECK(bound(weak, "varphi2") == doctest::Approx(1.0).epsilon(1e-15));
  // The sum face of D2 is the TDM line here.
  const auto tdm = gdof_tdm_region();
  const auto wf = efficient_frontier(weak.polytope).points;
  for (const auto& v : extreme_points(weak.polytope)) {
    CHECK(v.u1 + v.u2 == doctest::Approx(1.0).epsilon(1e-12));
  }
  CHECK(wf.size() >= 2);
  CHECK(tdm.polytope.rows[0].bound == 1.0);

  const auto scaled = gdof_region({2.0, 0.5, 0.5});
  CHECK(scaled.polytope.rows[0].c2 == 2.0);
  CHECK(scaled.polytope.rows[2].c2 == 4.0);
  for (const auto& r : {strong, mixed, weak, scaled}) {
    CHECK(r.polytope.caps.u1 == 1.0);
    CHECK(r.polytope.caps.u2 == 1.0);
    CHECK(r.polytope.contains({0.0, 0.0}));
  }
}

TEST_CASE("disagreement exponents") {
  const auto d = gdof_disagreement({1.0, 1.2, 0.8});
  CHECK(d.u1 == 0.0);
  CHECK(d.u2 == doctest::Approx(0.2).epsilon(1e-14));
  const auto e = gdof_disagreement({1.0, 0.3, 1.4});
  CHECK(e.u1 == doctest::Approx(0.7).epsilon(1e-15));
  CHECK(e.u2 == 0.0);
  const auto z = gdof_disagreement({1.0, 1.3, 1.4});
  CHECK(z.u1 == 0.0);
  CHECK(z.u2 == 0.0);
}

TEST_CASE("phase 1") {
  const auto s = gdof_phase1({1.0, 1.2, 1.5});
  CHECK(s.cooperate);
  CHECK(s.scheme == "HK(0,0)");
  const auto m = gdof_phase1({1.0, 1.2, 0.8});
  CHECK(m.cooperate);
  CHECK(m.scheme == "HK(1/INR2,0)");

  const GdofParams weak(1.0, 0.4, 0.4);
  const auto w = gdof_phase1(weak);
  CHECK_FALSE(w.cooperate);
  CHECK(w.reason == Phase1Reason::kNotEssential);
  REQUIRE_FALSE(w.failed_conditions.empty());
  CHECK(w.failed_conditions[0].name == "d0 strictly inside varphi2");
  const auto d0 = gdof_disagreement(weak);
  CHECK(d0.u1 + d0.u2 == bound(gdof_region(weak), "varphi2"));
  CHECK(bound(gdof_region(weak), "varphi2") == doctest::Approx(2.0 - 0.4 - 0.4).epsilon(1e-15));
  CHECK(code_of([&] { gdof_nbs(weak); }) == ErrorCode::kNotEssential);

  const auto ok = gdof_phase1({1.0, 0.8, 0.8});
  CHECK(ok.cooperate == is_essential({gdof_region({1.0, 0.8, 0.8}).polytope,
                                      gdof_disagreement({1.0, 0.8, 0.8})}));
}

TEST_CASE("strong and mixed exponents always give an essential problem") {
  int checked = 0;
  for (int i = 1; i <= 40; ++i) {
    for (int j = 1; j <= 40; ++j) {
      for (int k = 1; k <= 40; ++k) {
        const GdofParams th(0.05 * i, 0.05 * j, 0.05 * k);
        const bool strong = th.theta2() >= th.theta1() && th.theta3() >= 1.0;
        const bool mixed = th.theta2() >= th.theta1() && th.theta3() < 1.0;
        if (!strong && !mixed) continue;
        ++checked;
        const auto region = gdof_region(th);
        const auto d0 = gdof_disagreement(th);
        CHECK(gdof_phase1(th).cooperate);
        CHECK(is_essential({region.polytope, d0}));
      }
    }
  }
  CHECK(checked > 20000);
}

TEST_CASE("NBS in the mixed example") {
  const GdofParams th(1.0, 1.2, 0.8);
  const auto hk = gdof_nbs(th);
  CHECK(hk.point.u1 == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(hk.point.u2 == doctest::Approx(0.7).epsilon(1e-12));
  CHECK(hk.nash_product == doctest::Approx(0.25).epsilon(1e-12));
  const auto tdm = gdof_nbs_tdm(th);
  CHECK(tdm.point.u1 == doctest::Approx(0.4).epsilon(1e-12));
  CHECK(tdm.point.u2 == doctest::Approx(0.6).epsilon(1e-12));
  CHECK(hk.point.u1 > tdm.point.u1);
  CHECK(hk.point.u2 > tdm.point.u2);

  const auto grid = oracle::grid_nbs(gdof_region(th).polytope, gdof_disagreement(th), 2001);
  CHECK(grid.best == doctest::Approx(0.25).epsilon(1e-9));
  CHECK(distance(grid.argmax, hk.point) <= std::hypot(grid.pitch_x, grid.pitch_y));
}

TEST_CASE("square region: caps bind") {
  const auto edge = gdof_nbs({1.0, 2.0, 2.5});
  CHECK(edge.point.u1 == doctest::Approx(1.0));
  CHECK(edge.point.u2 == doctest::Approx(1.0));
  const GdofParams th(1.0, 2.5, 3.0);
  CHECK(bound(gdof_region(th), "varphi1") > 2.0);
  const auto res = gdof_nbs(th);
  CHECK(res.point.u1 == doctest::Approx(1.0));
  CHECK(res.point.u2 == doctest::Approx(1.0));
  CHECK(res.active_caps[0]);
  CHECK(res.active_caps[1]);
}

TEST_CASE("NBS points satisfy every row") {
  for (int i = 1; i <= 20; ++i) {
    for (int j = 1; j <= 20; ++j) {
      for (int k = 1; k <= 20; ++k) {
        const GdofParams th(0.1 * i, 0.1 * j, 0.1 * k);
        if (th.theta2() < th.theta1() && th.theta3() >= 1.0) continue;
        const bool coop = gdof_phase1(th).cooperate;
        CHECK(coop == is_essential({gdof_region(th).polytope, gdof_disagreement(th)}));
        if (!coop) continue;
        NbsResult res;
        try {
          res = gdof_nbs(th);
        } catch (const Error& e) {
          CHECK(e.code() == ErrorCode::kHypothesisViolated);
          continue;
        }
        CHECK(gdof_region(th).polytope.contains(res.point));
      }
    }
  }
}

TEST_CASE("unit exponents: TDM line equals the strong sum face") {
  const GdofParams th(1.0, 1.0, 1.0);
  const auto d1 = gdof_region(th);
  CHECK(bound(d1, "varphi1") == 1.0);
  const auto d4 = gdof_tdm_region();
  const auto a = d1.polytope.vertices();
  const auto b = d4.polytope.vertices();
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(distance(a[i], b[i]) <= 1e-12);
}
