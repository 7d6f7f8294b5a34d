#include "icbargain/gdof.hpp"

#include <algorithm>
#include <cmath>

#include "icbargain/error.hpp"

namespace icbargain {

namespace {

double pos(double x) { return std::max(x, 0.0); }

}  // namespace

GdofParams::GdofParams(double theta1, double theta2, double theta3)
    : t1_(theta1), t2_(theta2), t3_(theta3) {
  const bool ok = std::isfinite(theta1) && std::isfinite(theta2) && std::isfinite(theta3) &&
                  theta1 > 0 && theta2 > 0 && theta3 > 0;
  if (!ok) throw Error(ErrorCode::kDomain, "g.d.o.f. exponents must be finite and positive");
}

GdofParams GdofParams::from_snr(double snr1, double snr2, double inr1, double inr2) {
  if (!(snr1 > 1.0)) throw Error(ErrorCode::kDomain, "exponents need SNR1 > 1");
  const double base = std::log(snr1);
  return {std::log(snr2) / base, std::log(inr1) / base, std::log(inr2) / base};
}

std::string gdof_regime_name(GdofRegime r) {
  switch (r) {
    case GdofRegime::kD1Strong: return "D1";
    case GdofRegime::kD2Weak: return "D2";
    case GdofRegime::kD3Mixed: return "D3";
    case GdofRegime::kD4Tdm: return "D4";
  }
  return "unknown";
}

GdofRegime classify_gdof(const GdofParams& th) {
  const bool inr1_strong = th.theta2() >= th.theta1();
  const bool inr2_strong = th.theta3() >= 1.0;
  if (inr1_strong && inr2_strong) return GdofRegime::kD1Strong;
  if (!inr1_strong && !inr2_strong) return GdofRegime::kD2Weak;
  if (inr1_strong) return GdofRegime::kD3Mixed;
  throw Error(ErrorCode::kUnsupportedRegime,
              "no closed-form g.d.o.f. region for theta2 < theta1 with theta3 >= 1");
}

GdofRegion gdof_region(const GdofParams& th) {
  const double t1 = th.theta1();
  const double t2 = th.theta2();
  const double t3 = th.theta3();
  GdofRegion out;
  out.regime = classify_gdof(th);
  Polytope& p = out.polytope;
  p.scheme = Scheme::kGdofScaled;
  p.name = gdof_regime_name(out.regime);
  p.caps = {1.0, 1.0};

  switch (out.regime) {
    case GdofRegime::kD1Strong: {
      const double v1 = std::min(std::max(1.0, t2), std::max(t1, t3));
      p.rows = {{1.0, t1, v1, "varphi1"}};
      out.bounds = {{"varphi1", v1}};
      break;
    }
    case GdofRegime::kD2Weak: {
      const double v2 = std::min({1.0 + pos(t1 - t3), t1 + pos(1.0 - t2),
                                  std::max(t2, 1.0 - t3) + std::max(t3, t1 - t2)});
      const double v3 = std::max(1.0, t2) + std::max(t3, t1 - t2) + 1.0 - t3;
      const double v4 = std::max(t1, t3) + std::max(t2, 1.0 - t3) + t1 - t2;
      p.rows = {{1.0, t1, v2, "varphi2"}, {2.0, t1, v3, "varphi3"}, {1.0, 2.0 * t1, v4, "varphi4"}};
      out.bounds = {{"varphi2", v2}, {"varphi3", v3}, {"varphi4", v4}};
      break;
    }
    case GdofRegime::kD3Mixed: {
      const double v5 = std::min(1.0 + pos(t1 - t3), std::max(1.0, t2));
      const double v6 = std::max(t1, t3) + std::max(t2, 1.0 - t3);
      p.rows = {{1.0, t1, v5, "varphi5"}, {1.0, 2.0 * t1, v6, "varphi6"}};
      out.bounds = {{"varphi5", v5}, {"varphi6", v6}};
      break;
    }
    case GdofRegime::kD4Tdm: break;
  }
  return out;
}

GdofRegion gdof_tdm_region() {
  GdofRegion out;
  out.regime = GdofRegime::kD4Tdm;
  out.polytope.scheme = Scheme::kGdofScaled;
  out.polytope.name = "D4";
  out.polytope.caps = {1.0, 1.0};
  out.polytope.rows = {{1.0, 1.0, 1.0, "tdm"}};
  out.bounds = {{"tdm", 1.0}};
  return out;
}

GdofPoint gdof_disagreement(const GdofParams& th) {
  return {pos(1.0 - th.theta2()), pos(1.0 - th.theta3() / th.theta1())};
}

Phase1Outcome gdof_phase1(const GdofParams& th) {
  const GdofRegion region = gdof_region(th);
  const GdofPoint d0 = gdof_disagreement(th);
  Phase1Outcome out;
  switch (region.regime) {
    case GdofRegime::kD1Strong: out.scheme = "HK(0,0)"; break;
    case GdofRegime::kD2Weak: out.scheme = "HK(1/INR2,1/INR1)"; break;
    case GdofRegime::kD3Mixed: out.scheme = "HK(1/INR2,0)"; break;
    case GdofRegime::kD4Tdm: break;
  }
  if (region.regime == GdofRegime::kD2Weak) {
    for (const auto& row : region.polytope.rows) {
      const double lhs = row.c1 * d0.u1 + row.c2 * d0.u2;
      if (!(lhs < row.bound - kEssentialMargin)) {
        out.failed_conditions.push_back({"d0 strictly inside " + row.label, lhs, row.bound});
      }
    }
  }
  if (!out.failed_conditions.empty()) {
    out.reason = Phase1Reason::kNotEssential;
    return out;
  }
  out.cooperate = true;
  out.reason = Phase1Reason::kOk;
  return out;
}

NbsResult gdof_nbs(const GdofParams& th) {
  const Phase1Outcome p1 = gdof_phase1(th);
  if (!p1.cooperate) {
    throw Error(ErrorCode::kNotEssential, "g.d.o.f. pre-bargaining fails for these exponents");
  }
  return nbs_polytope(gdof_region(th).polytope, gdof_disagreement(th));
}

NbsResult gdof_nbs_tdm(const GdofParams& th) {
  return nbs_polytope(gdof_tdm_region().polytope, gdof_disagreement(th));
}

}  // namespace icbargain
