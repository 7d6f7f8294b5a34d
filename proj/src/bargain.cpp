#include "icbargain/bargain.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "icbargain/error.hpp"

namespace icbargain {

namespace {

double positive_part(double x) { return std::max(x, 0.0); }

bool essential_polytope(const Polytope& region, const Payoff& d0) {
  auto cs = region.constraints();
  cs.push_back({-1.0, 0.0, -d0.u1});
  cs.push_back({0.0, -1.0, -d0.u2});
  const auto verts = polygon_vertices(cs);
  if (verts.empty()) return false;
  // The vertex mean lies in the clipped set and beats d0 in a coordinate iff
  // some vertex does.
  Payoff mean;
  for (const auto& v : verts) {
    mean.u1 += v.u1;
    mean.u2 += v.u2;
  }
  mean.u1 /= static_cast<double>(verts.size());
  mean.u2 /= static_cast<double>(verts.size());
  return mean.u1 > d0.u1 + kEssentialMargin && mean.u2 > d0.u2 + kEssentialMargin;
}

bool essential_curve(const CurveRegion& region, const Payoff& d0) {
  if (d0.u1 >= region.right().u1 - kEssentialMargin) return false;
  return region.upper(std::max(d0.u1, 0.0)) > d0.u2 + kEssentialMargin;
}

bool close(double x, double y, double tol) {
  return std::abs(x - y) <= tol * std::max(1.0, std::abs(y));
}

bool same_polytope(const Polytope& p, const Polytope& q) {
  if (p.rows.size() != q.rows.size()) return false;
  if (!close(p.caps.u1, q.caps.u1, 1e-12) || !close(p.caps.u2, q.caps.u2, 1e-12)) return false;
  for (std::size_t i = 0; i < p.rows.size(); ++i) {
    const auto& r = p.rows[i];
    const auto& s = q.rows[i];
    if (r.c1 != s.c1 || r.c2 != s.c2 || !close(r.bound, s.bound, 1e-12)) return false;
  }
  return true;
}

std::string split_name(const PowerSplit& s) {
  std::ostringstream os;
  os << "HK(" << s.alpha << "," << s.beta << ")";
  return os.str();
}

}  // namespace

bool is_essential(const BargainingProblem& problem) {
  return std::visit(
      [&](const auto& region) {
        using T = std::decay_t<decltype(region)>;
        if constexpr (std::is_same_v<T, Polytope>) {
          return essential_polytope(region, problem.d0);
        } else {
          return essential_curve(region, problem.d0);
        }
      },
      problem.feasible);
}

Frontier ir_frontier(const BargainingProblem& problem) {
  return std::visit([&](const auto& region) { return ir_frontier(region, problem.d0); },
                    problem.feasible);
}

bool frontier_strictly_monotone(const Frontier& f, double tol) {
  if (f.points.size() < 2) return false;
  for (std::size_t i = 0; i + 1 < f.points.size(); ++i) {
    const double dx = f.points[i + 1].u1 - f.points[i].u1;
    const double dy = f.points[i + 1].u2 - f.points[i].u2;
    if (std::abs(dx) <= tol && std::abs(dy) <= tol) continue;
    if (dx <= tol || dy >= -tol) return false;
  }
  return true;
}

bool is_structurally_regular(const BargainingProblem& problem) {
  return is_essential(problem) && frontier_strictly_monotone(ir_frontier(problem));
}

RegularityReport is_regular(const ChannelParams& ch, const Polytope& region,
                            const RatePair& d0) {
  const Regime regime = classify_regime(ch);
  const PowerSplit split = hk_power_split(ch);
  const bool matches_hk = region.scheme == Scheme::kHanKobayashi &&
                          same_polytope(region, hk_region(ch, split));
  const bool matches_strong = regime.tag == RegimeTag::kStrong &&
                              region.scheme == Scheme::kStrongCapacity &&
                              same_polytope(region, strong_capacity_region(ch));
  if (!matches_hk && !matches_strong) {
    throw Error(ErrorCode::kPrecondition,
                "region is not the H-K region of the channel's phase-1 split");
  }

  RegularityReport rep;
  const BargainingProblem problem{region, d0};
  rep.essential = is_essential(problem);
  if (!rep.essential) {
    rep.failed_conditions.push_back({"essential", 0.0, 1.0});
  }

  auto require = [&](const std::string& name, double lhs, double rhs) {
    if (lhs < rhs - kRegularityTol) rep.failed_conditions.push_back({name, lhs, rhs});
  };

  if (regime.tag == RegimeTag::kStrong) {
    if (!close(ch.a(), 1.0, kRegularityTol)) rep.failed_conditions.push_back({"a = 1", ch.a(), 1.0});
    if (!close(ch.b(), 1.0, kRegularityTol)) rep.failed_conditions.push_back({"b = 1", ch.b(), 1.0});
  } else {
    const HkBounds f = hk_bounds(ch, split);
    if (regime.tag == RegimeTag::kWeak) {
      require("R1_0 >= (phi5 - 2 phi2)+", d0.u1, positive_part(f.phi5 - 2 * f.phi2));
      require("R2_0 >= (phi4 - 2 phi1)+", d0.u2, positive_part(f.phi4 - 2 * f.phi1));
    } else {
      // Symmetric in the user labels, so it serves both mixed orientations.
      require("R1_0 >= (min(phi5 - 2 phi2, phi3 - phi2))+", d0.u1,
              positive_part(std::min(f.phi5 - 2 * f.phi2, f.phi3 - f.phi2)));
      require("R2_0 >= (min(phi4 - 2 phi1, phi3 - phi1))+", d0.u2,
              positive_part(std::min(f.phi4 - 2 * f.phi1, f.phi3 - f.phi1)));
    }
  }
  rep.regular = rep.failed_conditions.empty();
  rep.structurally_regular =
      rep.essential && frontier_strictly_monotone(ir_frontier(region, d0));
  return rep;
}

std::string phase1_reason_name(Phase1Reason r) {
  switch (r) {
    case Phase1Reason::kOk: return "OK";
    case Phase1Reason::kNoisyOptimal: return "NoisyOptimal";
    case Phase1Reason::kSplitDegenerate: return "SplitDegenerate";
    case Phase1Reason::kNotEssential: return "NotEssential";
  }
  return "Unknown";
}

BargainingProblem hk_problem(const ChannelParams& ch) {
  return {hk_region(ch, hk_power_split(ch)), disagreement_point(ch)};
}

Phase1Outcome phase1(const ChannelParams& ch) {
  const Regime regime = classify_regime(ch);
  const PowerSplit split = hk_power_split(ch);
  Phase1Outcome out;
  out.scheme = split_name(split);

  if (regime.noisy) {
    const double lhs = std::sqrt(ch.a()) * (ch.b() * ch.p1() + 1.0) +
                       std::sqrt(ch.b()) * (ch.a() * ch.p2() + 1.0);
    out.reason = Phase1Reason::kNoisyOptimal;
    out.failed_conditions.push_back({"sqrt(a)(bP1+1) + sqrt(b)(aP2+1) > 1", lhs, 1.0});
    return out;
  }

  auto need_above_one = [&](const std::string& name, double v) {
    if (!(v > 1.0)) out.failed_conditions.push_back({name, v, 1.0});
  };
  switch (regime.tag) {
    case RegimeTag::kStrong: break;
    case RegimeTag::kWeak:
      need_above_one("aP2 > 1", ch.inr1());
      need_above_one("bP1 > 1", ch.inr2());
      break;
    case RegimeTag::kMixedAWeak: need_above_one("aP2 > 1", ch.inr1()); break;
    case RegimeTag::kMixedBWeak: need_above_one("bP1 > 1", ch.inr2()); break;
  }
  if (!out.failed_conditions.empty()) {
    out.reason = Phase1Reason::kSplitDegenerate;
    return out;
  }

  const BargainingProblem problem{hk_region(ch, split), disagreement_point(ch)};
  if (!is_essential(problem)) {
    out.reason = Phase1Reason::kNotEssential;
    out.failed_conditions.push_back({"F ∩ {R > R0} nonempty", 0.0, 1.0});
    return out;
  }
  out.cooperate = true;
  out.split = split;
  out.reason = Phase1Reason::kOk;
  return out;
}

}  // namespace icbargain
