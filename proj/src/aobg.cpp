#include "icbargain/aobg.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <limits>
#include <optional>
#include <random>

#include "icbargain/error.hpp"
#include "icbargain/nbs.hpp"

namespace icbargain {

namespace {

constexpr double kOnSegmentTol = 1e-9;
constexpr double kDistinctTol = 1e-7;

using Vec4 = Eigen::Matrix<double, 4, 1>;
using Mat4 = Eigen::Matrix<double, 4, 4>;

// Rows 1-2: indifference conditions. Rows 3-4: gbar on line n_bar . g = c_bar,
// gtilde on line n_tilde . g = c_tilde.
std::optional<Vec4> solve_spe_system(const BreakdownProbs& pr, const Payoff& d0,
                                     const HalfPlane& bar_line, const HalfPlane& tilde_line) {
  Mat4 m;
  m << 1.0 - pr.p2, 0.0, -1.0, 0.0,
       0.0, 1.0, 0.0, -(1.0 - pr.p1),
       bar_line.a1, bar_line.a2, 0.0, 0.0,
       0.0, 0.0, tilde_line.a1, tilde_line.a2;
  Vec4 rhs;
  rhs << -pr.p2 * d0.u1, pr.p1 * d0.u2, bar_line.b, tilde_line.b;
  Eigen::FullPivLU<Mat4> lu(m);
  if (!lu.isInvertible()) return std::nullopt;
  return Vec4(lu.solve(rhs));
}

HalfPlane line_through(const Payoff& s, const Payoff& e) {
  const double a1 = e.u2 - s.u2;
  const double a2 = -(e.u1 - s.u1);
  return {a1, a2, a1 * s.u1 + a2 * s.u2};
}

SpePair spe_on_polyline(const std::vector<Payoff>& pts, const Payoff& d0,
                        const BreakdownProbs& probs) {
  std::vector<SpePair> found;
  const int segs = static_cast<int>(pts.size()) - 1;
  for (int i = 0; i < segs; ++i) {
    for (int j = 0; j < segs; ++j) {
      const std::span<const Payoff> seg_i(&pts[static_cast<std::size_t>(i)], 2);
      const std::span<const Payoff> seg_j(&pts[static_cast<std::size_t>(j)], 2);
      const auto x = solve_spe_system(probs, d0, line_through(seg_i[0], seg_i[1]),
                                      line_through(seg_j[0], seg_j[1]));
      if (!x) continue;
      const SpePair cand{{(*x)(0), (*x)(1)}, {(*x)(2), (*x)(3)}, i, j};
      if (distance_to_polyline(cand.gbar, seg_i) > kOnSegmentTol) continue;
      if (distance_to_polyline(cand.gtilde, seg_j) > kOnSegmentTol) continue;
      const bool dup = std::any_of(found.begin(), found.end(), [&](const SpePair& f) {
        return distance(f.gbar, cand.gbar) <= kDistinctTol &&
               distance(f.gtilde, cand.gtilde) <= kDistinctTol;
      });
      if (!dup) found.push_back(cand);
    }
  }
  if (found.size() != 1) {
    throw Error(ErrorCode::kInternal,
                found.empty() ? "no segment pair admits an equilibrium pair"
                              : "several equilibrium pairs on a regular frontier");
  }
  return found.front();
}

SpePair spe_on_curve(const CurveRegion& region, const Payoff& d0, const BreakdownProbs& pr) {
  // Right end of the individually rational frontier.
  double lo = region.param_for_x(std::max(d0.u1, 0.0));
  double hi = 1.0;
  if (region.at(hi).u2 < d0.u2) {
    for (int it = 0; it < 200 && hi - lo > 1e-16; ++it) {
      const double mid = 0.5 * (lo + hi);
      (region.at(mid).u2 >= d0.u2 ? lo : hi) = mid;
    }
  }
  const double x_max = region.at(lo).u1;

  auto tilde1 = [&](double gbar1) { return (1.0 - pr.p2) * (gbar1 - d0.u1) + d0.u1; };
  auto residual = [&](double gbar1) {
    const double target = (1.0 - pr.p1) * (region.upper(tilde1(gbar1)) - d0.u2) + d0.u2;
    return region.upper(gbar1) - target;
  };
  double a = d0.u1;
  double b = x_max;
  for (int it = 0; it < 200 && b - a > 1e-15; ++it) {
    const double mid = 0.5 * (a + b);
    (residual(mid) > 0 ? a : b) = mid;
  }
  const double x = 0.5 * (a + b);
  SpePair out;
  out.gbar = {x, region.upper(x)};
  out.gtilde = {tilde1(x), region.upper(tilde1(x))};
  return out;
}

}  // namespace

void validate(const BreakdownProbs& probs) {
  if (!(probs.p1 > 0 && probs.p1 < 1 && probs.p2 > 0 && probs.p2 < 1)) {
    throw Error(ErrorCode::kDomain, "breakdown probabilities must lie in (0,1)");
  }
}

std::array<double, 2> spe_residuals(const SpePair& spe, const Payoff& d0,
                                    const BreakdownProbs& pr) {
  return {spe.gtilde.u1 - ((1.0 - pr.p2) * (spe.gbar.u1 - d0.u1) + d0.u1),
          spe.gbar.u2 - ((1.0 - pr.p1) * (spe.gtilde.u2 - d0.u2) + d0.u2)};
}

SpePair spe_pair(const BargainingProblem& problem, const BreakdownProbs& probs) {
  validate(probs);
  if (!is_structurally_regular(problem)) {
    throw Error(ErrorCode::kNotRegular, "alternating-offer equilibrium needs a regular problem");
  }
  return std::visit(
      [&](const auto& region) -> SpePair {
        using T = std::decay_t<decltype(region)>;
        if constexpr (std::is_same_v<T, Polytope>) {
          return spe_on_polyline(ir_frontier(region, problem.d0).points, problem.d0, probs);
        } else {
          return spe_on_curve(region, problem.d0, probs);
        }
      },
      problem.feasible);
}

namespace {

SpePair mac_closed_form(double p1, double p2, double prob1, double prob2) {
  const double phi0 = cap(p1 + p2);
  const RatePair r0 = disagreement_point(ChannelParams(1.0, 1.0, p1, p2));
  Mat4 m;
  m << 1.0 - prob2, 0.0, -1.0, 0.0,
       0.0, 1.0, 0.0, -(1.0 - prob1),
       1.0, 1.0, 0.0, 0.0,
       0.0, 0.0, 1.0, 1.0;
  Vec4 rhs;
  rhs << -prob2 * r0.u1, prob1 * r0.u2, phi0, phi0;
  const Vec4 x = m.inverse() * rhs;
  return {{x(0), x(1)}, {x(2), x(3)}, 0, 0};
}

}  // namespace

SpePair spe_mac(double p1, double p2, const BreakdownProbs& probs) {
  validate(probs);
  mac_region(p1, p2);  // validates the powers
  return mac_closed_form(p1, p2, probs.p1, probs.p2);
}

SpeLimit spe_mac_limit(double p1, double p2, double prob1, double prob2) {
  if (!(prob1 >= 0 && prob1 <= 1 && prob2 >= 0 && prob2 <= 1)) {
    throw Error(ErrorCode::kDomain, "breakdown probabilities must lie in [0,1]");
  }
  mac_region(p1, p2);
  SpeLimit out;
  out.limit = prob1 == 0 || prob1 == 1 || prob2 == 0 || prob2 == 1;
  if (prob1 == 0 && prob2 == 0) {
    const Payoff star = nbs_mac(p1, p2).point;
    out.pair = {star, star, 0, 0};
    out.note = "singular system at p1 = p2 = 0; returned the p1 = p2 -> 0 limit";
    return out;
  }
  out.pair = mac_closed_form(p1, p2, prob1, prob2);
  if (out.limit) out.note = "boundary probability; outside the open game";
  return out;
}

std::string event_name(EventKind k) {
  switch (k) {
    case EventKind::kOffer: return "Offer";
    case EventKind::kAccept: return "Accept";
    case EventKind::kReject: return "Reject";
    case EventKind::kContinue: return "Continue";
    case EventKind::kBreakdown: return "Breakdown";
  }
  return "Unknown";
}

Strategy Strategy::equilibrium(int player, const SpePair& spe) {
  if (player == 1) return {"equilibrium", spe.gbar, spe.gtilde.u1};
  return {"equilibrium", spe.gtilde, spe.gbar.u2};
}

Strategy Strategy::always_reject(int player, const BargainingProblem& problem) {
  const Frontier f = ir_frontier(problem);
  const Payoff ideal = player == 1 ? f.points.back() : f.points.front();
  return {"always_reject", ideal, std::numeric_limits<double>::infinity()};
}

Strategy Strategy::threshold(std::string name, const Payoff& offer, double threshold) {
  return {std::move(name), offer, threshold};
}

GameTrace play_aobg(const BargainingProblem& problem, const BreakdownProbs& probs,
                    const std::array<Strategy, 2>& strategies, int first_mover,
                    std::uint64_t seed, int max_rounds) {
  validate(probs);
  if (first_mover != 1 && first_mover != 2) {
    throw Error(ErrorCode::kDomain, "first mover must be player 1 or 2");
  }
  std::mt19937_64 rng(seed);
  // 53-bit uniform in [0,1); one draw per rejection.
  auto uniform = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };

  GameTrace trace;
  for (int round = 1; round <= max_rounds; ++round) {
    const int proposer = (round % 2 == 1) ? first_mover : 3 - first_mover;
    const int responder = 3 - proposer;
    const Strategy& ps = strategies[static_cast<std::size_t>(proposer - 1)];
    const Strategy& rs = strategies[static_cast<std::size_t>(responder - 1)];
    trace.rounds = round;
    trace.events.push_back({EventKind::kOffer, proposer, round, ps.offer});
    if (ps.offer[responder - 1] >= rs.accept_threshold) {
      trace.events.push_back({EventKind::kAccept, responder, round, {}});
      trace.payoff = ps.offer;
      trace.agreed = true;
      return trace;
    }
    trace.events.push_back({EventKind::kReject, responder, round, {}});
    const double p = proposer == 1 ? probs.p1 : probs.p2;
    if (uniform() < p) {
      trace.events.push_back({EventKind::kBreakdown, 0, round, {}});
      trace.payoff = problem.d0;
      return trace;
    }
    trace.events.push_back({EventKind::kContinue, 0, round, {}});
  }
  throw Error(ErrorCode::kRoundLimit, "bargaining did not terminate within the round cap");
}

bool is_valid_history(const GameTrace& trace, int first_mover, const Payoff& d0) {
  const auto& ev = trace.events;
  std::size_t i = 0;
  int round = 0;
  while (i < ev.size()) {
    ++round;
    const int proposer = (round % 2 == 1) ? first_mover : 3 - first_mover;
    if (ev[i].kind != EventKind::kOffer || ev[i].player != proposer || ev[i].round != round) {
      return false;
    }
    const Payoff offer = ev[i].offer;
    if (i + 1 >= ev.size()) return false;
    const GameEvent& reply = ev[i + 1];
    if (reply.player != 3 - proposer) return false;
    if (reply.kind == EventKind::kAccept) {
      return i + 2 == ev.size() && trace.agreed && trace.rounds == round &&
             trace.payoff.u1 == offer.u1 && trace.payoff.u2 == offer.u2;
    }
    if (reply.kind != EventKind::kReject || i + 2 >= ev.size()) return false;
    const GameEvent& chance = ev[i + 2];
    if (chance.player != 0) return false;
    if (chance.kind == EventKind::kBreakdown) {
      return i + 3 == ev.size() && !trace.agreed && trace.rounds == round &&
             trace.payoff.u1 == d0.u1 && trace.payoff.u2 == d0.u2;
    }
    if (chance.kind != EventKind::kContinue) return false;
    i += 3;
  }
  return false;
}

}  // namespace icbargain
