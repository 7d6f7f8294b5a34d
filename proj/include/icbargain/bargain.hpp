#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "icbargain/channel.hpp"
#include "icbargain/regions.hpp"

namespace icbargain {

using FeasibleSet = std::variant<Polytope, CurveRegion>;

// Feasible set plus disagreement point d0.
struct BargainingProblem {
  FeasibleSet feasible;
  Payoff d0;
};

// Strict-dominance margin for essentiality.
inline constexpr double kEssentialMargin = 1e-12;
// Slack allowed on the non-strict inequalities of the regularity conditions.
inline constexpr double kRegularityTol = 1e-9;

// True iff some feasible point beats d0 in both coordinates.
bool is_essential(const BargainingProblem& problem);

Frontier ir_frontier(const BargainingProblem& problem);

// No horizontal or vertical piece longer than tol, and at least one segment.
bool frontier_strictly_monotone(const Frontier& f, double tol = kRegularityTol);

// Essential and strictly monotone individually rational frontier.
bool is_structurally_regular(const BargainingProblem& problem);

// A named inequality evaluated at a concrete instance.
struct Condition {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
};

struct RegularityReport {
  bool essential = false;
  bool regular = false;             // closed-form verdict
  bool structurally_regular = false;  // computed-frontier verdict
  std::vector<Condition> failed_conditions;
};

// Regularity of the phase-2 problem over the H-K region of the phase-1
// split. The region must be hk_region(ch, hk_power_split(ch)) (or, for strong
// channels, the strong capacity region); otherwise Error(kPrecondition).
RegularityReport is_regular(const ChannelParams& ch, const Polytope& region,
                            const RatePair& d0);

enum class Phase1Reason { kOk, kNoisyOptimal, kSplitDegenerate, kNotEssential };

std::string phase1_reason_name(Phase1Reason r);

struct Phase1Outcome {
  bool cooperate = false;
  std::optional<PowerSplit> split;  // set iff cooperate
  Phase1Reason reason = Phase1Reason::kOk;
  std::string scheme;  // e.g. "HK(0,0.05)"
  std::vector<Condition> failed_conditions;
};

// Pre-bargaining: do both users gain from the regime's H-K scheme?
Phase1Outcome phase1(const ChannelParams& ch);

// Phase-2 problem over the H-K region of hk_power_split(ch) with the
// treat-interference-as-noise rates as disagreement point.
BargainingProblem hk_problem(const ChannelParams& ch);

}  // namespace icbargain
