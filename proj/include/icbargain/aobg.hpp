#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "icbargain/bargain.hpp"

namespace icbargain {

// Breakdown probabilities after a rejected offer of user 1 / user 2.
struct BreakdownProbs {
  double p1 = 0.5;
  double p2 = 0.5;
};

// Throws Error(kDomain) unless both probabilities lie in (0,1).
void validate(const BreakdownProbs& probs);

// Equilibrium offers of the alternating-offer game: gbar is user 1's offer,
// gtilde user 2's. Segment indices refer to the individually rational frontier
// (-1 for curve frontiers).
struct SpePair {
  Payoff gbar;
  Payoff gtilde;
  int gbar_segment = -1;
  int gtilde_segment = -1;
};

// Residuals of the two indifference conditions
//   gtilde1 = (1 - p2)(gbar1 - d1) + d1,  gbar2 = (1 - p1)(gtilde2 - d2) + d2.
std::array<double, 2> spe_residuals(const SpePair& spe, const Payoff& d0,
                                    const BreakdownProbs& probs);

// Unique equilibrium pair of a regular problem. Piecewise-linear frontiers are
// swept segment pair by segment pair (4x4 linear solve each); curve frontiers
// are solved by bisection on gbar1. Throws Error(kNotRegular) otherwise.
SpePair spe_pair(const BargainingProblem& problem, const BreakdownProbs& probs);

// Closed form over the MAC capacity region.
SpePair spe_mac(double p1, double p2, const BreakdownProbs& probs);

struct SpeLimit {
  SpePair pair;
  bool limit = false;  // a probability sits on {0, 1}
  std::string note;
};

// Same as spe_mac but accepts probabilities in [0,1]. At p1 = p2 = 0 the
// linear system is singular; the returned pair is the p1 = p2 -> 0 limit
// (both offers at the Nash bargaining solution).
SpeLimit spe_mac_limit(double p1, double p2, double prob1, double prob2);

enum class EventKind { kOffer, kAccept, kReject, kContinue, kBreakdown };

std::string event_name(EventKind k);

struct GameEvent {
  EventKind kind = EventKind::kOffer;
  int player = 0;  // acting player; 0 for chance moves
  int round = 1;
  Payoff offer;    // meaningful for kOffer only
};

struct GameTrace {
  std::vector<GameEvent> events;
  Payoff payoff;
  int rounds = 0;
  bool agreed = false;
};

// Stationary strategy: always proposes `offer`, accepts an offer iff its own
// payoff in it is at least `accept_threshold`.
struct Strategy {
  std::string name;
  Payoff offer;
  double accept_threshold = 0.0;

  static Strategy equilibrium(int player, const SpePair& spe);
  // Proposes the player's best individually rational point, rejects all.
  static Strategy always_reject(int player, const BargainingProblem& problem);
  static Strategy threshold(std::string name, const Payoff& offer, double threshold);
};

inline constexpr int kMaxRounds = 1'000'000;

// Plays the game with chance moves. Odd rounds belong to first_mover. Every
// rejection draws one uniform variate; the game breaks down at d0 when it is
// below the proposer's breakdown probability. Deterministic given the seed.
// Throws Error(kRoundLimit) if max_rounds pass without a terminal history.
GameTrace play_aobg(const BargainingProblem& problem, const BreakdownProbs& probs,
                    const std::array<Strategy, 2>& strategies, int first_mover,
                    std::uint64_t seed, int max_rounds = kMaxRounds);

// Checks the event sequence against the history grammar
// (Offer Reject Continue)* Offer (Accept | Reject Breakdown) with alternating
// proposers and the matching terminal payoff.
bool is_valid_history(const GameTrace& trace, int first_mover, const Payoff& d0);

}  // namespace icbargain
