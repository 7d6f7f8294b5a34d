#pragma once

#include <array>
#include <optional>
#include <vector>

#include "icbargain/bargain.hpp"
#include "icbargain/regions.hpp"

namespace icbargain {

struct NbsResult {
  Payoff point;
  // One multiplier per polytope row; zero for rows outside the active set.
  std::vector<double> multipliers;
  std::array<bool, 2> active_caps{false, false};
  std::array<double, 2> cap_multipliers{0.0, 0.0};
  std::vector<int> active_rows;
  double nash_product = 0.0;
  // Curve parameter of the solution (user 1's time fraction for TDM).
  std::optional<double> rho;
};

double nash_product(const Payoff& g, const Payoff& d0);

// Maximizes (g1 - d0_1)(g2 - d0_2) over the polytope by enumerating KKT
// active sets: single rows first, then row pairs, row-cap pairs and finally
// the cap corner. Throws Error(kNotEssential) for inessential problems and
// Error(kHypothesisViolated) when d0 touches a cap or a row.
NbsResult nbs_polytope(const Polytope& region, const Payoff& d0);

// Closed form over the MAC capacity region with safe rates as d0.
NbsResult nbs_mac(double p1, double p2);

// Golden-section search along the curve parameter. Both coordinates of the
// curve must be concave in the parameter so the Nash product is unimodal.
NbsResult nbs_concave(const CurveRegion& region, const Payoff& d0);

NbsResult nbs(const BargainingProblem& problem);

}  // namespace icbargain
