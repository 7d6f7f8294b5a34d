#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "icbargain/channel.hpp"
#include "icbargain/geometry.hpp"

namespace icbargain {

// Fractions of power each user puts on its private message.
struct PowerSplit {
  double alpha = 0.0;
  double beta = 0.0;
};

enum class Scheme {
  kHanKobayashi,
  kStrongCapacity,
  kMac,
  kGdofScaled,
  kCustom,
};

std::string scheme_name(Scheme s);

// c1*g1 + c2*g2 <= bound
struct LinearRow {
  double c1 = 1.0;
  double c2 = 1.0;
  double bound = 0.0;
  std::string label;
};

// { g : lower <= g <= caps, rows } in the payoff plane. Rate regions use
// lower = (0, 0); the general lower corner lets affine images of a region be
// represented exactly.
struct Polytope {
  Scheme scheme = Scheme::kCustom;
  std::string name;
  Payoff lower{0.0, 0.0};
  Payoff caps{0.0, 0.0};
  std::vector<LinearRow> rows;

  // lower bounds first, then the two caps, then the rows in order.
  std::vector<HalfPlane> constraints() const;
  bool contains(const Payoff& g, double tol = kVertexTol) const;
  // All vertices, counter-clockwise.
  std::vector<Payoff> vertices() const;
  // A row is redundant when no vertex of the polytope makes it tight.
  std::vector<bool> redundant_rows(double tol = kVertexTol) const;
};

// Bounds of the fixed-split Han-Kobayashi region.
struct HkBounds {
  double phi1 = 0.0;
  double phi2 = 0.0;
  double phi3 = 0.0;
  double phi31 = 0.0;
  double phi32 = 0.0;
  double phi33 = 0.0;
  double phi4 = 0.0;
  double phi5 = 0.0;
};

// Power split used in each regime: (0,0) when strong, the INR-inverse split
// when weak, and the one-sided split in the mixed regimes. Degenerate splits
// (a fraction clipped at 1) are returned as is.
PowerSplit hk_power_split(const ChannelParams& ch);

HkBounds hk_bounds(const ChannelParams& ch, const PowerSplit& split);

// Rows, in order: (1,1) <= phi3, (2,1) <= phi4, (1,2) <= phi5.
Polytope hk_region(const ChannelParams& ch, const PowerSplit& split);

// Strong-interference capacity region; throws Error(kPrecondition) unless
// the channel is strong.
Polytope strong_capacity_region(const ChannelParams& ch);

double strong_sum_bound(const ChannelParams& ch);

// Multiple-access channel capacity region with one (1,1) row.
Polytope mac_region(double p1, double p2);

// Region below a concave, decreasing boundary curve t -> (x(t), y(t)),
// t in [0,1], with x increasing and y decreasing, down-closed to the origin.
class CurveRegion {
 public:
  using Curve = std::function<Payoff(double)>;

  // `tangent` (optional) returns (dx/dt, dy/dt).
  CurveRegion(std::string name, Curve curve, Curve tangent = {});

  const std::string& name() const { return name_; }
  Payoff at(double t) const { return curve_(t); }
  bool has_tangent() const { return static_cast<bool>(tangent_); }
  Payoff tangent(double t) const { return tangent_(t); }
  Payoff top() const { return curve_(0.0); }
  Payoff right() const { return curve_(1.0); }

  // Curve parameter whose first coordinate equals x (bisection, ~1e-15).
  double param_for_x(double x) const;
  // Largest feasible second coordinate at first coordinate x.
  double upper(double x) const;
  bool contains(const Payoff& g, double tol = kVertexTol) const;

 private:
  std::string name_;
  Curve curve_;
  Curve tangent_;
};

// R_i(rho) = rho * cap(P_i / rho), continuously extended by R_i(0) = 0.
double tdm_rate(double rho, double power);
// dR_i/drho; +infinity at rho = 0.
double tdm_rate_slope(double rho, double power);

// Time-division region; the curve parameter is user 1's time fraction.
CurveRegion tdm_region(double p1, double p2);

// A frontier as an ordered point list, left to right. Polytope frontiers are
// their vertex chains; curve frontiers are dense samples.
struct Frontier {
  std::vector<Payoff> points;
  bool sampled = false;

  bool empty() const { return points.empty(); }
};

inline constexpr int kDefaultTdmSamples = 1025;

// Samples of the TDM boundary at evenly spaced rho1 (samples >= 2).
Frontier tdm_frontier(double p1, double p2, int samples = kDefaultTdmSamples);

// Pareto-optimal vertices of the region in the closed first quadrant, ordered
// by increasing first coordinate.
std::vector<RatePair> extreme_points(const Polytope& region);

// Weakly efficient boundary of the region (horizontal and vertical edges of
// the upper-right boundary included).
Frontier efficient_frontier(const Polytope& region);

// Efficient frontier of region ∩ {g >= d0}. A single point when d0 is itself
// efficient. Throws Error(kPrecondition) when d0 is outside the region.
Frontier ir_frontier(const Polytope& region, const Payoff& d0);
Frontier ir_frontier(const CurveRegion& region, const Payoff& d0,
                     int samples = kDefaultTdmSamples);

}  // namespace icbargain
