#pragma once

#include <span>
#include <vector>

#include "icbargain/channel.hpp"

namespace icbargain {

// Default tolerance on constraint activity and vertex merging, rate units.
inline constexpr double kVertexTol = 1e-9;

// a1*x + a2*y <= b
struct HalfPlane {
  double a1 = 0.0;
  double a2 = 0.0;
  double b = 0.0;

  double lhs(const Payoff& g) const { return a1 * g.u1 + a2 * g.u2; }
  double slack(const Payoff& g) const { return b - lhs(g); }
};

// Vertices of the bounded polygon cut out by the half-planes, counter-clockwise
// around their centroid. Pairwise line intersections that satisfy every
// constraint within tol are kept and merged when closer than tol. Returns an
// empty vector for an infeasible system; a single point or a segment is
// returned as one or two vertices.
std::vector<Payoff> polygon_vertices(std::span<const HalfPlane> planes,
                                     double tol = kVertexTol);

enum class Efficiency {
  kWeak,    // no point is strictly better for both users
  kStrong,  // Pareto optimal
};

// Upper-right boundary chain of a convex polygon given counter-clockwise,
// returned ordered by increasing first coordinate. The weak chain includes the
// horizontal top edge and the vertical right edge; the strong chain drops them.
std::vector<Payoff> efficient_chain(std::span<const Payoff> ccw_vertices,
                                    Efficiency kind, double tol = kVertexTol);

double distance(const Payoff& p, const Payoff& q);

// Euclidean distance from p to the polyline through pts.
double distance_to_polyline(const Payoff& p, std::span<const Payoff> pts);

}  // namespace icbargain
