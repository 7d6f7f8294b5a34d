#include "icbargain/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace icbargain {

namespace {

bool feasible(std::span<const HalfPlane> planes, const Payoff& g, double tol) {
  return std::all_of(planes.begin(), planes.end(), [&](const HalfPlane& h) {
    return h.lhs(g) <= h.b + tol * std::max(1.0, std::abs(h.b));
  });
}

}  // namespace

double distance(const Payoff& p, const Payoff& q) {
  return std::hypot(p.u1 - q.u1, p.u2 - q.u2);
}

std::vector<Payoff> polygon_vertices(std::span<const HalfPlane> planes, double tol) {
  std::vector<Payoff> pts;
  for (std::size_t i = 0; i < planes.size(); ++i) {
    for (std::size_t j = i + 1; j < planes.size(); ++j) {
      const HalfPlane& p = planes[i];
      const HalfPlane& q = planes[j];
      const double det = p.a1 * q.a2 - p.a2 * q.a1;
      const double scale = std::hypot(p.a1, p.a2) * std::hypot(q.a1, q.a2);
      if (std::abs(det) <= 1e-14 * scale) continue;
      const Payoff g{(p.b * q.a2 - p.a2 * q.b) / det, (p.a1 * q.b - p.b * q.a1) / det};
      if (!std::isfinite(g.u1) || !std::isfinite(g.u2)) continue;
      if (!feasible(planes, g, tol)) continue;
      const bool dup = std::any_of(pts.begin(), pts.end(),
                                   [&](const Payoff& v) { return distance(v, g) <= tol; });
      if (!dup) pts.push_back(g);
    }
  }
  if (pts.size() < 3) return pts;

  Payoff c;
  for (const auto& v : pts) {
    c.u1 += v.u1;
    c.u2 += v.u2;
  }
  c.u1 /= static_cast<double>(pts.size());
  c.u2 /= static_cast<double>(pts.size());
  std::sort(pts.begin(), pts.end(), [&](const Payoff& x, const Payoff& y) {
    return std::atan2(x.u2 - c.u2, x.u1 - c.u1) < std::atan2(y.u2 - c.u2, y.u1 - c.u1);
  });
  return pts;
}

std::vector<Payoff> efficient_chain(std::span<const Payoff> ccw, Efficiency kind,
                                    double tol) {
  const std::size_t n = ccw.size();
  if (n == 0) return {};

  // Top: largest second coordinate; among ties the leftmost (weak) or the
  // rightmost (strong). Right end: largest first coordinate; among ties the
  // lowest (weak) or highest (strong).
  std::size_t top = 0;
  std::size_t right = 0;
  for (std::size_t i = 1; i < n; ++i) {
    const Payoff& v = ccw[i];
    const Payoff& t = ccw[top];
    if (v.u2 > t.u2 + tol) {
      top = i;
    } else if (std::abs(v.u2 - t.u2) <= tol) {
      const bool better = kind == Efficiency::kWeak ? v.u1 < t.u1 : v.u1 > t.u1;
      if (better) top = i;
    }
    const Payoff& r = ccw[right];
    if (v.u1 > r.u1 + tol) {
      right = i;
    } else if (std::abs(v.u1 - r.u1) <= tol) {
      const bool better = kind == Efficiency::kWeak ? v.u2 < r.u2 : v.u2 > r.u2;
      if (better) right = i;
    }
  }

  // Counter-clockwise from the right end reaches the top along the
  // upper-right boundary.
  std::vector<Payoff> chain;
  for (std::size_t i = right;; i = (i + 1) % n) {
    chain.push_back(ccw[i]);
    if (i == top) break;
  }
  std::reverse(chain.begin(), chain.end());
  return chain;
}

double distance_to_polyline(const Payoff& p, std::span<const Payoff> pts) {
  if (pts.empty()) return std::numeric_limits<double>::infinity();
  double best = distance(p, pts.front());
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const Payoff& s = pts[i];
    const Payoff& e = pts[i + 1];
    const double dx = e.u1 - s.u1;
    const double dy = e.u2 - s.u2;
    const double len2 = dx * dx + dy * dy;
    double t = len2 > 0 ? ((p.u1 - s.u1) * dx + (p.u2 - s.u2) * dy) / len2 : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    best = std::min(best, distance(p, {s.u1 + t * dx, s.u2 + t * dy}));
  }
  return best;
}

}  // namespace icbargain
