#include "icbargain/nbs.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "icbargain/error.hpp"

namespace icbargain {

namespace {

constexpr double kFeasTol = 1e-9;
constexpr double kAuditTol = 1e-7;
constexpr double kHypothesisMargin = 1e-12;
constexpr double kGoldenTol = 1e-10;

// Upper constraints in KKT order: rows 0..J-1, then cap 1, cap 2.
struct Upper {
  HalfPlane plane;
  bool is_cap = false;
  int index = 0;  // row index, or 0/1 for the caps
};

std::vector<Upper> upper_constraints(const Polytope& region) {
  std::vector<Upper> out;
  for (std::size_t j = 0; j < region.rows.size(); ++j) {
    const auto& r = region.rows[j];
    out.push_back({{r.c1, r.c2, r.bound}, false, static_cast<int>(j)});
  }
  out.push_back({{1.0, 0.0, region.caps.u1}, true, 0});
  out.push_back({{0.0, 1.0, region.caps.u2}, true, 1});
  return out;
}

struct Candidate {
  Payoff point;
  std::vector<std::pair<int, double>> mu;  // (upper index, multiplier)
};

bool admissible(const Polytope& region, const Payoff& d0, const Candidate& c) {
  if (!(c.point.u1 > d0.u1 && c.point.u2 > d0.u2)) return false;
  if (!std::isfinite(c.point.u1) || !std::isfinite(c.point.u2)) return false;
  if (!region.contains(c.point, kFeasTol)) return false;
  return std::all_of(c.mu.begin(), c.mu.end(), [](const auto& m) {
    return m.second >= -kFeasTol * std::max(1.0, std::abs(m.second));
  });
}

std::optional<Candidate> single_row(const Upper& u, const Payoff& d0) {
  const HalfPlane& h = u.plane;
  if (!(h.a1 > 0 && h.a2 > 0)) return std::nullopt;
  const double s = h.slack(d0);
  if (!(s > 0)) return std::nullopt;
  Candidate c;
  c.point = {d0.u1 + s / (2 * h.a1), d0.u2 + s / (2 * h.a2)};
  c.mu = {{0, 2.0 / s}};
  return c;
}

std::optional<Candidate> corner(const Upper& p, const Upper& q, const Payoff& d0) {
  const HalfPlane& h = p.plane;
  const HalfPlane& k = q.plane;
  const double det = h.a1 * k.a2 - h.a2 * k.a1;
  if (std::abs(det) <= 1e-14 * std::hypot(h.a1, h.a2) * std::hypot(k.a1, k.a2)) {
    return std::nullopt;
  }
  Candidate c;
  c.point = {(h.b * k.a2 - h.a2 * k.b) / det, (h.a1 * k.b - h.b * k.a1) / det};
  const double g1 = c.point.u1 - d0.u1;
  const double g2 = c.point.u2 - d0.u2;
  if (!(g1 > 0 && g2 > 0)) return std::nullopt;
  // Stationarity: mu_p * a_p + mu_q * a_q = (1/g1, 1/g2).
  const double r1 = 1.0 / g1;
  const double r2 = 1.0 / g2;
  const double mu_p = (r1 * k.a2 - r2 * k.a1) / det;
  const double mu_q = (h.a1 * r2 - h.a2 * r1) / det;
  c.mu = {{0, mu_p}, {1, mu_q}};
  return c;
}

NbsResult finish(const Polytope& region, const Payoff& d0, const Candidate& c,
                 const std::vector<const Upper*>& active) {
  NbsResult res;
  res.point = c.point;
  res.multipliers.assign(region.rows.size(), 0.0);
  for (const auto& [slot, mu] : c.mu) {
    const Upper& u = *active[static_cast<std::size_t>(slot)];
    const double m = std::max(mu, 0.0);
    if (u.is_cap) {
      res.active_caps[static_cast<std::size_t>(u.index)] = true;
      res.cap_multipliers[static_cast<std::size_t>(u.index)] = m;
    } else {
      res.multipliers[static_cast<std::size_t>(u.index)] = m;
      res.active_rows.push_back(u.index);
    }
  }
  res.nash_product = nash_product(c.point, d0);
  return res;
}

}  // namespace

double nash_product(const Payoff& g, const Payoff& d0) {
  return (g.u1 - d0.u1) * (g.u2 - d0.u2);
}

NbsResult nbs_polytope(const Polytope& region, const Payoff& d0) {
  if (!is_essential({region, d0})) {
    throw Error(ErrorCode::kNotEssential, "no feasible point improves on d0 for both users");
  }
  const auto uppers = upper_constraints(region);
  for (const auto& u : uppers) {
    const bool binding_direction = u.plane.a1 > 0 || u.plane.a2 > 0;
    if (binding_direction && u.plane.slack(d0) <= kHypothesisMargin) {
      throw Error(ErrorCode::kHypothesisViolated,
                  "disagreement point is not strictly below every cap and row");
    }
  }

  const std::size_t rows = region.rows.size();
  std::vector<std::vector<const Upper*>> sets;
  for (std::size_t j = 0; j < rows; ++j) sets.push_back({&uppers[j]});
  for (std::size_t j = 0; j < rows; ++j)
    for (std::size_t k = j + 1; k < rows; ++k) sets.push_back({&uppers[j], &uppers[k]});
  for (std::size_t j = 0; j < rows; ++j)
    for (std::size_t c = rows; c < rows + 2; ++c) sets.push_back({&uppers[j], &uppers[c]});
  sets.push_back({&uppers[rows], &uppers[rows + 1]});

  std::optional<NbsResult> found;
  for (const auto& set : sets) {
    const auto cand = set.size() == 1 ? single_row(*set[0], d0) : corner(*set[0], *set[1], d0);
    if (!cand || !admissible(region, d0, *cand)) continue;
    if (!found) {
      found = finish(region, d0, *cand, set);
    } else if (distance(found->point, cand->point) > kAuditTol) {
      throw Error(ErrorCode::kInternal, "two distinct KKT points for a strictly concave problem");
    }
  }
  if (!found) throw Error(ErrorCode::kInternal, "no active set satisfies the KKT conditions");
  return *found;
}

NbsResult nbs_mac(double p1, double p2) {
  const Polytope region = mac_region(p1, p2);
  const RatePair d0 = disagreement_point(ChannelParams(1.0, 1.0, p1, p2));
  const double phi0 = region.rows.front().bound;
  const double mu = 2.0 / (phi0 - d0.u1 - d0.u2);
  NbsResult res;
  res.point = {d0.u1 + 1.0 / mu, d0.u2 + 1.0 / mu};
  res.multipliers = {mu};
  res.active_rows = {0};
  res.nash_product = nash_product(res.point, d0);
  return res;
}

NbsResult nbs_concave(const CurveRegion& region, const Payoff& d0) {
  if (!is_essential({region, d0})) {
    throw Error(ErrorCode::kNotEssential, "no feasible point improves on d0 for both users");
  }
  const double t_lo = region.param_for_x(std::max(d0.u1, 0.0));
  double lo = t_lo;
  double hi = 1.0;
  if (region.at(hi).u2 < d0.u2) {
    for (int it = 0; it < 200 && hi - lo > 1e-16; ++it) {
      const double mid = 0.5 * (lo + hi);
      (region.at(mid).u2 >= d0.u2 ? lo : hi) = mid;
    }
  }
  const double t_hi = hi;

  auto objective = [&](double t) {
    const Payoff g = region.at(t);
    return nash_product(g, d0);
  };
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = t_lo;
  double b = t_hi;
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = objective(x1);
  double f2 = objective(x2);
  while (b - a > kGoldenTol) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = objective(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = objective(x1);
    }
  }
  double t = 0.5 * (a + b);
  if (region.has_tangent()) {
    // Comparing products stalls near sqrt(eps) around a flat maximum; the
    // sign of the derivative does not.
    auto slope = [&](double s) {
      const Payoff g = region.at(s);
      const Payoff v = region.tangent(s);
      return (g.u2 - d0.u2) * v.u1 + (g.u1 - d0.u1) * v.u2;
    };
    double lo = std::max(t_lo, a - 1e-6);
    double hi = std::min(t_hi, b + 1e-6);
    if (slope(lo) > 0 && slope(hi) < 0) {
      for (int it = 0; it < 100 && hi - lo > 1e-16; ++it) {
        const double mid = 0.5 * (lo + hi);
        (slope(mid) > 0 ? lo : hi) = mid;
      }
      t = 0.5 * (lo + hi);
    }
  }
  NbsResult res;
  res.point = region.at(t);
  res.nash_product = nash_product(res.point, d0);
  res.rho = t;
  return res;
}

NbsResult nbs(const BargainingProblem& problem) {
  return std::visit(
      [&](const auto& region) -> NbsResult {
        using T = std::decay_t<decltype(region)>;
        if constexpr (std::is_same_v<T, Polytope>) {
          return nbs_polytope(region, problem.d0);
        } else {
          return nbs_concave(region, problem.d0);
        }
      },
      problem.feasible);
}

}  // namespace icbargain
