#include "icbargain/regions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <utility>

#include "icbargain/error.hpp"

namespace icbargain {

std::string scheme_name(Scheme s) {
  switch (s) {
    case Scheme::kHanKobayashi: return "HK";
    case Scheme::kStrongCapacity: return "StrongCapacity";
    case Scheme::kMac: return "MAC";
    case Scheme::kGdofScaled: return "GdofScaled";
    case Scheme::kCustom: return "Custom";
  }
  return "Unknown";
}

std::vector<HalfPlane> Polytope::constraints() const {
  std::vector<HalfPlane> out;
  out.reserve(4 + rows.size());
  out.push_back({-1.0, 0.0, -lower.u1});
  out.push_back({0.0, -1.0, -lower.u2});
  out.push_back({1.0, 0.0, caps.u1});
  out.push_back({0.0, 1.0, caps.u2});
  for (const auto& r : rows) out.push_back({r.c1, r.c2, r.bound});
  return out;
}

bool Polytope::contains(const Payoff& g, double tol) const {
  const auto cs = constraints();
  return std::all_of(cs.begin(), cs.end(), [&](const HalfPlane& h) {
    return h.lhs(g) <= h.b + tol * std::max(1.0, std::abs(h.b));
  });
}

std::vector<Payoff> Polytope::vertices() const {
  const auto cs = constraints();
  return polygon_vertices(cs);
}

std::vector<bool> Polytope::redundant_rows(double tol) const {
  const auto verts = vertices();
  std::vector<bool> out;
  out.reserve(rows.size());
  for (const auto& r : rows) {
    const HalfPlane h{r.c1, r.c2, r.bound};
    const bool tight = std::any_of(verts.begin(), verts.end(), [&](const Payoff& v) {
      return std::abs(h.slack(v)) <= tol * std::max(1.0, std::abs(h.b));
    });
    out.push_back(!tight);
  }
  return out;
}

namespace {

// 1/x clipped to [0,1]; x <= 1 (including x = 0) gives 1.
double inverse_clipped(double x) { return x > 1.0 ? 1.0 / x : 1.0; }

std::string split_label(const PowerSplit& s) {
  std::ostringstream os;
  os << "HK(" << s.alpha << "," << s.beta << ")";
  return os.str();
}

}  // namespace

PowerSplit hk_power_split(const ChannelParams& ch) {
  switch (classify_regime(ch).tag) {
    case RegimeTag::kStrong: return {0.0, 0.0};
    case RegimeTag::kWeak: return {inverse_clipped(ch.inr2()), inverse_clipped(ch.inr1())};
    case RegimeTag::kMixedAWeak: return {0.0, inverse_clipped(ch.inr1())};
    case RegimeTag::kMixedBWeak: return {inverse_clipped(ch.inr2()), 0.0};
  }
  return {};
}

HkBounds hk_bounds(const ChannelParams& ch, const PowerSplit& split) {
  if (!(split.alpha >= 0 && split.alpha <= 1 && split.beta >= 0 && split.beta <= 1)) {
    throw Error(ErrorCode::kDomain, "power split fractions must lie in [0,1]");
  }
  const double a = ch.a();
  const double b = ch.b();
  const double p1 = ch.p1();
  const double p2 = ch.p2();
  const double al = split.alpha;
  const double be = split.beta;
  // Interference-plus-noise seen at each receiver from the private parts.
  const double n1 = 1.0 + a * be * p2;
  const double n2 = 1.0 + b * al * p1;

  const double own1_all = cap((p1 + a * (1 - be) * p2) / n1);
  const double own2_all = cap((p2 + b * (1 - al) * p1) / n2);
  const double priv1 = cap(al * p1 / n1);
  const double priv2 = cap(be * p2 / n2);
  const double mixed1 = cap((al * p1 + a * (1 - be) * p2) / n1);
  const double mixed2 = cap((be * p2 + b * (1 - al) * p1) / n2);

  HkBounds f;
  f.phi1 = cap(p1 / n1);
  f.phi2 = cap(p2 / n2);
  f.phi31 = own1_all + priv2;
  f.phi32 = priv1 + own2_all;
  f.phi33 = mixed1 + mixed2;
  f.phi3 = std::min({f.phi31, f.phi32, f.phi33});
  f.phi4 = own1_all + priv1 + mixed2;
  f.phi5 = own2_all + priv2 + mixed1;
  for (double v : {f.phi1, f.phi2, f.phi3, f.phi4, f.phi5}) {
    if (!std::isfinite(v)) throw Error(ErrorCode::kInternal, "non-finite H-K bound");
  }
  return f;
}

Polytope hk_region(const ChannelParams& ch, const PowerSplit& split) {
  const HkBounds f = hk_bounds(ch, split);
  Polytope p;
  p.scheme = Scheme::kHanKobayashi;
  p.name = split_label(split);
  p.caps = {f.phi1, f.phi2};
  p.rows = {{1.0, 1.0, f.phi3, "phi3"}, {2.0, 1.0, f.phi4, "phi4"}, {1.0, 2.0, f.phi5, "phi5"}};
  return p;
}

double strong_sum_bound(const ChannelParams& ch) {
  return std::min(cap(ch.p1() + ch.a() * ch.p2()), cap(ch.b() * ch.p1() + ch.p2()));
}

Polytope strong_capacity_region(const ChannelParams& ch) {
  if (classify_regime(ch).tag != RegimeTag::kStrong) {
    throw Error(ErrorCode::kPrecondition, "strong capacity region needs a >= 1 and b >= 1");
  }
  Polytope p;
  p.scheme = Scheme::kStrongCapacity;
  p.name = "StrongCapacity";
  p.caps = {cap(ch.p1()), cap(ch.p2())};
  p.rows = {{1.0, 1.0, strong_sum_bound(ch), "phi6"}};
  return p;
}

Polytope mac_region(double p1, double p2) {
  if (!(p1 > 0 && p2 > 0 && std::isfinite(p1) && std::isfinite(p2))) {
    throw Error(ErrorCode::kDomain, "MAC powers must be finite and positive");
  }
  Polytope p;
  p.scheme = Scheme::kMac;
  p.name = "MAC";
  p.caps = {cap(p1), cap(p2)};
  p.rows = {{1.0, 1.0, cap(p1 + p2), "phi0"}};
  return p;
}

CurveRegion::CurveRegion(std::string name, Curve curve, Curve tangent)
    : name_(std::move(name)), curve_(std::move(curve)), tangent_(std::move(tangent)) {}

double CurveRegion::param_for_x(double x) const {
  if (x <= top().u1) return 0.0;
  if (x >= right().u1) return 1.0;
  double lo = 0.0;
  double hi = 1.0;
  for (int it = 0; it < 200 && hi - lo > 1e-16; ++it) {
    const double mid = 0.5 * (lo + hi);
    (at(mid).u1 < x ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double CurveRegion::upper(double x) const {
  if (x > right().u1) return -1.0;
  return at(param_for_x(x)).u2;
}

bool CurveRegion::contains(const Payoff& g, double tol) const {
  if (g.u1 < -tol || g.u2 < -tol) return false;
  if (g.u1 > right().u1 + tol) return false;
  return g.u2 <= upper(std::max(g.u1, 0.0)) + tol;
}

double tdm_rate(double rho, double power) {
  if (rho <= 0.0) return 0.0;
  return rho * cap(power / rho);
}

double tdm_rate_slope(double rho, double power) {
  if (rho <= 0.0) return std::numeric_limits<double>::infinity();
  const double s = power / rho;
  return cap(s) - s / (2.0 * std::log(2.0) * (1.0 + s));
}

CurveRegion tdm_region(double p1, double p2) {
  if (!(p1 > 0 && p2 > 0 && std::isfinite(p1) && std::isfinite(p2))) {
    throw Error(ErrorCode::kDomain, "TDM powers must be finite and positive");
  }
  return CurveRegion("TDM", [p1, p2](double t) {
    t = std::clamp(t, 0.0, 1.0);
    return Payoff{tdm_rate(t, p1), tdm_rate(1.0 - t, p2)};
  }, [p1, p2](double t) {
    t = std::clamp(t, 0.0, 1.0);
    return Payoff{tdm_rate_slope(t, p1), -tdm_rate_slope(1.0 - t, p2)};
  });
}

Frontier tdm_frontier(double p1, double p2, int samples) {
  if (samples < 2) throw Error(ErrorCode::kDomain, "TDM frontier needs at least 2 samples");
  const CurveRegion region = tdm_region(p1, p2);
  Frontier f;
  f.sampled = true;
  f.points.reserve(static_cast<std::size_t>(samples));
  for (int i = 0; i < samples; ++i) {
    f.points.push_back(region.at(static_cast<double>(i) / (samples - 1)));
  }
  return f;
}

std::vector<RatePair> extreme_points(const Polytope& region) {
  const auto verts = region.vertices();
  if (verts.empty()) throw Error(ErrorCode::kPrecondition, "empty polytope");
  return efficient_chain(verts, Efficiency::kStrong);
}

Frontier efficient_frontier(const Polytope& region) {
  const auto verts = region.vertices();
  if (verts.empty()) throw Error(ErrorCode::kPrecondition, "empty polytope");
  return {efficient_chain(verts, Efficiency::kWeak), false};
}

Frontier ir_frontier(const Polytope& region, const Payoff& d0) {
  if (!region.contains(d0)) {
    throw Error(ErrorCode::kPrecondition, "disagreement point lies outside the region");
  }
  auto cs = region.constraints();
  cs.push_back({-1.0, 0.0, -d0.u1});
  cs.push_back({0.0, -1.0, -d0.u2});
  const auto verts = polygon_vertices(cs);
  if (verts.empty()) return {{d0}, false};
  return {efficient_chain(verts, Efficiency::kWeak), false};
}

Frontier ir_frontier(const CurveRegion& region, const Payoff& d0, int samples) {
  if (!region.contains(d0)) {
    throw Error(ErrorCode::kPrecondition, "disagreement point lies outside the region");
  }
  if (samples < 2) throw Error(ErrorCode::kDomain, "frontier needs at least 2 samples");
  const double t_lo = region.param_for_x(d0.u1);
  // Largest parameter whose second coordinate still reaches d0.u2.
  double lo = t_lo;
  double hi = 1.0;
  if (region.at(hi).u2 >= d0.u2) {
    lo = hi;
  } else {
    for (int it = 0; it < 200 && hi - lo > 1e-16; ++it) {
      const double mid = 0.5 * (lo + hi);
      (region.at(mid).u2 >= d0.u2 ? lo : hi) = mid;
    }
  }
  const double t_hi = lo;
  Frontier f;
  f.sampled = true;
  if (t_hi - t_lo <= 1e-15) {
    f.points.push_back(d0);
    return f;
  }
  for (int i = 0; i < samples; ++i) {
    const double t = t_lo + (t_hi - t_lo) * i / (samples - 1);
    Payoff g = region.at(t);
    g.u1 = std::max(g.u1, d0.u1);
    g.u2 = std::max(g.u2, d0.u2);
    f.points.push_back(g);
  }
  return f;
}

}  // namespace icbargain
