#include "icbargain/serialize.hpp"

namespace icbargain {

Json to_json(const Payoff& p) { return Json::array({p.u1, p.u2}); }

Json to_json(const ChannelParams& ch) {
  return {{"a", ch.a()}, {"b", ch.b()}, {"p1", ch.p1()}, {"p2", ch.p2()}};
}

Json to_json(const Regime& r) {
  return {{"tag", regime_name(r.tag)}, {"noisy", r.noisy}};
}

Json to_json(const PowerSplit& s) { return {{"alpha", s.alpha}, {"beta", s.beta}}; }

Json to_json(const Polytope& region) {
  Json rows = Json::array();
  const auto redundant = region.redundant_rows();
  for (std::size_t i = 0; i < region.rows.size(); ++i) {
    const auto& r = region.rows[i];
    rows.push_back({{"label", r.label},
                    {"coeffs", Json::array({r.c1, r.c2})},
                    {"bound", r.bound},
                    {"redundant", static_cast<bool>(redundant[i])}});
  }
  Json verts = Json::array();
  for (const auto& v : region.vertices()) verts.push_back(to_json(v));
  Json extreme = Json::array();
  for (const auto& v : extreme_points(region)) extreme.push_back(to_json(v));
  return {{"scheme", scheme_name(region.scheme)},
          {"name", region.name},
          {"caps", to_json(region.caps)},
          {"rows", rows},
          {"vertices", verts},
          {"extreme_points", extreme}};
}

Json to_json(const Frontier& f) {
  Json pts = Json::array();
  for (const auto& p : f.points) pts.push_back(to_json(p));
  return {{"sampled", f.sampled}, {"points", pts}};
}

Json to_json(const Condition& c) {
  return {{"name", c.name}, {"lhs", c.lhs}, {"rhs", c.rhs}};
}

namespace {

Json conditions(const std::vector<Condition>& cs) {
  Json out = Json::array();
  for (const auto& c : cs) out.push_back(to_json(c));
  return out;
}

}  // namespace

Json to_json(const Phase1Outcome& out) {
  Json j = {{"cooperate", out.cooperate},
            {"reason", phase1_reason_name(out.reason)},
            {"scheme", out.scheme}};
  j["split"] = out.split ? to_json(*out.split) : Json(nullptr);
  j["failed_conditions"] = conditions(out.failed_conditions);
  return j;
}

Json to_json(const RegularityReport& rep) {
  return {{"essential", rep.essential},
          {"regular", rep.regular},
          {"structurally_regular", rep.structurally_regular},
          {"failed_conditions", conditions(rep.failed_conditions)}};
}

Json to_json(const NbsResult& res) {
  Json j = {{"point", to_json(res.point)},
            {"multipliers", res.multipliers},
            {"active_rows", res.active_rows},
            {"active_caps", Json::array({res.active_caps[0], res.active_caps[1]})},
            {"cap_multipliers", Json::array({res.cap_multipliers[0], res.cap_multipliers[1]})},
            {"nash_product", res.nash_product}};
  if (res.rho) j["rho"] = Json::array({*res.rho, 1.0 - *res.rho});
  return j;
}

Json to_json(const SpePair& spe) {
  return {{"gbar", to_json(spe.gbar)},
          {"gtilde", to_json(spe.gtilde)},
          {"gbar_segment", spe.gbar_segment},
          {"gtilde_segment", spe.gtilde_segment}};
}

Json to_json(const GameTrace& trace) {
  Json events = Json::array();
  for (const auto& e : trace.events) {
    Json ev = {{"round", e.round}, {"kind", event_name(e.kind)}, {"player", e.player}};
    if (e.kind == EventKind::kOffer) ev["offer"] = to_json(e.offer);
    events.push_back(ev);
  }
  return {{"rounds", trace.rounds},
          {"agreed", trace.agreed},
          {"payoff", to_json(trace.payoff)},
          {"events", events}};
}

Json to_json(const GdofParams& theta) {
  return {{"theta1", theta.theta1()}, {"theta2", theta.theta2()}, {"theta3", theta.theta3()}};
}

Json to_json(const GdofRegion& region) {
  Json bounds = Json::object();
  for (const auto& [name, v] : region.bounds) bounds[name] = v;
  Json j = to_json(region.polytope);
  j["regime"] = gdof_regime_name(region.regime);
  j["bounds"] = bounds;
  return j;
}

}  // namespace icbargain
