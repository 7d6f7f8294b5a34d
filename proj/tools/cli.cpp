#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>

#include "icbargain/aobg.hpp"
#include "icbargain/error.hpp"
#include "icbargain/gdof.hpp"
#include "icbargain/serialize.hpp"
#include "presets.hpp"

namespace icbargain::cli {

namespace {

constexpr const char* kSchema = "icbargain/1";
constexpr const char* kSweepSchema = "icbargain-sweep/1";
constexpr double kUnset = std::numeric_limits<double>::quiet_NaN();

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Refusal with a structured payload; exit code 1.
struct Refusal {
  std::string code;
  std::string message;
  Json detail;
};

struct Options {
  std::string command;
  std::string preset;
  double a = kUnset;
  double b = kUnset;
  double snr1_db = kUnset;
  double snr2_db = kUnset;
  double power1 = kUnset;
  double power2 = kUnset;
  std::string scheme = "hk";
  std::vector<double> p1;
  std::vector<double> p2;
  std::uint64_t seed = 1;
  std::string format = "json";
  std::string out;
  int samples = kDefaultTdmSamples;

  std::string var;
  double from = kUnset;
  double to = kUnset;
  int steps = 0;
  std::string var2;
  double from2 = kUnset;
  double to2 = kUnset;
  int steps2 = 0;

  int trace_runs = 0;
  int first_mover = 1;
  std::string responder = "equilibrium";

  double theta1 = kUnset;
  double theta2 = kUnset;
  double theta3 = kUnset;
};

bool set(double v) { return !std::isnan(v); }

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

// ---------------------------------------------------------------- parsing

void add_channel_flags(CLI::App* sub, Options& o, bool gains) {
  if (gains) {
    sub->add_option("--a", o.a, "cross gain into receiver 1 (linear)");
    sub->add_option("--b", o.b, "cross gain into receiver 2 (linear)");
  }
  auto* s1 = sub->add_option("--snr1-db", o.snr1_db, "power of user 1 in dB");
  auto* s2 = sub->add_option("--snr2-db", o.snr2_db, "power of user 2 in dB");
  auto* l1 = sub->add_option("--power1", o.power1, "power of user 1, linear");
  auto* l2 = sub->add_option("--power2", o.power2, "power of user 2, linear");
  for (auto* db : {s1, s2}) {
    for (auto* lin : {l1, l2}) db->excludes(lin);
  }
}

void add_common_flags(CLI::App* sub, Options& o) {
  sub->add_option("--preset", o.preset, "figure preset (fig3 ... fig10)");
  sub->add_option("--format", o.format, "output format")->check(CLI::IsMember({"json", "csv"}));
  sub->add_option("--out", o.out, "output file (relative paths go under $ICBARGAIN_OUT_DIR)");
}

void add_scheme_flag(CLI::App* sub, Options& o) {
  sub->add_option("--scheme", o.scheme, "cooperative scheme")
      ->check(CLI::IsMember({"hk", "tdm", "both"}));
}

void add_prob_flags(CLI::App* sub, Options& o) {
  sub->add_option("--p1", o.p1, "breakdown probability after user 1's offer (comma list)")
      ->delimiter(',');
  sub->add_option("--p2", o.p2, "breakdown probability after user 2's offer (comma list)")
      ->delimiter(',');
}

bool user_gave(const std::vector<std::string>& args, const std::string& flag) {
  const std::string eq = flag + "=";
  return std::any_of(args.begin(), args.end(), [&](const std::string& s) {
    return s == flag || s.rfind(eq, 0) == 0;
  });
}

std::optional<std::string> flag_value(const std::vector<std::string>& args,
                                      const std::string& flag) {
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == flag && i + 1 < args.size()) return args[i + 1];
    if (args[i].rfind(flag + "=", 0) == 0) return args[i].substr(flag.size() + 1);
  }
  return std::nullopt;
}

// Preset values come first so that explicit flags win; values the user
// already gave are skipped to keep single-valued options single.
std::vector<std::string> expand_preset(const std::vector<std::string>& args) {
  if (args.empty() || args[0].rfind("-", 0) == 0) return args;
  const auto name = flag_value(args, "--preset");
  if (!name) return args;
  const Preset* p = find_preset(*name);
  if (!p) throw UsageError("unknown preset '" + *name + "'");
  if (p->command != args[0]) {
    throw UsageError("preset " + p->name + " belongs to the '" + p->command + "' command");
  }
  const bool linear = user_gave(args, "--power1") || user_gave(args, "--power2");
  std::vector<std::string> out = {args[0]};
  for (const auto& [key, value] : p->values) {
    const std::string flag = "--" + key;
    if (user_gave(args, flag)) continue;
    if (linear && (key == "snr1-db" || key == "snr2-db")) continue;
    out.push_back(flag);
    out.push_back(value);
  }
  out.insert(out.end(), args.begin() + 1, args.end());
  return out;
}

// ---------------------------------------------------------------- inputs

struct PowerInput {
  double p1 = kUnset;
  double p2 = kUnset;
};

PowerInput powers(const Options& o) {
  const bool db = set(o.snr1_db) || set(o.snr2_db);
  const bool lin = set(o.power1) || set(o.power2);
  if (db && lin) throw UsageError("dB and linear power flags are mutually exclusive");
  if (db) {
    if (!set(o.snr1_db) || !set(o.snr2_db)) throw UsageError("need both --snr1-db and --snr2-db");
    return {db_to_linear(o.snr1_db), db_to_linear(o.snr2_db)};
  }
  if (lin) {
    if (!set(o.power1) || !set(o.power2)) throw UsageError("need both --power1 and --power2");
    return {o.power1, o.power2};
  }
  throw UsageError("need --snr1-db/--snr2-db or --power1/--power2");
}

ChannelParams channel(const Options& o) {
  if (!set(o.a) || !set(o.b)) throw UsageError("need --a and --b");
  const PowerInput p = powers(o);
  return {o.a, o.b, p.p1, p.p2};
}

std::vector<BreakdownProbs> prob_pairs(const Options& o, bool required) {
  if (o.p1.size() != o.p2.size()) throw UsageError("--p1 and --p2 need the same number of values");
  if (required && o.p1.empty()) throw UsageError("need --p1 and --p2");
  std::vector<BreakdownProbs> out;
  for (std::size_t i = 0; i < o.p1.size(); ++i) out.push_back({o.p1[i], o.p2[i]});
  return out;
}

Json params_block(const Options& o) {
  Json j = Json::object();
  if (!o.preset.empty()) {
    const Preset* p = find_preset(o.preset);
    j["preset"] = o.preset;
    j["caption"] = p ? p->caption : "";
  }
  auto put = [&](const char* key, double v) {
    if (set(v)) j[key] = v;
  };
  put("a", o.a);
  put("b", o.b);
  put("snr1_db", o.snr1_db);
  put("snr2_db", o.snr2_db);
  put("power1", o.power1);
  put("power2", o.power2);
  put("theta1", o.theta1);
  put("theta2", o.theta2);
  put("theta3", o.theta3);
  if (!o.p1.empty()) j["p1"] = o.p1;
  if (!o.p2.empty()) j["p2"] = o.p2;
  if (!o.var.empty()) {
    j["var"] = o.var;
    put("from", o.from);
    put("to", o.to);
    j["steps"] = o.steps;
  }
  if (!o.var2.empty()) {
    j["var2"] = o.var2;
    put("from2", o.from2);
    put("to2", o.to2);
    j["steps2"] = o.steps2;
  }
  return j;
}

Json envelope(const Options& o) {
  Json j = Json::object();
  j["schema"] = kSchema;
  j["command"] = o.command;
  j["params"] = params_block(o);
  return j;
}

Refusal phase1_refusal(const Phase1Outcome& p) {
  std::string msg = "pre-bargaining fails: " + phase1_reason_name(p.reason);
  if (!p.failed_conditions.empty()) msg += " (" + p.failed_conditions.front().name + ")";
  return {"Phase1Failed", msg, to_json(p)};
}

// ---------------------------------------------------------------- commands

Json regularity_or_null(const ChannelParams& ch, const Phase1Outcome& p1) {
  if (!p1.cooperate) return nullptr;
  const auto prob = hk_problem(ch);
  return to_json(is_regular(ch, std::get<Polytope>(prob.feasible), prob.d0));
}

Json cmd_classify(const Options& o) {
  const ChannelParams ch = channel(o);
  const Phase1Outcome p1 = phase1(ch);
  Json j = envelope(o);
  j["channel"] = to_json(ch);
  j["regime"] = to_json(classify_regime(ch));
  j["split"] = to_json(hk_power_split(ch));
  j["disagreement"] = to_json(disagreement_point(ch));
  j["phase1"] = to_json(p1);
  j["regularity"] = regularity_or_null(ch, p1);
  return j;
}

Json hk_region_block(const ChannelParams& ch) {
  const Polytope region = hk_region(ch, hk_power_split(ch));
  const RatePair d0 = disagreement_point(ch);
  Json j = {{"region", to_json(region)}};
  j["ir_frontier"] = region.contains(d0) ? to_json(ir_frontier(region, d0)) : Json(nullptr);
  if (classify_regime(ch).tag == RegimeTag::kStrong) {
    j["strong_capacity_region"] = to_json(strong_capacity_region(ch));
  }
  return j;
}

Json tdm_region_block(const ChannelParams& ch, int samples) {
  const RatePair d0 = disagreement_point(ch);
  const CurveRegion region = tdm_region(ch.p1(), ch.p2());
  Json j = {{"frontier", to_json(tdm_frontier(ch.p1(), ch.p2(), samples))}};
  j["ir_frontier"] = region.contains(d0) ? to_json(ir_frontier(region, d0, samples)) : Json(nullptr);
  return j;
}

Json cmd_region(const Options& o) {
  const ChannelParams ch = channel(o);
  const Phase1Outcome p1 = phase1(ch);
  Json j = envelope(o);
  j["channel"] = to_json(ch);
  j["regime"] = to_json(classify_regime(ch));
  j["disagreement"] = to_json(disagreement_point(ch));
  j["phase1"] = to_json(p1);
  if (o.scheme != "tdm") {
    j["hk"] = hk_region_block(ch);
    j["hk"]["regularity"] = regularity_or_null(ch, p1);
  }
  if (o.scheme != "hk") j["tdm"] = tdm_region_block(ch, o.samples);
  return j;
}

Json hk_nbs_block(const ChannelParams& ch) {
  const Phase1Outcome p1 = phase1(ch);
  if (!p1.cooperate) throw phase1_refusal(p1);
  const auto prob = hk_problem(ch);
  const auto& region = std::get<Polytope>(prob.feasible);
  return {{"scheme", p1.scheme},
          {"region", to_json(region)},
          {"nbs", to_json(nbs(prob))},
          {"regularity", to_json(is_regular(ch, region, prob.d0))}};
}

Json tdm_nbs_block(const ChannelParams& ch) {
  const BargainingProblem prob{tdm_region(ch.p1(), ch.p2()), disagreement_point(ch)};
  return {{"scheme", "TDM"}, {"nbs", to_json(nbs(prob))}};
}

Json cmd_nbs(const Options& o) {
  const ChannelParams ch = channel(o);
  Json j = envelope(o);
  j["channel"] = to_json(ch);
  j["regime"] = to_json(classify_regime(ch));
  j["disagreement"] = to_json(disagreement_point(ch));
  if (o.scheme != "tdm") j["hk"] = hk_nbs_block(ch);
  if (o.scheme != "hk") j["tdm"] = tdm_nbs_block(ch);
  return j;
}

Json equilibria(const BargainingProblem& prob, const std::vector<BreakdownProbs>& pairs,
                const Options& o) {
  Json list = Json::array();
  for (const auto& pr : pairs) {
    const SpePair spe = spe_pair(prob, pr);
    Json e = {{"p1", pr.p1}, {"p2", pr.p2}, {"spe", to_json(spe)}};
    e["outcome"] = to_json(o.first_mover == 1 ? spe.gbar : spe.gtilde);
    if (o.trace_runs > 0) {
      const int responder = 3 - o.first_mover;
      std::array<Strategy, 2> st = {Strategy::equilibrium(1, spe), Strategy::equilibrium(2, spe)};
      if (o.responder == "always-reject") {
        st[static_cast<std::size_t>(responder - 1)] = Strategy::always_reject(responder, prob);
      }
      Json traces = Json::array();
      int agreed = 0;
      double rounds = 0.0;
      for (int r = 0; r < o.trace_runs; ++r) {
        const GameTrace t =
            play_aobg(prob, pr, st, o.first_mover, o.seed + static_cast<std::uint64_t>(r));
        agreed += t.agreed;
        rounds += t.rounds;
        Json tj = to_json(t);
        tj["seed"] = o.seed + static_cast<std::uint64_t>(r);
        traces.push_back(std::move(tj));
      }
      e["playout"] = {{"runs", o.trace_runs},
                      {"first_mover", o.first_mover},
                      {"responder_strategy", o.responder},
                      {"agreed", agreed},
                      {"mean_rounds", rounds / o.trace_runs},
                      {"traces", traces}};
    }
    list.push_back(std::move(e));
  }
  return list;
}

Json cmd_aobg(const Options& o) {
  const ChannelParams ch = channel(o);
  const auto pairs = prob_pairs(o, true);
  for (const auto& pr : pairs) validate(pr);
  Json j = envelope(o);
  j["channel"] = to_json(ch);
  j["regime"] = to_json(classify_regime(ch));
  j["disagreement"] = to_json(disagreement_point(ch));
  if (o.scheme != "tdm") {
    const Phase1Outcome p1 = phase1(ch);
    if (!p1.cooperate) throw phase1_refusal(p1);
    const auto prob = hk_problem(ch);
    const auto rep = is_regular(ch, std::get<Polytope>(prob.feasible), prob.d0);
    if (!rep.regular) {
      throw Refusal{"NotRegular", "phase-2 problem is not regular; no unique equilibrium",
                    to_json(rep)};
    }
    j["hk"] = {{"scheme", p1.scheme},
               {"ir_frontier", to_json(ir_frontier(prob))},
               {"nbs", to_json(nbs(prob))},
               {"equilibria", equilibria(prob, pairs, o)}};
  }
  if (o.scheme != "hk") {
    const BargainingProblem prob{tdm_region(ch.p1(), ch.p2()), disagreement_point(ch)};
    j["tdm"] = {{"scheme", "TDM"},
                {"nbs", to_json(nbs(prob))},
                {"equilibria", equilibria(prob, pairs, o)}};
  }
  return j;
}

Json cmd_mac(const Options& o) {
  const PowerInput p = powers(o);
  const auto pairs = prob_pairs(o, false);
  for (const auto& pr : pairs) validate(pr);
  const Polytope region = mac_region(p.p1, p.p2);
  const RatePair d0 = disagreement_point({1.0, 1.0, p.p1, p.p2});
  Json j = envelope(o);
  j["region"] = to_json(region);
  j["disagreement"] = to_json(d0);
  j["nbs"] = to_json(nbs_mac(p.p1, p.p2));
  Json list = Json::array();
  for (const auto& pr : pairs) {
    const SpePair spe = spe_mac(p.p1, p.p2, pr);
    list.push_back({{"p1", pr.p1}, {"p2", pr.p2}, {"spe", to_json(spe)}});
  }
  j["equilibria"] = list;
  return j;
}

Json cmd_gdof(const Options& o) {
  if (!set(o.theta1) || !set(o.theta2) || !set(o.theta3)) {
    throw UsageError("need --theta1, --theta2 and --theta3");
  }
  const GdofParams th(o.theta1, o.theta2, o.theta3);
  const GdofRegion region = gdof_region(th);
  const Phase1Outcome p1 = gdof_phase1(th);
  Json j = envelope(o);
  j["theta"] = to_json(th);
  j["region"] = to_json(region);
  j["disagreement"] = to_json(gdof_disagreement(th));
  j["phase1"] = to_json(p1);
  if (o.scheme != "tdm") {
    if (!p1.cooperate) throw phase1_refusal(p1);
    j["hk_nbs"] = to_json(gdof_nbs(th));
  }
  if (o.scheme != "hk") {
    j["tdm_region"] = to_json(gdof_tdm_region());
    j["tdm_nbs"] = to_json(gdof_nbs_tdm(th));
  }
  return j;
}

// ---------------------------------------------------------------- sweep

const std::set<std::string> kSweepVars = {"a",      "b",      "snr1-db", "snr2-db",
                                          "power1", "power2", "p1",      "p2"};

void assign(Options& o, const std::string& var, double v) {
  if (var == "a") o.a = v;
  else if (var == "b") o.b = v;
  else if (var == "snr1-db") o.snr1_db = v;
  else if (var == "snr2-db") o.snr2_db = v;
  else if (var == "power1") o.power1 = v;
  else if (var == "power2") o.power2 = v;
  else if (var == "p1") o.p1 = {v};
  else if (var == "p2") o.p2 = {v};
}

std::vector<double> grid(double from, double to, int steps) {
  std::vector<double> out;
  for (int i = 0; i < steps; ++i) {
    out.push_back(i == steps - 1 ? to : from + (to - from) * i / (steps - 1));
  }
  return out;
}

struct SweepRow {
  std::vector<double> x;
  std::optional<RatePair> d0;
  std::optional<Payoff> nbs;
  std::string regime;
  std::optional<bool> cooperate;
  std::optional<bool> regular;
  std::optional<bool> structural;
  std::optional<SpePair> spe;
  std::string note;
};

SweepRow sweep_point(const Options& o) {
  SweepRow row;
  ChannelParams ch = channel(o);
  const auto pairs = prob_pairs(o, false);
  row.regime = regime_name(classify_regime(ch).tag);
  row.d0 = disagreement_point(ch);
  try {
    std::optional<BargainingProblem> prob;
    if (o.scheme == "tdm") {
      prob = BargainingProblem{tdm_region(ch.p1(), ch.p2()), *row.d0};
      row.cooperate = is_essential(*prob);
      row.regular = row.cooperate;
      row.structural = *row.cooperate && is_structurally_regular(*prob);
      if (!*row.cooperate) return row;
    } else {
      const Phase1Outcome p1 = phase1(ch);
      row.cooperate = p1.cooperate;
      if (!p1.cooperate) {
        row.note = phase1_reason_name(p1.reason);
        return row;
      }
      prob = hk_problem(ch);
      const auto rep = is_regular(ch, std::get<Polytope>(prob->feasible), prob->d0);
      row.regular = rep.regular;
      row.structural = rep.structurally_regular;
    }
    row.nbs = nbs(*prob).point;
    if (!pairs.empty() && *row.regular) row.spe = spe_pair(*prob, pairs.front());
  } catch (const Error& e) {
    row.note = error_code_name(e.code());
  }
  return row;
}

std::string sweep_csv(const Options& o, const std::vector<SweepRow>& rows) {
  std::ostringstream os;
  os << "# schema=" << kSweepSchema << "\n";
  os << "# command=sweep\n";
  os << "# scheme=" << o.scheme << "\n";
  const Json params = params_block(o);
  for (const auto& [key, value] : params.items()) {
    os << "# " << key << "=";
    if (value.is_string()) {
      os << value.get<std::string>();
    } else if (value.is_array()) {
      for (std::size_t i = 0; i < value.size(); ++i) os << (i ? "," : "") << fmt(value[i]);
    } else {
      os << fmt(value.get<double>());
    }
    os << "\n";
  }
  os << o.var;
  if (!o.var2.empty()) os << "," << o.var2;
  os << ",r0_1,r0_2,nbs_1,nbs_2,regime,cooperate,regular,structurally_regular,"
        "gbar_1,gbar_2,gtilde_1,gtilde_2,note\n";
  auto num = [&](const std::optional<double>& v) { return v ? fmt(*v) : std::string(); };
  auto flag = [&](const std::optional<bool>& v) {
    return v ? std::string(*v ? "1" : "0") : std::string();
  };
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < r.x.size(); ++i) os << (i ? "," : "") << fmt(r.x[i]);
    auto opt = [](const auto& p, int k) -> std::optional<double> {
      if (!p) return std::nullopt;
      return (*p)[k];
    };
    os << "," << num(opt(r.d0, 0)) << "," << num(opt(r.d0, 1)) << "," << num(opt(r.nbs, 0))
       << "," << num(opt(r.nbs, 1)) << "," << r.regime << "," << flag(r.cooperate) << ","
       << flag(r.regular) << "," << flag(r.structural);
    if (r.spe) {
      os << "," << fmt(r.spe->gbar.u1) << "," << fmt(r.spe->gbar.u2) << ","
         << fmt(r.spe->gtilde.u1) << "," << fmt(r.spe->gtilde.u2);
    } else {
      os << ",,,,";
    }
    os << "," << r.note << "\n";
  }
  return os.str();
}

Json sweep_json(const Options& o, const std::vector<SweepRow>& rows) {
  Json j = envelope(o);
  j["schema"] = kSweepSchema;
  j["scheme"] = o.scheme;
  Json list = Json::array();
  for (const auto& r : rows) {
    Json e = Json::object();
    e[o.var] = r.x[0];
    if (!o.var2.empty()) e[o.var2] = r.x[1];
    e["r0"] = r.d0 ? to_json(*r.d0) : Json(nullptr);
    e["nbs"] = r.nbs ? to_json(*r.nbs) : Json(nullptr);
    e["regime"] = r.regime;
    e["cooperate"] = r.cooperate ? Json(*r.cooperate) : Json(nullptr);
    e["regular"] = r.regular ? Json(*r.regular) : Json(nullptr);
    e["structurally_regular"] = r.structural ? Json(*r.structural) : Json(nullptr);
    e["spe"] = r.spe ? to_json(*r.spe) : Json(nullptr);
    e["note"] = r.note;
    list.push_back(std::move(e));
  }
  j["rows"] = list;
  return j;
}

std::string cmd_sweep(const Options& o) {
  if (!kSweepVars.count(o.var)) throw UsageError("--var must be one of a, b, snr1-db, snr2-db, power1, power2, p1, p2");
  if (!set(o.from) || !set(o.to)) throw UsageError("need --from and --to");
  if (o.steps < 2) throw UsageError("--steps must be at least 2");
  const bool two = !o.var2.empty();
  if (two) {
    if (!kSweepVars.count(o.var2) || o.var2 == o.var) throw UsageError("invalid --var2");
    if (!set(o.from2) || !set(o.to2)) throw UsageError("need --from2 and --to2");
    if (o.steps2 < 2) throw UsageError("--steps2 must be at least 2");
  }
  if (o.p1.size() > 1 || o.p2.size() > 1) throw UsageError("sweep takes a single --p1/--p2 pair");
  if (o.scheme == "both") throw UsageError("sweep takes --scheme hk or tdm");

  // Validate the fixed inputs once with a representative point.
  Options probe = o;
  assign(probe, o.var, o.from);
  if (two) assign(probe, o.var2, o.from2);
  const auto linear_var = [](const std::string& v) { return v == "power1" || v == "power2"; };
  const auto db_var = [](const std::string& v) { return v == "snr1-db" || v == "snr2-db"; };
  if ((linear_var(o.var) || linear_var(o.var2)) && (set(o.snr1_db) || set(o.snr2_db))) {
    throw UsageError("dB and linear power flags are mutually exclusive");
  }
  if ((db_var(o.var) || db_var(o.var2)) && (set(o.power1) || set(o.power2))) {
    throw UsageError("dB and linear power flags are mutually exclusive");
  }
  channel(probe);
  prob_pairs(probe, false);

  const auto xs = grid(o.from, o.to, o.steps);
  const auto ys = two ? grid(o.from2, o.to2, o.steps2) : std::vector<double>{0.0};
  std::vector<SweepRow> rows;
  for (double x : xs) {
    for (double y : ys) {
      Options pt = o;
      assign(pt, o.var, x);
      if (two) assign(pt, o.var2, y);
      SweepRow r;
      try {
        r = sweep_point(pt);
      } catch (const Error& e) {
        r.note = error_code_name(e.code());
      }
      r.x = two ? std::vector<double>{x, y} : std::vector<double>{x};
      rows.push_back(std::move(r));
    }
  }
  if (o.format == "csv") return sweep_csv(o, rows);
  return sweep_json(o, rows).dump(2) + "\n";
}

// ---------------------------------------------------------------- output

void emit(const Options& o, const std::string& text, std::ostream& out) {
  if (o.out.empty()) {
    out << text;
    return;
  }
  namespace fs = std::filesystem;
  fs::path path(o.out);
  if (path.is_relative()) {
    if (const char* dir = std::getenv(kOutDirEnv); dir && *dir) path = fs::path(dir) / path;
  }
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::kDomain, "cannot open output file " + path.string());
  f << text;
}

Json error_json(const Options& o, const std::string& code, const std::string& message,
                const Json& detail) {
  Json j = envelope(o);
  j["error"] = {{"code", code}, {"message", message}};
  if (!detail.is_null()) j["error"]["detail"] = detail;
  return j;
}

}  // namespace

int run(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Bargaining analysis for two-user Gaussian interference channels.\n"
               "Rates are in bits per real channel use (log base 2)."};
  app.name("icbargain");
  app.require_subcommand(1);

  struct Cmd {
    const char* name;
    const char* help;
  };
  const Cmd cmds[] = {
      {"classify", "regime, power split, phase-1 incentives and regularity"},
      {"region", "H-K and/or TDM rate region with its frontier"},
      {"nbs", "Nash bargaining solution"},
      {"aobg", "alternating-offer equilibrium and optional play-outs"},
      {"mac", "multiple-access channel bargaining"},
      {"gdof", "generalized degrees of freedom region and NBS"},
      {"sweep", "one- or two-dimensional parameter sweep"},
  };
  std::map<std::string, CLI::App*> subs;
  for (const auto& c : cmds) {
    CLI::App* s = app.add_subcommand(c.name, c.help);
    subs[c.name] = s;
    add_common_flags(s, o);
  }
  for (const char* name : {"classify", "region", "nbs", "aobg", "sweep"}) {
    add_channel_flags(subs[name], o, true);
  }
  add_channel_flags(subs["mac"], o, false);
  for (const char* name : {"region", "nbs", "aobg", "gdof", "sweep"}) {
    add_scheme_flag(subs[name], o);
  }
  for (const char* name : {"aobg", "mac", "sweep"}) add_prob_flags(subs[name], o);
  subs["region"]->add_option("--samples", o.samples, "TDM frontier samples")
      ->check(CLI::Range(2, 1 << 20));

  CLI::App* aobg = subs["aobg"];
  aobg->add_option("--seed", o.seed, "play-out seed (run i uses seed + i)");
  aobg->add_option("--trace-runs", o.trace_runs, "number of seeded play-outs")
      ->check(CLI::Range(0, 1000000));
  aobg->add_option("--first-mover", o.first_mover, "player who proposes first")
      ->check(CLI::IsMember({1, 2}));
  aobg->add_option("--responder-strategy", o.responder, "strategy of the second mover")
      ->check(CLI::IsMember({"equilibrium", "always-reject"}));

  CLI::App* gd = subs["gdof"];
  gd->add_option("--theta1", o.theta1, "log SNR2 / log SNR1");
  gd->add_option("--theta2", o.theta2, "log INR1 / log SNR1");
  gd->add_option("--theta3", o.theta3, "log INR2 / log SNR1");

  CLI::App* sw = subs["sweep"];
  sw->add_option("--var", o.var, "swept input: a, b, snr1-db, snr2-db, power1, power2, p1, p2");
  sw->add_option("--from", o.from, "first grid value (inclusive)");
  sw->add_option("--to", o.to, "last grid value (inclusive)");
  sw->add_option("--steps", o.steps, "grid points");
  sw->add_option("--var2", o.var2, "second swept input (inner loop)");
  sw->add_option("--from2", o.from2);
  sw->add_option("--to2", o.to2);
  sw->add_option("--steps2", o.steps2);

  try {
    std::vector<std::string> args = expand_preset(raw_args);
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  } catch (const UsageError& e) {
    err << "icbargain: " << e.what() << "\n";
    return kExitUsage;
  }
  for (const auto& [name, s] : subs) {
    if (s->parsed()) o.command = name;
  }

  try {
    if (o.format == "csv" && o.command != "sweep") {
      throw UsageError("--format csv is only available for sweep");
    }
    std::string text;
    if (o.command == "sweep") {
      text = cmd_sweep(o);
    } else {
      Json j;
      if (o.command == "classify") j = cmd_classify(o);
      else if (o.command == "region") j = cmd_region(o);
      else if (o.command == "nbs") j = cmd_nbs(o);
      else if (o.command == "aobg") j = cmd_aobg(o);
      else if (o.command == "mac") j = cmd_mac(o);
      else if (o.command == "gdof") j = cmd_gdof(o);
      text = j.dump(2) + "\n";
    }
    emit(o, text, out);
    return kExitOk;
  } catch (const UsageError& e) {
    err << "icbargain: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Refusal& r) {
    out << error_json(o, r.code, r.message, r.detail).dump(2) << "\n";
    return kExitFailure;
  } catch (const Error& e) {
    out << error_json(o, error_code_name(e.code()), e.what(), nullptr).dump(2) << "\n";
    return kExitFailure;
  } catch (const std::exception& e) {
    err << "icbargain: " << e.what() << "\n";
    return kExitFailure;
  }
}

}  // namespace icbargain::cli
