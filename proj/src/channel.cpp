#include "icbargain/channel.hpp"

#include <cmath>
#include <string>

#include "icbargain/error.hpp"

namespace icbargain {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kDomain: return "Domain";
    case ErrorCode::kPrecondition: return "Precondition";
    case ErrorCode::kNotEssential: return "NotEssential";
    case ErrorCode::kHypothesisViolated: return "HypothesisViolated";
    case ErrorCode::kNotRegular: return "NotRegular";
    case ErrorCode::kUnsupportedRegime: return "UnsupportedRegime";
    case ErrorCode::kRoundLimit: return "RoundLimit";
    case ErrorCode::kInternal: return "Internal";
  }
  return "Unknown";
}

ChannelParams::ChannelParams(double a, double b, double p1, double p2)
    : a_(a), b_(b), p1_(p1), p2_(p2) {
  const bool finite = std::isfinite(a) && std::isfinite(b) && std::isfinite(p1) &&
                      std::isfinite(p2);
  if (!finite || a < 0 || b < 0 || p1 <= 0 || p2 <= 0) {
    throw Error(ErrorCode::kDomain,
                "channel parameters need finite a,b >= 0 and p1,p2 > 0");
  }
}

std::string regime_name(RegimeTag tag) {
  switch (tag) {
    case RegimeTag::kStrong: return "strong";
    case RegimeTag::kWeak: return "weak";
    case RegimeTag::kMixedAWeak: return "mixed_a_weak";
    case RegimeTag::kMixedBWeak: return "mixed_b_weak";
  }
  return "unknown";
}

double cap(double x) {
  if (!std::isfinite(x) || x < 0) {
    throw Error(ErrorCode::kDomain, "cap() needs a finite nonnegative argument");
  }
  return 0.5 * std::log2(1.0 + x);
}

Regime classify_regime(const ChannelParams& ch) {
  const bool a_strong = ch.a() >= 1.0;
  const bool b_strong = ch.b() >= 1.0;
  Regime r;
  if (a_strong && b_strong) {
    r.tag = RegimeTag::kStrong;
  } else if (!a_strong && !b_strong) {
    r.tag = RegimeTag::kWeak;
    const double lhs = std::sqrt(ch.a()) * (ch.b() * ch.p1() + 1.0) +
                       std::sqrt(ch.b()) * (ch.a() * ch.p2() + 1.0);
    r.noisy = lhs <= 1.0;
  } else if (!a_strong) {
    r.tag = RegimeTag::kMixedAWeak;
  } else {
    r.tag = RegimeTag::kMixedBWeak;
  }
  return r;
}

RatePair disagreement_point(const ChannelParams& ch) {
  return {cap(ch.p1() / (1.0 + ch.a() * ch.p2())), cap(ch.p2() / (1.0 + ch.b() * ch.p1()))};
}

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

}  // namespace icbargain
