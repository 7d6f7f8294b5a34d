#pragma once

#include <string>

namespace icbargain {

// A pair of payoffs. Rates are in bits per real channel use; the same type
// carries generalized degrees of freedom and abstract bargaining payoffs.
struct Payoff {
  double u1 = 0.0;
  double u2 = 0.0;

  double operator[](int i) const { return i == 0 ? u1 : u2; }
  double& operator[](int i) { return i == 0 ? u1 : u2; }
};

using RatePair = Payoff;

// Two-user Gaussian interference channel, linear domain.
//   y1 = x1 + sqrt(a) x2 + z1,   y2 = sqrt(b) x1 + x2 + z2,   E[x_i^2] <= p_i
class ChannelParams {
 public:
  // Throws Error(kDomain) unless a,b >= 0 and p1,p2 > 0, all finite.
  ChannelParams(double a, double b, double p1, double p2);

  double a() const { return a_; }
  double b() const { return b_; }
  double p1() const { return p1_; }
  double p2() const { return p2_; }

  double snr1() const { return p1_; }
  double snr2() const { return p2_; }
  double inr1() const { return a_ * p2_; }
  double inr2() const { return b_ * p1_; }

  // Relabels the users: (a, b, p1, p2) -> (b, a, p2, p1).
  ChannelParams swapped() const { return {b_, a_, p2_, p1_}; }

 private:
  double a_;
  double b_;
  double p1_;
  double p2_;
};

enum class RegimeTag { kStrong, kWeak, kMixedAWeak, kMixedBWeak };

struct Regime {
  RegimeTag tag = RegimeTag::kStrong;
  bool noisy = false;  // only ever set when tag == kWeak

  bool is_mixed() const {
    return tag == RegimeTag::kMixedAWeak || tag == RegimeTag::kMixedBWeak;
  }
};

std::string regime_name(RegimeTag tag);

// 0.5 * log2(1 + x). Throws Error(kDomain) for negative or non-finite x.
double cap(double x);

// a >= 1 counts as strong on that link (likewise for b).
Regime classify_regime(const ChannelParams& params);

// Rates when each receiver treats the other user's signal as noise.
RatePair disagreement_point(const ChannelParams& params);

// Power ratio from decibels: 10^(db / 10).
double db_to_linear(double db);

}  // namespace icbargain
