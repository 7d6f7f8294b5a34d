#pragma once

#include <string>
#include <utility>
#include <vector>

#include "icbargain/bargain.hpp"
#include "icbargain/nbs.hpp"
#include "icbargain/regions.hpp"

namespace icbargain {

using GdofPoint = Payoff;

// High-SNR exponents: theta1 = log SNR2 / log SNR1, theta2 = log INR1 / log
// SNR1, theta3 = log INR2 / log SNR1. All strictly positive.
class GdofParams {
 public:
  GdofParams(double theta1, double theta2, double theta3);

  // Exponents of a finite-SNR instance; needs snr1 > 1.
  static GdofParams from_snr(double snr1, double snr2, double inr1, double inr2);

  double theta1() const { return t1_; }
  double theta2() const { return t2_; }
  double theta3() const { return t3_; }

 private:
  double t1_;
  double t2_;
  double t3_;
};

enum class GdofRegime {
  kD1Strong,  // theta2 >= theta1, theta3 >= 1
  kD2Weak,    // theta2 <  theta1, theta3 <  1
  kD3Mixed,   // theta2 >= theta1, theta3 <  1
  kD4Tdm,
};

std::string gdof_regime_name(GdofRegime r);

// Throws Error(kUnsupportedRegime) for theta2 < theta1 with theta3 >= 1.
GdofRegime classify_gdof(const GdofParams& theta);

struct GdofRegion {
  GdofRegime regime = GdofRegime::kD1Strong;
  Polytope polytope;  // caps (1,1); rows in (d1, d2) with theta1-scaled coefficients
  std::vector<std::pair<std::string, double>> bounds;  // named varphi values
};

GdofRegion gdof_region(const GdofParams& theta);

// d1 + d2 <= 1.
GdofRegion gdof_tdm_region();

// ((1 - theta2)+, (1 - theta3/theta1)+).
GdofPoint gdof_disagreement(const GdofParams& theta);

// Strong and mixed always cooperate; weak cooperates iff d0 satisfies every
// row with strict inequality.
Phase1Outcome gdof_phase1(const GdofParams& theta);

NbsResult gdof_nbs(const GdofParams& theta);
NbsResult gdof_nbs_tdm(const GdofParams& theta);

}  // namespace icbargain
