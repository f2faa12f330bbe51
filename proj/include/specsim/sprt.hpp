#pragma once

#include "specsim/channel.hpp"

namespace specsim {

// Bernoulli failed-transmission rates under H0 (no attack) and H1 (attack).
struct SprtHypotheses {
  double theta0;  // = p10
  double theta1;  // = 1 - p11(1-alpha)

  SprtHypotheses(double theta0_, double theta1_);

  bool well_posed() const { return theta1 > theta0; }
};

// theta0 = p10, theta1 = 1 - p11(1-alpha).
SprtHypotheses hypotheses_from_attack(double alpha,
                                      const GilbertElliotParams& params);

struct SprtState {
  double llr_sum = 0.0;
  long samples_seen = 0;
};

struct SprtThresholds {
  double upper_a;
  double lower_b;

  SprtThresholds(double upper, double lower);
};

enum class SprtDecision { AcceptH1, AcceptH0, Continue };

// Log-likelihood ratio of one Bernoulli observation,
// ln(theta1/theta0) for x = 1, ln((1-theta1)/(1-theta0)) for x = 0.
double llr_increment(int observation, const SprtHypotheses& hyp);

// Folds one observation into the running LLR and applies the decision rule:
// S >= a accepts H1, S < b accepts H0, otherwise continue.
SprtDecision sprt_step(SprtState& state, int observation,
                       const SprtHypotheses& hyp, const SprtThresholds& thr);

// Standard approximations a = ln((1-p_m)/p_fa), b = ln(p_m/(1-p_fa)).
// Requires 0 < p_fa, p_m < 0.5.
SprtThresholds wald_thresholds(double p_fa, double p_m);

// Expected samples to detection under H1:
// E[N|H1] = c / KL(Bernoulli(theta1) || Bernoulli(theta0)).
// Requires alpha > 0 and p11 > p01 so the hypotheses separate.
double asn_under_attack(double alpha, const GilbertElliotParams& params,
                        double c);

}  // namespace specsim
