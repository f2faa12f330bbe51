#include "specsim/sprt.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace specsim {

SprtHypotheses::SprtHypotheses(double theta0_, double theta1_)
    : theta0(theta0_), theta1(theta1_) {
  if (!(theta0 > 0.0 && theta0 < 1.0)) {
    throw std::invalid_argument("theta0 must be in (0,1)");
  }
  if (!(theta1 >= theta0 && theta1 <= 1.0)) {
    throw std::invalid_argument("theta1 must be in [theta0, 1]");
  }
}

SprtHypotheses hypotheses_from_attack(double alpha,
                                      const GilbertElliotParams& params) {
  // Algebraically 1 - p11(1-alpha); this form is exact at alpha = 0.
  return SprtHypotheses(params.p10, params.p10 + params.p11 * alpha);
}

SprtThresholds::SprtThresholds(double upper, double lower)
    : upper_a(upper), lower_b(lower) {
  if (!(lower < upper)) {
    throw std::invalid_argument("SPRT thresholds require b < a");
  }
}

double llr_increment(int observation, const SprtHypotheses& hyp) {
  if (observation != 0 && observation != 1) {
    throw std::invalid_argument("SPRT observation must be binary");
  }
  if (observation == 1) return std::log(hyp.theta1 / hyp.theta0);
  if (hyp.theta1 >= 1.0) return -std::numeric_limits<double>::infinity();
  return std::log((1.0 - hyp.theta1) / (1.0 - hyp.theta0));
}

SprtDecision sprt_step(SprtState& state, int observation,
                       const SprtHypotheses& hyp, const SprtThresholds& thr) {
  state.llr_sum += llr_increment(observation, hyp);
  state.samples_seen += 1;
  if (state.llr_sum >= thr.upper_a) return SprtDecision::AcceptH1;
  if (state.llr_sum < thr.lower_b) return SprtDecision::AcceptH0;
  return SprtDecision::Continue;
}

SprtThresholds wald_thresholds(double p_fa, double p_m) {
  if (!(p_fa > 0.0 && p_fa < 0.5) || !(p_m > 0.0 && p_m < 0.5)) {
    throw std::invalid_argument("error probabilities must be in (0, 0.5)");
  }
  return SprtThresholds(std::log((1.0 - p_m) / p_fa),
                        std::log(p_m / (1.0 - p_fa)));
}

double asn_under_attack(double alpha, const GilbertElliotParams& params,
                        double c) {
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw std::invalid_argument("ASN requires alpha > 0");
  }
  if (!params.positively_correlated()) {
    throw std::domain_error("ASN requires p11 > p01");
  }
  if (!(c > 0.0)) throw std::invalid_argument("ASN constant must be positive");
  const SprtHypotheses hyp = hypotheses_from_attack(alpha, params);
  double kl = hyp.theta1 * std::log(hyp.theta1 / hyp.theta0);
  if (hyp.theta1 < 1.0) {
    kl += (1.0 - hyp.theta1) *
          std::log((1.0 - hyp.theta1) / (1.0 - hyp.theta0));
  }
  return c / kl;
}

}  // namespace specsim
