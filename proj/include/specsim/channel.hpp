#pragma once

#include <vector>

#include "specsim/rng.hpp"

namespace specsim {

// Channel state: 1 = idle/available, 0 = busy/occupied.
using ChannelState = int;

// Belief vector: per-channel conditional idle probability.
using BeliefVector = std::vector<double>;

// Two-state Markov channel with per-slot transition probabilities.
// Row sums p11+p10 and p01+p00 must be 1 within 1e-9; construction throws
// std::invalid_argument otherwise.
struct GilbertElliotParams {
  double p11;  // idle -> idle
  double p10;  // idle -> busy
  double p01;  // busy -> idle
  double p00;  // busy -> busy

  GilbertElliotParams(double p11_, double p10_, double p01_, double p00_);

  bool positively_correlated() const { return p11 > p01; }
};

// Stationary idle probability p01/(p01+p10). Throws if p01 = p10 = 0.
double stationary_occupancy(const GilbertElliotParams& params);

// One-step belief propagation for an unobserved channel:
// Gamma(x) = x*p11 + (1-x)*p01, clamped to [0,1].
double propagate_belief(const GilbertElliotParams& params, double omega);

// Full Bayes update: observed idle -> p11, observed busy -> p01,
// unobserved -> Gamma(omega).
double update_belief(const GilbertElliotParams& params, double omega,
                     bool sensed, ChannelState observation);

// j-step busy->idle transition probability,
// omega0 * (1 - (p11-p01)^j).
double k_step_idle_prob(const GilbertElliotParams& params, int j);

// Samples the next channel state. Consumes exactly one draw.
ChannelState step_state(const GilbertElliotParams& params, ChannelState state,
                        Rng& rng);

// The identical-channel parameter set used throughout the tests and default
// experiment configs: p11=0.9, p10=0.1, p01=0.2, p00=0.8.
GilbertElliotParams baseline_channel();

// The four non-identical channels of the default heterogeneous set.
std::vector<GilbertElliotParams> table1_channels();

}  // namespace specsim
