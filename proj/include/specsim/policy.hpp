#pragma once

#include <vector>

#include "specsim/channel.hpp"
#include "specsim/rng.hpp"

namespace specsim {

using SensingAction = int;

enum class PolicyKind {
  Myopic,      // argmax belief, ties to lowest index
  Bernoulli,   // N=2: greedy with probability q, other with 1-q
  Boltzmann,   // softmax over beliefs with temperature tau
  Contrarian,  // argmin belief; reference policy used by oracle validation
};

enum class ResampleMode {
  TpBoundary,  // policy invoked only in the first slot after a TP ends
  EverySlot,
};

struct PolicySpec {
  PolicyKind kind = PolicyKind::Myopic;
  double q = 1.0;    // Bernoulli main probability, in [0.5, 1]
  double tau = 1.0;  // Boltzmann temperature, > 0
  ResampleMode resample = ResampleMode::TpBoundary;

  // Throws std::invalid_argument if parameters are out of range for `kind`
  // or incompatible with a system of n channels.
  void validate(int n) const;
};

// Lowest index attaining the maximum belief.
SensingAction myopic_select(const BeliefVector& beliefs);

// Lowest index attaining the minimum belief.
SensingAction contrarian_select(const BeliefVector& beliefs);

// N=2 only: picks the argmax-belief channel with probability q.
// Consumes exactly one draw.
SensingAction bernoulli_select(const BeliefVector& beliefs, double q, Rng& rng);

// Softmax selection probabilities e^{w_i/tau} / sum_j e^{w_j/tau},
// computed with max subtraction for stability at small tau.
std::vector<double> boltzmann_probs(const BeliefVector& beliefs, double tau);

// Samples from boltzmann_probs. Consumes exactly one draw.
SensingAction boltzmann_select(const BeliefVector& beliefs, double tau,
                               Rng& rng);

// Dispatches on spec.kind. Randomized kinds consume exactly one draw,
// deterministic kinds consume none.
SensingAction select_action(const PolicySpec& spec, const BeliefVector& beliefs,
                            Rng& rng);

}  // namespace specsim
