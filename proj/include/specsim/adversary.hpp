#pragma once

#include <optional>
#include <vector>

#include "specsim/channel.hpp"
#include "specsim/rng.hpp"

namespace specsim {

// Per-channel jam-target split, a point on the probability simplex.
using DivisionProbabilities = std::vector<double>;

enum class AttackKind {
  Greedy,          // all mass on the argmax-belief channel
  Uniform,         // equiprobable
  OmegaBoltzmann,  // Boltzmann over beliefs with temperature tau_a
  AlphaOptimal,    // best response to the defender's selection distribution
  MinBelief,       // all mass on the argmin-belief channel; reference strategy
                   // used by the contrarian-policy oracle tests
};

struct AttackStrategySpec {
  AttackKind kind = AttackKind::Greedy;
  double tau_a = 1.0;  // OmegaBoltzmann temperature, > 0

  void validate() const;
};

DivisionProbabilities greedy_division(const BeliefVector& beliefs);

DivisionProbabilities uniform_division(int n);

DivisionProbabilities omega_division(const BeliefVector& beliefs, double tau_a);

// Alpha-optimal split: minimizes the defender's expected TP length given its
// selection distribution q. Throws std::runtime_error if the solver does not
// converge.
DivisionProbabilities optimal_division(const std::vector<double>& q,
                                       const BeliefVector& beliefs,
                                       const std::vector<GilbertElliotParams>& params,
                                       double alpha);

// With probability alpha emits one jam target drawn from d, else nothing.
// Consumes a fixed two draws per call so parallel strategy comparisons stay
// aligned on common random numbers.
std::optional<int> sample_attack(const DivisionProbabilities& d, double alpha,
                                 Rng& rng);

// Normalized detection-exposure cost of attacking at rate alpha,
// KL(Bernoulli(theta1) || Bernoulli(theta0)) / ln(1/p10) with theta0 = p10
// and theta1 = 1 - p11(1-alpha). Zero at alpha = 0, one at alpha = 1.
double attacker_cost(double alpha, const GilbertElliotParams& params);

}  // namespace specsim
