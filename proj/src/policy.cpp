#include "specsim/policy.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace specsim {

void PolicySpec::validate(int n) const {
  if (n < 2) throw std::invalid_argument("system requires N >= 2 channels");
  switch (kind) {
    case PolicyKind::Bernoulli:
      if (n != 2) throw std::invalid_argument("Bernoulli policy requires N = 2");
      if (!(q >= 0.5 && q <= 1.0)) {
        throw std::invalid_argument("Bernoulli main probability must be in [0.5, 1]");
      }
      break;
    case PolicyKind::Boltzmann:
      if (!(tau > 0.0)) {
        throw std::invalid_argument("Boltzmann temperature must be positive");
      }
      break;
    case PolicyKind::Myopic:
    case PolicyKind::Contrarian:
      break;
  }
}

SensingAction myopic_select(const BeliefVector& beliefs) {
  if (beliefs.empty()) throw std::invalid_argument("empty belief vector");
  return static_cast<SensingAction>(
      std::max_element(beliefs.begin(), beliefs.end()) - beliefs.begin());
}

SensingAction contrarian_select(const BeliefVector& beliefs) {
  if (beliefs.empty()) throw std::invalid_argument("empty belief vector");
  return static_cast<SensingAction>(
      std::min_element(beliefs.begin(), beliefs.end()) - beliefs.begin());
}

SensingAction bernoulli_select(const BeliefVector& beliefs, double q, Rng& rng) {
  if (beliefs.size() != 2) {
    throw std::invalid_argument("bernoulli_select requires N = 2");
  }
  if (!(q >= 0.5 && q <= 1.0)) {
    throw std::invalid_argument("main probability must be in [0.5, 1]");
  }
  const SensingAction greedy = myopic_select(beliefs);
  return rng.bernoulli(q) ? greedy : 1 - greedy;
}

std::vector<double> boltzmann_probs(const BeliefVector& beliefs, double tau) {
  if (!(tau > 0.0)) throw std::invalid_argument("temperature must be positive");
  if (beliefs.empty()) throw std::invalid_argument("empty belief vector");
  const double wmax = *std::max_element(beliefs.begin(), beliefs.end());
  std::vector<double> probs(beliefs.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < beliefs.size(); ++i) {
    probs[i] = std::exp((beliefs[i] - wmax) / tau);
    sum += probs[i];
  }
  for (double& p : probs) p /= sum;
  return probs;
}

SensingAction boltzmann_select(const BeliefVector& beliefs, double tau,
                               Rng& rng) {
  if (beliefs.size() < 2) {
    throw std::invalid_argument("boltzmann_select requires N >= 2");
  }
  const std::vector<double> probs = boltzmann_probs(beliefs, tau);
  return rng.categorical(probs);
}

SensingAction select_action(const PolicySpec& spec, const BeliefVector& beliefs,
                            Rng& rng) {
  switch (spec.kind) {
    case PolicyKind::Myopic:
      return myopic_select(beliefs);
    case PolicyKind::Contrarian:
      return contrarian_select(beliefs);
    case PolicyKind::Bernoulli:
      return bernoulli_select(beliefs, spec.q, rng);
    case PolicyKind::Boltzmann:
      return boltzmann_select(beliefs, spec.tau, rng);
  }
  throw std::logic_error("unknown policy kind");
}

}  // namespace specsim
