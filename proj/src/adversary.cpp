#include "specsim/adversary.hpp"

#include <cmath>
#include <stdexcept>

#include "specsim/optimize.hpp"
#include "specsim/policy.hpp"

namespace specsim {

void AttackStrategySpec::validate() const {
  if (kind == AttackKind::OmegaBoltzmann && !(tau_a > 0.0)) {
    throw std::invalid_argument("attacker temperature must be positive");
  }
}

DivisionProbabilities greedy_division(const BeliefVector& beliefs) {
  DivisionProbabilities d(beliefs.size(), 0.0);
  d[myopic_select(beliefs)] = 1.0;
  return d;
}

DivisionProbabilities uniform_division(int n) {
  if (n < 2) throw std::invalid_argument("uniform division requires n >= 2");
  return DivisionProbabilities(n, 1.0 / n);
}

DivisionProbabilities omega_division(const BeliefVector& beliefs, double tau_a) {
  return boltzmann_probs(beliefs, tau_a);
}

DivisionProbabilities optimal_division(const std::vector<double>& q,
                                       const BeliefVector& beliefs,
                                       const std::vector<GilbertElliotParams>& params,
                                       double alpha) {
  SolverReport report = solve_problem3(q, beliefs, params, alpha);
  if (!report.converged) {
    throw std::runtime_error(
        "alpha-optimal division solver failed: kkt residual " +
        std::to_string(report.kkt_residual) + " after " +
        std::to_string(report.iterations) + " iterations");
  }
  return report.solution;
}

std::optional<int> sample_attack(const DivisionProbabilities& d, double alpha,
                                 Rng& rng) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw std::invalid_argument("attack probability must be in [0,1]");
  }
  const bool attacking = rng.bernoulli(alpha);
  const int target = rng.categorical(d);
  if (!attacking) return std::nullopt;
  return target;
}

double attacker_cost(double alpha, const GilbertElliotParams& params) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw std::invalid_argument("attack probability must be in [0,1]");
  }
  if (!(params.p10 > 0.0 && params.p10 < 1.0) ||
      !(params.p11 > 0.0 && params.p11 < 1.0)) {
    throw std::domain_error("attacker cost requires p10, p11 in (0,1)");
  }
  const double theta0 = params.p10;
  const double theta1 = params.p10 + params.p11 * alpha;  // = 1 - p11(1-alpha)
  double kl = 0.0;
  if (theta1 > 0.0) kl += theta1 * std::log(theta1 / theta0);
  if (theta1 < 1.0) kl += (1.0 - theta1) * std::log((1.0 - theta1) / (1.0 - theta0));
  return kl / std::log(1.0 / params.p10);
}

}  // namespace specsim
