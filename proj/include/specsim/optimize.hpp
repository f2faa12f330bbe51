#pragma once

#include <functional>
#include <vector>

#include "specsim/channel.hpp"

namespace specsim {

struct SolverReport {
  std::vector<double> solution;
  double objective_value = 0.0;
  double kkt_residual = 0.0;
  int iterations = 0;
  bool converged = false;
};

// Attacker objective: expected TP length sum_i q_i L(omega_i, alpha d_i).
double problem3_objective(const std::vector<double>& d,
                          const std::vector<double>& q,
                          const BeliefVector& beliefs,
                          const std::vector<GilbertElliotParams>& params,
                          double alpha);

// Analytic gradient, dL/dd_i = -alpha q_i omega_i / (1 - p11_i(1-alpha d_i))^2.
std::vector<double> problem3_gradient(const std::vector<double>& d,
                                      const std::vector<double>& q,
                                      const BeliefVector& beliefs,
                                      const std::vector<GilbertElliotParams>& params,
                                      double alpha);

// Diagonal of the Hessian (the off-diagonal entries are identically zero).
std::vector<double> problem3_hessian_diag(const std::vector<double>& d,
                                          const std::vector<double>& q,
                                          const BeliefVector& beliefs,
                                          const std::vector<GilbertElliotParams>& params,
                                          double alpha);

// Minimizes problem3_objective over the probability simplex using equality
// elimination plus damped Newton steps; nonnegativity is handled with an
// active set (variables clamped at zero are released when their KKT
// multiplier goes negative). `tol` bounds the infinity norm of the reduced
// gradient. Never throws on non-convergence; inspect `converged`.
SolverReport solve_problem3(const std::vector<double>& q,
                            const BeliefVector& beliefs,
                            const std::vector<GilbertElliotParams>& params,
                            double alpha, double tol = 1e-10);

// N=2 identical channels: attacker's best division d* in [0,1] against a
// Bernoulli(q) defender (grid scan plus golden-section refinement).
// alpha = 0 leaves the objective flat; 0.5 is returned by convention.
double solve_problem1(double q, double alpha, const GilbertElliotParams& params);

struct Problem2Result {
  double q_star = 1.0;
  double d_star = 0.5;
  double throughput = 0.0;  // U^s(q*, d*) under the attacker's best response
};

// Defender's best main probability q* in [0.5, 1] against a best-responding
// attacker. alpha = 0 returns q* = 1 (myopic optimal with no attacker).
Problem2Result solve_problem2(double alpha, const GilbertElliotParams& params);

enum class DefenderParametrization { BoltzmannTau, FullSimplex };

// Defender's outer problem against the alpha-optimal attacker.
// BoltzmannTau: scalar search over the temperature of a Boltzmann selection
// distribution; solution = {tau*}. Ties in the objective are broken toward
// the lowest temperature. FullSimplex (n <= 4): lattice search over the
// selection distribution Q itself; solution = Q*.
SolverReport solve_problem4(const BeliefVector& beliefs,
                            const std::vector<GilbertElliotParams>& params,
                            double alpha,
                            DefenderParametrization parametrization);

// Exhaustive evaluation of `objective` on the simplex lattice with the given
// step (n <= 5, step >= 1e-3). Oracle for the solvers above.
SolverReport brute_force_simplex(
    const std::function<double(const std::vector<double>&)>& objective, int n,
    double step);

// Re-enumerates the lattice with step `step` inside a box of half-width
// `halfwidth` around `center` (intersected with the simplex).
SolverReport refine_simplex_grid(
    const std::function<double(const std::vector<double>&)>& objective,
    const std::vector<double>& center, double halfwidth, double step);

}  // namespace specsim
