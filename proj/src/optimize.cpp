#include "specsim/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "specsim/closed_form.hpp"
#include "specsim/policy.hpp"

namespace specsim {

namespace {

void check_problem3_inputs(const std::vector<double>& d,
                           const std::vector<double>& q,
                           const BeliefVector& beliefs,
                           const std::vector<GilbertElliotParams>& params) {
  const std::size_t n = q.size();
  if (d.size() != n || beliefs.size() != n || params.size() != n) {
    throw std::invalid_argument("problem3 dimension mismatch");
  }
}

// Golden-section minimization on [lo, hi]; assumes local unimodality around
// the bracketing interval produced by a prior grid scan.
double golden_min(const std::function<double(double)>& f, double lo, double hi,
                  double xtol) {
  constexpr double invphi = 0.6180339887498949;
  double a = lo, b = hi;
  double x1 = b - invphi * (b - a);
  double x2 = a + invphi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  while (b - a > xtol) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - invphi * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + invphi * (b - a);
      f2 = f(x2);
    }
  }
  return 0.5 * (a + b);
}

// Grid scan followed by golden-section refinement between the grid
// neighbours of the best point.
double grid_then_golden_min(const std::function<double(double)>& f, double lo,
                            double hi, double step, double xtol) {
  int best = 0;
  double fbest = std::numeric_limits<double>::infinity();
  const int m = static_cast<int>(std::round((hi - lo) / step));
  for (int i = 0; i <= m; ++i) {
    const double x = lo + i * (hi - lo) / m;
    const double fx = f(x);
    if (fx < fbest) {
      fbest = fx;
      best = i;
    }
  }
  const double a = lo + std::max(0, best - 1) * (hi - lo) / m;
  const double b = lo + std::min(m, best + 1) * (hi - lo) / m;
  return golden_min(f, a, b, xtol);
}

void simplex_lattice_recurse(
    const std::function<double(const std::vector<double>&)>& objective,
    std::vector<int>& counts, int coord, int remaining, int m,
    std::vector<double>& point, SolverReport& best) {
  const int n = static_cast<int>(point.size());
  if (coord == n - 1) {
    counts[coord] = remaining;
    for (int i = 0; i < n; ++i) point[i] = static_cast<double>(counts[i]) / m;
    const double value = objective(point);
    ++best.iterations;
    if (value < best.objective_value) {
      best.objective_value = value;
      best.solution = point;
    }
    return;
  }
  for (int k = 0; k <= remaining; ++k) {
    counts[coord] = k;
    simplex_lattice_recurse(objective, counts, coord + 1, remaining - k, m,
                            point, best);
  }
}

}  // namespace

double problem3_objective(const std::vector<double>& d,
                          const std::vector<double>& q,
                          const BeliefVector& beliefs,
                          const std::vector<GilbertElliotParams>& params,
                          double alpha) {
  check_problem3_inputs(d, q, beliefs, params);
  double value = 0.0;
  for (std::size_t i = 0; i < q.size(); ++i) {
    value += q[i] * per_channel_tp_length(beliefs[i], params[i].p11,
                                          alpha * d[i]);
  }
  return value;
}

std::vector<double> problem3_gradient(const std::vector<double>& d,
                                      const std::vector<double>& q,
                                      const BeliefVector& beliefs,
                                      const std::vector<GilbertElliotParams>& params,
                                      double alpha) {
  check_problem3_inputs(d, q, beliefs, params);
  std::vector<double> g(q.size());
  for (std::size_t i = 0; i < q.size(); ++i) {
    const double denom = 1.0 - params[i].p11 * (1.0 - alpha * d[i]);
    g[i] = -alpha * q[i] * beliefs[i] / (denom * denom);
  }
  return g;
}

std::vector<double> problem3_hessian_diag(const std::vector<double>& d,
                                          const std::vector<double>& q,
                                          const BeliefVector& beliefs,
                                          const std::vector<GilbertElliotParams>& params,
                                          double alpha) {
  check_problem3_inputs(d, q, beliefs, params);
  std::vector<double> h(q.size());
  for (std::size_t i = 0; i < q.size(); ++i) {
    const double denom = 1.0 - params[i].p11 * (1.0 - alpha * d[i]);
    h[i] = 2.0 * q[i] * beliefs[i] * alpha * alpha * params[i].p11 /
           (denom * denom * denom);
  }
  return h;
}

SolverReport solve_problem3(const std::vector<double>& q,
                            const BeliefVector& beliefs,
                            const std::vector<GilbertElliotParams>& params,
                            double alpha, double tol) {
  const int n = static_cast<int>(q.size());
  if (n < 2) throw std::invalid_argument("solve_problem3 requires N >= 2");
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw std::invalid_argument("solve_problem3 requires alpha in (0,1]");
  }
  check_problem3_inputs(q, q, beliefs, params);
  // Sub-1e-8 gradient differences are not reliably resolvable in double
  // arithmetic near the simplex boundary; don't chase them.
  tol = std::max(tol, 1e-8);

  SolverReport report;
  report.solution.assign(n, 0.0);
  std::vector<double>& d = report.solution;

  // Channels with q_i * omega_i = 0 do not enter the objective; mass spent
  // on them is never useful, so they are pinned at zero up front.
  std::vector<int> free_set;
  for (int i = 0; i < n; ++i) {
    if (q[i] * beliefs[i] > 0.0) free_set.push_back(i);
  }
  if (free_set.empty()) {
    d.assign(n, 1.0 / n);
    report.objective_value = problem3_objective(d, q, beliefs, params, alpha);
    report.converged = true;
    return report;
  }
  for (int i : free_set) d[i] = 1.0 / static_cast<double>(free_set.size());

  std::vector<int> active;  // clamped at zero, candidates for release
  const auto grad_at = [&](int i, double di) {
    const double denom = 1.0 - params[i].p11 * (1.0 - alpha * di);
    return -alpha * q[i] * beliefs[i] / (denom * denom);
  };

  const int max_outer = 4 * n + 8;
  int total_newton = 0;
  for (int outer = 0; outer < max_outer; ++outer) {
    // Newton on the free set with the last free variable eliminated.
    bool clamped = false;
    for (int it = 0; it < 200; ++it, ++total_newton) {
      const int nf = static_cast<int>(free_set.size());
      const int m = free_set.back();
      if (nf == 1) {
        d[m] = 1.0;
        for (int k : active) d[k] = 0.0;
        report.kkt_residual = 0.0;
        break;
      }
      std::vector<double> g(nf), h(nf);
      for (int k = 0; k < nf; ++k) {
        const int i = free_set[k];
        const double denom = 1.0 - params[i].p11 * (1.0 - alpha * d[i]);
        g[k] = -alpha * q[i] * beliefs[i] / (denom * denom);
        h[k] = std::max(2.0 * q[i] * beliefs[i] * alpha * alpha *
                            params[i].p11 / (denom * denom * denom),
                        1e-12);
      }
      double res = 0.0;
      for (int k = 0; k + 1 < nf; ++k) res = std::max(res, std::abs(g[k] - g.back()));
      report.kkt_residual = res;
      if (res <= tol) break;

      // Reduced Hessian = diag(h_k) + h_m 1 1^T; solve by Sherman-Morrison.
      std::vector<double> r(nf - 1), dinv_r(nf - 1);
      double sum_dinv_r = 0.0, sum_dinv = 0.0;
      for (int k = 0; k + 1 < nf; ++k) {
        r[k] = -(g[k] - g.back());
        dinv_r[k] = r[k] / h[k];
        sum_dinv_r += dinv_r[k];
        sum_dinv += 1.0 / h[k];
      }
      const double hm = h.back();
      const double factor = hm * sum_dinv_r / (1.0 + hm * sum_dinv);
      std::vector<double> step(nf, 0.0);
      double step_m = 0.0;
      for (int k = 0; k + 1 < nf; ++k) {
        step[k] = dinv_r[k] - factor / h[k];
        step_m -= step[k];
      }
      step[nf - 1] = step_m;

      // Largest feasible fraction of the Newton step.
      double tmax = 1.0;
      for (int k = 0; k < nf; ++k) {
        if (step[k] < 0.0) tmax = std::min(tmax, -d[free_set[k]] / step[k]);
      }
      // Armijo backtracking; directional derivative in the reduced space.
      // Near the optimum objective differences fall below double rounding, so
      // the pure (feasibility-capped) Newton step is taken unconditionally.
      double t = tmax;
      std::vector<double> trial = d;
      if (res > 1e-5) {
        double dir_deriv = 0.0;
        for (int k = 0; k + 1 < nf; ++k) dir_deriv += (g[k] - g.back()) * step[k];
        const double f0 = problem3_objective(d, q, beliefs, params, alpha);
        for (int ls = 0; ls < 60; ++ls) {
          for (int k = 0; k < nf; ++k) {
            trial[free_set[k]] = std::max(0.0, d[free_set[k]] + t * step[k]);
          }
          if (problem3_objective(trial, q, beliefs, params, alpha) <=
              f0 + 1e-4 * t * dir_deriv) {
            break;
          }
          t *= 0.5;
        }
      } else {
        for (int k = 0; k < nf; ++k) {
          trial[free_set[k]] = std::max(0.0, d[free_set[k]] + t * step[k]);
        }
      }
      bool moved = false;
      for (int k = 0; k < nf; ++k) {
        if (trial[free_set[k]] != d[free_set[k]]) moved = true;
      }
      d = trial;
      // Objective changes below double precision: the iterate is as good as
      // the arithmetic allows, stop refining.
      if (!moved) break;

      // Clamp variables that reached the boundary.
      std::vector<int> still_free;
      for (int i : free_set) {
        if (d[i] <= 1e-14) {
          d[i] = 0.0;
          active.push_back(i);
          clamped = true;
        } else {
          still_free.push_back(i);
        }
      }
      if (clamped) {
        // Renormalize the remaining mass onto the simplex.
        double mass = 0.0;
        for (int i : still_free) mass += d[i];
        if (mass <= 0.0 || still_free.empty()) {
          still_free.push_back(active.back());
          active.pop_back();
          d[still_free.back()] = 1.0;
          mass = 1.0;
        }
        for (int i : still_free) d[i] /= mass;
        free_set = still_free;
        break;  // restart Newton on the shrunk free set
      }
    }
    if (clamped) continue;

    // KKT release test: a clamped variable whose gradient at zero is below
    // the shared multiplier would reduce the objective if freed.
    const double nu = grad_at(free_set.back(), d[free_set.back()]);
    int release = -1;
    double worst = -tol * std::max(1.0, std::abs(nu));
    for (std::size_t a = 0; a < active.size(); ++a) {
      const double violation = grad_at(active[a], 0.0) - nu;
      if (violation < worst) {
        worst = violation;
        release = static_cast<int>(a);
      }
    }
    if (release < 0) {
      report.converged = report.kkt_residual <= tol;
      break;
    }
    free_set.push_back(active[release]);
    active.erase(active.begin() + release);
  }

  report.iterations = total_newton;
  report.objective_value = problem3_objective(d, q, beliefs, params, alpha);
  return report;
}

double solve_problem1(double q, double alpha, const GilbertElliotParams& params) {
  if (!(q >= 0.5 && q <= 1.0)) {
    throw std::invalid_argument("main probability must be in [0.5, 1]");
  }
  if (alpha == 0.0) return 0.5;  // objective flat in d
  const auto objective = [&](double d) {
    return throughput_from_tp(softmax_tp_length(params, q, d, alpha));
  };
  return grid_then_golden_min(objective, 0.0, 1.0, 1e-3, 1e-7);
}

Problem2Result solve_problem2(double alpha, const GilbertElliotParams& params) {
  Problem2Result result;
  if (alpha == 0.0) {
    result.q_star = 1.0;
    result.d_star = 0.5;
    result.throughput = throughput_from_tp(myopic_tp_length(params, 0.0));
    return result;
  }
  const auto inner_value = [&](double q) {
    const double d = solve_problem1(q, alpha, params);
    return throughput_from_tp(softmax_tp_length(params, q, d, alpha));
  };
  // Maximize over q: negate for the shared minimizer.
  const auto neg = [&](double q) { return -inner_value(q); };
  result.q_star = grid_then_golden_min(neg, 0.5, 1.0, 1e-3, 1e-6);
  // The golden-section iterate never lands on the endpoint exactly; when the
  // optimum is q = 1 (small alpha) the endpoint must win ties.
  if (inner_value(1.0) >= inner_value(result.q_star)) result.q_star = 1.0;
  result.d_star = solve_problem1(result.q_star, alpha, params);
  result.throughput = throughput_from_tp(
      softmax_tp_length(params, result.q_star, result.d_star, alpha));
  return result;
}

SolverReport solve_problem4(const BeliefVector& beliefs,
                            const std::vector<GilbertElliotParams>& params,
                            double alpha,
                            DefenderParametrization parametrization) {
  const int n = static_cast<int>(beliefs.size());
  if (n < 2 || params.size() != beliefs.size()) {
    throw std::invalid_argument("solve_problem4 dimension mismatch");
  }
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw std::invalid_argument("alpha must be in [0,1]");
  }

  // Defender objective: expected TP length under the attacker's best
  // response to the candidate selection distribution.
  const auto value_of_q = [&](const std::vector<double>& qvec) {
    if (alpha == 0.0) {
      std::vector<double> zero(n, 0.0);
      return problem3_objective(zero, qvec, beliefs, params, alpha);
    }
    const SolverReport inner = solve_problem3(qvec, beliefs, params, alpha);
    if (!inner.converged) {
      throw std::runtime_error("inner alpha-optimal solver failed to converge");
    }
    return inner.objective_value;
  };

  SolverReport report;
  if (parametrization == DefenderParametrization::BoltzmannTau) {
    const auto value_of_tau = [&](double log_tau) {
      return -value_of_q(boltzmann_probs(beliefs, std::exp(log_tau)));
    };
    const double lo = std::log(1e-3), hi = std::log(100.0);
    // Coarse grid with lowest-tau tie break, then golden refinement.
    const int grid_points = 121;
    int best = 0;
    double best_value = std::numeric_limits<double>::infinity();
    for (int i = 0; i < grid_points; ++i) {
      const double x = lo + (hi - lo) * i / (grid_points - 1);
      const double v = value_of_tau(x);
      ++report.iterations;
      if (v < best_value - 1e-12) {
        best_value = v;
        best = i;
      }
    }
    const double span = (hi - lo) / (grid_points - 1);
    const double a = std::max(lo, lo + span * (best - 1));
    const double b = std::min(hi, lo + span * (best + 1));
    const double log_tau_star = golden_min(value_of_tau, a, b, 1e-6);
    const double tau_star = std::exp(log_tau_star);
    report.solution = {tau_star};
    report.objective_value = -value_of_tau(log_tau_star);
    report.converged = true;
    return report;
  }

  if (n > 4) {
    throw std::invalid_argument("FullSimplex parametrization limited to N <= 4");
  }
  const auto neg = [&](const std::vector<double>& qvec) {
    return -value_of_q(qvec);
  };
  SolverReport coarse = brute_force_simplex(neg, n, 0.02);
  SolverReport fine = refine_simplex_grid(neg, coarse.solution, 0.04, 0.002);
  report.solution = fine.solution;
  report.objective_value = -fine.objective_value;
  report.iterations = coarse.iterations + fine.iterations;
  report.converged = true;
  return report;
}

SolverReport brute_force_simplex(
    const std::function<double(const std::vector<double>&)>& objective, int n,
    double step) {
  if (n < 2 || n > 5) throw std::invalid_argument("brute force limited to 2 <= n <= 5");
  if (step < 1e-3) throw std::invalid_argument("brute force step must be >= 1e-3");
  const int m = static_cast<int>(std::round(1.0 / step));
  SolverReport best;
  best.objective_value = std::numeric_limits<double>::infinity();
  std::vector<int> counts(n, 0);
  std::vector<double> point(n, 0.0);
  simplex_lattice_recurse(objective, counts, 0, m, m, point, best);
  best.converged = true;
  return best;
}

SolverReport refine_simplex_grid(
    const std::function<double(const std::vector<double>&)>& objective,
    const std::vector<double>& center, double halfwidth, double step) {
  const int n = static_cast<int>(center.size());
  SolverReport best;
  best.objective_value = std::numeric_limits<double>::infinity();
  std::vector<double> point(n, 0.0);
  const int radius = static_cast<int>(std::ceil(halfwidth / step));

  // Enumerate offsets for the first n-1 coordinates; the last takes the rest.
  std::vector<int> offset(n - 1, -radius);
  while (true) {
    double sum = 0.0;
    bool ok = true;
    for (int i = 0; i < n - 1 && ok; ++i) {
      point[i] = center[i] + offset[i] * step;
      if (point[i] < 0.0 || point[i] > 1.0) ok = false;
      sum += point[i];
    }
    if (ok) {
      point[n - 1] = 1.0 - sum;
      if (point[n - 1] >= 0.0 &&
          std::abs(point[n - 1] - center[n - 1]) <= halfwidth + step) {
        const double value = objective(point);
        ++best.iterations;
        if (value < best.objective_value) {
          best.objective_value = value;
          best.solution = point;
        }
      }
    }
    int i = 0;
    for (; i < n - 1; ++i) {
      if (++offset[i] <= radius) break;
      offset[i] = -radius;
    }
    if (i == n - 1) break;
  }
  best.converged = !best.solution.empty();
  return best;
}

}  // namespace specsim
