#include "specsim/closed_form.hpp"

#include <cmath>
#include <stdexcept>

namespace specsim {

namespace {

constexpr double kTailMass = 1e-12;
constexpr int kMaxTruncation = 1000000;

void require_nonnegative_correlation(const GilbertElliotParams& params) {
  if (params.p11 < params.p01) {
    throw std::domain_error("closed form requires p11 >= p01");
  }
}

void require_alpha(double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw std::invalid_argument("attack probability must be in [0,1]");
  }
}

// A = omega0 (1-a) [1 - delta^3 (1-beta) / (1 - beta delta)],
// the coupling term of the TP-chain self-consistency equation.
double coupling_term(const GilbertElliotParams& params, double alpha) {
  const double omega0 = stationary_occupancy(params);
  const double delta = params.p11 - params.p01;
  const double beta = params.p11 * (1.0 - alpha);
  return omega0 * (1.0 - alpha) *
         (1.0 - delta * delta * delta * (1.0 - beta) / (1.0 - beta * delta));
}

}  // namespace

double tp_chain_transition(const TpChainSpec& spec, int i, int j) {
  if (i < 1 || j < 1) throw std::invalid_argument("TP chain indices start at 1");
  require_nonnegative_correlation(spec.params);
  require_alpha(spec.alpha);
  const double survive = (1.0 - spec.alpha) * k_step_idle_prob(spec.params, i + 1);
  if (j == 1) return 1.0 - survive;
  const double beta = spec.params.p11 * (1.0 - spec.alpha);
  return survive * std::pow(beta, j - 2) * (1.0 - beta);
}

TpStatistics tp_chain_stationary(const TpChainSpec& spec) {
  require_nonnegative_correlation(spec.params);
  require_alpha(spec.alpha);
  if (spec.alpha >= 1.0) return TpStatistics{1.0, {1.0}};

  const double beta = spec.params.p11 * (1.0 - spec.alpha);
  if (beta >= 1.0 - 1e-12) {
    throw std::runtime_error("TP chain truncation insufficient: p11(1-alpha) ~ 1");
  }

  int k = spec.truncation_k;
  if (k <= 0) {
    k = beta > 0.0
            ? 2 + static_cast<int>(std::ceil(std::log(kTailMass) / std::log(beta)))
            : 8;
    if (k < 8) k = 8;
    if (k > kMaxTruncation) k = kMaxTruncation;
  } else if (beta > 0.0 && std::pow(beta, k - 2) > 1e-9) {
    throw std::runtime_error("TP chain truncation insufficient for requested K");
  }

  // Row i of R is (1 - a_i, a_i(1-beta), a_i(1-beta)beta, ...) with
  // a_i = p01^(i+1)(1-alpha), so one power-iteration step only needs the
  // scalar s = sum_i lambda_i a_i.
  std::vector<double> survive(k);
  for (int i = 1; i <= k; ++i) {
    survive[i - 1] = (1.0 - spec.alpha) * k_step_idle_prob(spec.params, i + 1);
  }

  std::vector<double> lambda(k, 1.0 / k);
  std::vector<double> next(k);
  for (int iter = 0; iter < 100000; ++iter) {
    double s = 0.0;
    for (int i = 0; i < k; ++i) s += lambda[i] * survive[i];
    next[0] = 1.0 - s;
    double geom = s * (1.0 - beta);
    for (int j = 1; j < k; ++j) {
      next[j] = geom;
      geom *= beta;
    }
    next[k - 1] += s * std::pow(beta, k - 1);  // fold the tail into state K

    double diff = 0.0;
    for (int i = 0; i < k; ++i) diff += std::abs(next[i] - lambda[i]);
    lambda.swap(next);
    if (diff < 1e-13) break;
  }

  TpStatistics stats;
  stats.distribution = lambda;
  double mean = 0.0;
  for (int j = 0; j < k; ++j) mean += (j + 1) * lambda[j];
  stats.mean_length = mean;
  return stats;
}

double myopic_tp_length(const GilbertElliotParams& params, double alpha) {
  require_nonnegative_correlation(params);
  require_alpha(alpha);
  if (alpha >= 1.0) return 1.0;  // every TP ends after one slot
  const double omega0 = stationary_occupancy(params);
  const double delta = params.p11 - params.p01;
  const double beta = params.p11 * (1.0 - alpha);
  const double p01_2 = omega0 * (1.0 - delta * delta);
  const double a = coupling_term(params, alpha);
  const double omega_bar =
      (1.0 - alpha) * p01_2 / ((1.0 - alpha) * p01_2 + 1.0 - a);
  return 1.0 + omega_bar / (1.0 - beta);
}

PrintedTpComparison myopic_tp_length_printed(const GilbertElliotParams& params,
                                             double alpha) {
  require_nonnegative_correlation(params);
  require_alpha(alpha);
  PrintedTpComparison cmp{};
  if (alpha >= 1.0) {
    cmp.omega_bar_printed = cmp.omega_bar_corrected = 0.0;
    cmp.mean_printed = cmp.mean_corrected = 1.0;
    cmp.printed_in_range = true;
    return cmp;
  }
  const double omega0 = stationary_occupancy(params);
  const double delta = params.p11 - params.p01;
  const double beta = params.p11 * (1.0 - alpha);
  const double p01_2 = omega0 * (1.0 - delta * delta);
  const double a = coupling_term(params, alpha);

  cmp.omega_bar_printed = (1.0 - alpha) * p01_2 / ((1.0 - alpha) * p01_2 - a);
  cmp.mean_printed = 1.0 + cmp.omega_bar_printed / (1.0 - beta);
  cmp.printed_in_range =
      cmp.omega_bar_printed >= 0.0 && cmp.omega_bar_printed <= 1.0;

  cmp.omega_bar_corrected =
      (1.0 - alpha) * p01_2 / ((1.0 - alpha) * p01_2 + 1.0 - a);
  cmp.mean_corrected = 1.0 + cmp.omega_bar_corrected / (1.0 - beta);
  return cmp;
}

double contrarian_tp_length(const GilbertElliotParams& params, double x) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw std::invalid_argument("attack argument must be in [0,1]");
  }
  const double survive = params.p11 * (1.0 - x);
  if (survive >= 1.0) {
    throw std::domain_error("contrarian TP length requires p11(1-x) < 1");
  }
  // 1 - p11(1-x) written as p10 + p11 x, exact at x = 0.
  return 1.0 + params.p01 * (1.0 - x) / (params.p10 + params.p11 * x);
}

double softmax_tp_length(const GilbertElliotParams& params, double q, double d,
                         double alpha) {
  if (!(q >= 0.5 && q <= 1.0)) {
    throw std::invalid_argument("main probability must be in [0.5, 1]");
  }
  if (!(d >= 0.0 && d <= 1.0)) {
    throw std::invalid_argument("division probability must be in [0,1]");
  }
  require_alpha(alpha);
  return q * myopic_tp_length(params, alpha * d) +
         (1.0 - q) * contrarian_tp_length(params, alpha * (1.0 - d));
}

double throughput_from_tp(double mean_tp) {
  if (!(mean_tp >= 1.0)) {
    throw std::invalid_argument("mean TP length must be >= 1");
  }
  return 1.0 - 1.0 / mean_tp;
}

double per_channel_tp_length(double omega, double p11, double effective_attack) {
  const double survive = p11 * (1.0 - effective_attack);
  if (survive >= 1.0) {
    throw std::domain_error("per-channel TP length requires p11(1-e) < 1");
  }
  return 1.0 + omega * (1.0 - effective_attack) / (1.0 - survive);
}

double selection_entropy(const std::vector<double>& probs) {
  double h = 0.0;
  for (double p : probs) {
    if (p < -1e-12) throw std::invalid_argument("negative selection probability");
    if (p > 0.0) h -= p * std::log(p);
  }
  return h;
}

double softmax_alpha_threshold(const GilbertElliotParams& params, int n) {
  if (n < 3) throw std::invalid_argument("threshold requires n >= 3");
  if (!params.positively_correlated()) {
    throw std::domain_error("threshold requires p11 > p01");
  }
  const double omega0 = stationary_occupancy(params);
  return (omega0 - params.p01) * n / (omega0 * n - params.p01);
}

double softmax_temperature_bound(const GilbertElliotParams& params, int n,
                                  double alpha) {
  const double threshold = softmax_alpha_threshold(params, n);
  if (!(alpha > threshold && alpha < 1.0)) {
    throw std::domain_error("temperature bound requires alpha above threshold");
  }
  const double omega0 = stationary_occupancy(params);
  const double arg =
      params.p01 * (n - alpha) / (omega0 * n * (1.0 - alpha));
  if (!(arg > 1.0)) {
    throw std::domain_error("temperature bound log argument must exceed 1");
  }
  return (omega0 - params.p01) / std::log(arg);
}

double robustness(double u_zero, double u_alpha) {
  if (!(u_zero > 0.0)) {
    throw std::invalid_argument("robustness requires U(0) > 0");
  }
  return u_alpha / u_zero;
}

double performance(double u_zero) { return u_zero; }

}  // namespace specsim
