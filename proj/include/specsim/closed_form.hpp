#pragma once

#include <vector>

#include "specsim/channel.hpp"

namespace specsim {

// Truncated transmission-period Markov chain for the greedy (myopic, N=2
// identical channels) policy under attack probability alpha.
struct TpChainSpec {
  GilbertElliotParams params;
  double alpha = 0.0;
  // 0 = choose automatically so the geometric tail mass is below 1e-12
  // (capped at 1e6 states).
  int truncation_k = 0;
};

struct TpStatistics {
  double mean_length = 1.0;
  std::vector<double> distribution;  // lengths 1..K
};

// Transition probability r_ij of the TP-length chain:
//   r_i1 = 1 - p01^(i+1) (1-alpha)
//   r_ij = p01^(i+1) (1-alpha)^(j-1) p11^(j-2) (1 - p11(1-alpha)),  j >= 2.
double tp_chain_transition(const TpChainSpec& spec, int i, int j);

// Stationary distribution of the truncated chain by power iteration, with
// the geometric tail folded into the last state. Requires positive
// correlation; alpha = 1 returns the degenerate length-1 distribution.
TpStatistics tp_chain_stationary(const TpChainSpec& spec);

// Mean TP length of the greedy policy via the self-consistent closed form
//   omega_bar = (1-a) p01^(2) / ((1-a) p01^(2) + 1 - A),
//   L = 1 + omega_bar / (1 - p11(1-a)).
// This is the variant validated against the truncated chain and Monte Carlo.
double myopic_tp_length(const GilbertElliotParams& params, double alpha);

// Side-by-side evaluation of the published mean-TP formula (denominator
// (1-a)p01^(2) - A) and the self-consistent variant above. The published
// denominator produces omega_bar outside [0,1] for typical parameters;
// `printed_in_range` flags this so callers can surface the discrepancy.
struct PrintedTpComparison {
  double omega_bar_printed;
  double mean_printed;
  bool printed_in_range;  // omega_bar_printed in [0,1]
  double omega_bar_corrected;
  double mean_corrected;
};
PrintedTpComparison myopic_tp_length_printed(const GilbertElliotParams& params,
                                             double alpha);

// Mean TP length of the always-pick-smaller-belief policy:
// L^n(x) = 1 + p01(1-x) / (1 - p11(1-x)).
double contrarian_tp_length(const GilbertElliotParams& params, double x);

// N=2 identical channels: L^s(q,d) = q L^m(alpha d) + (1-q) L^n(alpha(1-d)).
double softmax_tp_length(const GilbertElliotParams& params, double q, double d,
                         double alpha);

// Steady-state throughput U = 1 - 1/L.
double throughput_from_tp(double mean_tp);

// Mean TP length on one channel with belief omega and per-slot effective
// attack probability e: L(omega, e) = 1 + omega(1-e) / (1 - p11(1-e)).
double per_channel_tp_length(double omega, double p11, double effective_attack);

// Shannon entropy -sum p ln p of a selection distribution.
double selection_entropy(const std::vector<double>& probs);

// Attack-probability threshold above which a well-tempered softmax policy
// beats the myopic policy on n >= 3 identical channels:
// alpha > (omega0 - p01) n / (omega0 n - p01).
double softmax_alpha_threshold(const GilbertElliotParams& params, int n);

// Matching temperature bound tau > (omega0 - p01) / ln(p01(n-a)/(omega0 n(1-a))).
// Throws if alpha does not exceed softmax_alpha_threshold.
double softmax_temperature_bound(const GilbertElliotParams& params, int n,
                                  double alpha);

// R = U(alpha)/U(0); requires U(0) > 0.
double robustness(double u_zero, double u_alpha);

// P = U(0).
double performance(double u_zero);

}  // namespace specsim
