#include "specsim/channel.hpp"

#include <cmath>
#include <stdexcept>

namespace specsim {

namespace {

constexpr double kRowSumTol = 1e-9;

double clamp01(double x) {
  if (x < 0.0) return 0.0;
  if (x > 1.0) return 1.0;
  return x;
}

}  // namespace

GilbertElliotParams::GilbertElliotParams(double p11_, double p10_, double p01_,
                                         double p00_)
    : p11(p11_), p10(p10_), p01(p01_), p00(p00_) {
  for (double p : {p11, p10, p01, p00}) {
    if (!(p >= 0.0 && p <= 1.0)) {
      throw std::invalid_argument("channel transition probability outside [0,1]");
    }
  }
  if (std::abs(p11 + p10 - 1.0) > kRowSumTol) {
    throw std::invalid_argument("p11 + p10 must equal 1");
  }
  if (std::abs(p01 + p00 - 1.0) > kRowSumTol) {
    throw std::invalid_argument("p01 + p00 must equal 1");
  }
}

double stationary_occupancy(const GilbertElliotParams& params) {
  const double denom = params.p01 + params.p10;
  if (denom <= 0.0) {
    throw std::domain_error(
        "stationary distribution undefined for p01 = p10 = 0");
  }
  return params.p01 / denom;
}

double propagate_belief(const GilbertElliotParams& params, double omega) {
  return clamp01(omega * params.p11 + (1.0 - omega) * params.p01);
}

double update_belief(const GilbertElliotParams& params, double omega,
                     bool sensed, ChannelState observation) {
  if (!sensed) return propagate_belief(params, omega);
  return observation == 1 ? params.p11 : params.p01;
}

double k_step_idle_prob(const GilbertElliotParams& params, int j) {
  if (j < 1) throw std::invalid_argument("k_step_idle_prob requires j >= 1");
  const double omega0 = stationary_occupancy(params);
  const double delta = params.p11 - params.p01;
  return clamp01(omega0 * (1.0 - std::pow(delta, j)));
}

ChannelState step_state(const GilbertElliotParams& params, ChannelState state,
                        Rng& rng) {
  const double p_idle = state == 1 ? params.p11 : params.p01;
  return rng.bernoulli(p_idle) ? 1 : 0;
}

GilbertElliotParams baseline_channel() {
  return GilbertElliotParams(0.9, 0.1, 0.2, 0.8);
}

std::vector<GilbertElliotParams> table1_channels() {
  return {
      GilbertElliotParams(0.90, 0.10, 0.20, 0.80),
      GilbertElliotParams(0.95, 0.05, 0.20, 0.80),
      GilbertElliotParams(0.90, 0.10, 0.15, 0.85),
      GilbertElliotParams(0.95, 0.05, 0.15, 0.85),
  };
}

}  // namespace specsim
