#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "specsim/adversary.hpp"
#include "specsim/optimize.hpp"
#include "specsim/policy.hpp"

using namespace specsim;

namespace {

void check_simplex(const DivisionProbabilities& d) {
  double sum = 0.0;
  for (double x : d) {
    CHECK(x >= 0.0);
    sum += x;
  }
  CHECK(std::abs(sum - 1.0) < 1e-9);
}

}  // namespace

TEST_CASE("greedy_division") {
  CHECK(greedy_division({0.2, 0.9}) == DivisionProbabilities{0.0, 1.0});
  CHECK(greedy_division({0.9, 0.2}) == DivisionProbabilities{1.0, 0.0});
  CHECK(greedy_division({0.5, 0.5, 0.5}) == DivisionProbabilities{1.0, 0.0, 0.0});
}

TEST_CASE("uniform_division") {
  CHECK(uniform_division(2) == DivisionProbabilities{0.5, 0.5});
  for (int n : {4, 10}) {
    const auto d = uniform_division(n);
    CHECK(static_cast<int>(d.size()) == n);
    for (double x : d) CHECK(x == doctest::Approx(1.0 / n).epsilon(1e-15));
  }
  CHECK_THROWS_AS(uniform_division(1), std::invalid_argument);
}

TEST_CASE("omega_division") {
  auto d = omega_division({0.4, 0.4, 0.4}, 3.0);
  for (double x : d) CHECK(x == doctest::Approx(1.0 / 3.0).epsilon(1e-12));

  d = omega_division({0.9, 0.2}, 0.7);
  CHECK(d[0] == doctest::Approx(0.7311).epsilon(1e-4));
  CHECK(d[1] == doctest::Approx(0.2689).epsilon(1e-4));
  // Same numerics as boltzmann_probs.
  const auto p = boltzmann_probs({0.9, 0.2}, 0.7);
  CHECK(d[0] == p[0]);

  d = omega_division({0.9, 0.2}, 1e-9);
  CHECK(d[0] == doctest::Approx(1.0));
  check_simplex(d);
  CHECK_THROWS_AS(omega_division({0.9, 0.2}, 0.0), std::invalid_argument);
}

TEST_CASE("optimal_division basics") {
  const auto base = baseline_channel();
  const std::vector<GilbertElliotParams> two = {base, base};
  const double w0 = stationary_occupancy(base);

  auto d = optimal_division({0.5, 0.5}, {w0, w0}, two, 0.4);
  CHECK(d[0] == doctest::Approx(0.5).epsilon(1e-7));
  check_simplex(d);

  d = optimal_division({0.0, 1.0}, {w0, w0}, two, 0.4);
  CHECK(d[1] == doctest::Approx(1.0).epsilon(1e-7));
}

TEST_CASE("optimality dominance over fixed strategies") {
  const auto t1 = table1_channels();
  BeliefVector w;
  for (const auto& ch : t1) w.push_back(stationary_occupancy(ch));
  for (double tau : {0.5, 2.0}) {
    for (double alpha : {0.2, 0.5, 0.9}) {
      const auto q = boltzmann_probs(w, tau);
      const auto d = optimal_division(q, w, t1, alpha);
      check_simplex(d);
      const double at_opt = problem3_objective(d, q, w, t1, alpha);
      const double at_greedy = problem3_objective(greedy_division(w), q, w, t1, alpha);
      const double at_unif = problem3_objective(uniform_division(4), q, w, t1, alpha);
      CHECK(at_opt <= at_greedy + 1e-9);
      CHECK(at_opt <= at_unif + 1e-9);
    }
  }
}

TEST_CASE("sample_attack") {
  Rng rng(101);
  for (int i = 0; i < 1000; ++i) {
    CHECK_FALSE(sample_attack({0.5, 0.5}, 0.0, rng).has_value());
  }
  for (int i = 0; i < 1000; ++i) {
    const auto jam = sample_attack({0.0, 1.0}, 1.0, rng);
    REQUIRE(jam.has_value());
    CHECK(*jam == 1);
  }
  const long n = 1000000;
  long per_channel[4] = {0, 0, 0, 0};
  const auto d = uniform_division(4);
  for (long i = 0; i < n; ++i) {
    const auto jam = sample_attack(d, 0.5, rng);
    if (jam) per_channel[*jam] += 1;
  }
  const double se = std::sqrt(0.125 * 0.875 / n);
  for (long c : per_channel) {
    CHECK(std::abs(static_cast<double>(c) / n - 0.125) < 4 * se);
  }
}

TEST_CASE("attacker_cost") {
  const auto base = baseline_channel();
  CHECK(attacker_cost(0.0, base) == doctest::Approx(0.0));
  CHECK(attacker_cost(1.0, base) == doctest::Approx(1.0).epsilon(1e-12));
  // theta1 = 0.55, theta0 = 0.1, C = ln 10.
  const double kl = 0.55 * std::log(0.55 / 0.1) + 0.45 * std::log(0.45 / 0.9);
  CHECK(attacker_cost(0.5, base) == doctest::Approx(kl / std::log(10.0)).epsilon(1e-12));
  CHECK(attacker_cost(0.5, base) == doctest::Approx(0.2717).epsilon(1e-3));

  double prev = -1.0;
  for (int i = 0; i <= 10; ++i) {
    const double c = attacker_cost(i / 10.0, base);
    CHECK(c > prev);
    prev = c;
  }
  CHECK_THROWS_AS(attacker_cost(0.5, GilbertElliotParams(1.0, 0.0, 0.2, 0.8)),
                  std::domain_error);
}

TEST_CASE("strategy spec validation") {
  AttackStrategySpec spec;
  spec.kind = AttackKind::OmegaBoltzmann;
  spec.tau_a = 0.0;
  CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
  spec.tau_a = 1.0;
  CHECK_NOTHROW(spec.validate());
}
