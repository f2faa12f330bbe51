#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "specsim/closed_form.hpp"
#include "specsim/policy.hpp"
#include "specsim/rng.hpp"

using namespace specsim;

TEST_CASE("myopic_select and tie-breaks") {
  CHECK(myopic_select({0.2, 0.9}) == 1);
  CHECK(myopic_select({0.5, 0.5}) == 0);
  CHECK(myopic_select({0.7, 0.3, 0.7}) == 0);
  // Argmax invariance under a strictly increasing transform.
  BeliefVector w = {0.31, 0.72, 0.05, 0.72};
  BeliefVector t;
  for (double x : w) t.push_back(std::tanh(3.0 * x + 0.1));
  CHECK(myopic_select(w) == myopic_select(t));
  CHECK(contrarian_select({0.2, 0.9}) == 0);
  CHECK(contrarian_select({0.5, 0.5}) == 0);
}

TEST_CASE("bernoulli_select") {
  Rng rng(7);
  for (int i = 0; i < 100; ++i) CHECK(bernoulli_select({0.2, 0.9}, 1.0, rng) == 1);

  const long n = 1000000;
  long hits = 0;
  for (long i = 0; i < n; ++i) hits += bernoulli_select({0.2, 0.9}, 0.5, rng) == 1;
  double se = std::sqrt(0.25 / n);
  CHECK(std::abs(static_cast<double>(hits) / n - 0.5) < 3 * se);

  hits = 0;
  for (long i = 0; i < n; ++i) hits += bernoulli_select({0.9, 0.2}, 0.7, rng) == 0;
  se = std::sqrt(0.7 * 0.3 / n);
  CHECK(std::abs(static_cast<double>(hits) / n - 0.7) < 3 * se);

  PolicySpec bad;
  bad.kind = PolicyKind::Bernoulli;
  bad.q = 0.3;
  CHECK_THROWS_AS(bad.validate(2), std::invalid_argument);
  bad.q = 0.7;
  CHECK_THROWS_AS(bad.validate(3), std::invalid_argument);  // N=2 only
  CHECK_NOTHROW(bad.validate(2));
}

TEST_CASE("boltzmann_probs") {
  auto p = boltzmann_probs({0.4, 0.4, 0.4}, 1.0);
  for (double x : p) CHECK(x == doctest::Approx(1.0 / 3.0).epsilon(1e-12));

  p = boltzmann_probs({0.9, 0.2}, 0.7);
  CHECK(p[0] == doctest::Approx(1.0 / (1.0 + std::exp(-0.7 / 0.7))).epsilon(1e-10));
  CHECK(p[0] == doctest::Approx(0.7311).epsilon(1e-4));
  CHECK(p[1] == doctest::Approx(0.2689).epsilon(1e-4));

  p = boltzmann_probs({0.9, 0.2}, 1e-6);
  CHECK(p[0] > 1.0 - 1e-12);
  CHECK(p[1] < 1e-12);

  CHECK_THROWS_AS(boltzmann_probs({0.5, 0.5}, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(boltzmann_probs({0.5, 0.5}, -1.0), std::invalid_argument);
}

TEST_CASE("boltzmann normalization over tau and N") {
  Rng rng(3);
  for (double tau : {1e-6, 1e-4, 1e-2, 1.0, 1e2, 1e3}) {
    for (int n : {2, 5, 17, 64}) {
      BeliefVector w(n);
      for (double& x : w) x = rng.next_double();
      const auto p = boltzmann_probs(w, tau);
      double sum = 0.0;
      for (double x : p) {
        CHECK(x >= 0.0);
        sum += x;
      }
      CHECK(std::abs(sum - 1.0) < 1e-12);
      // Order isomorphism.
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          if (w[i] >= w[j]) CHECK(p[i] >= p[j] - 1e-15);
    }
  }
}

TEST_CASE("entropy of boltzmann_probs nondecreasing in tau") {
  const BeliefVector w = {0.9, 0.55, 0.2, 0.7};
  double prev = -1.0;
  for (double lt = -6.0; lt <= 3.0; lt += 0.25) {
    const double h = selection_entropy(boltzmann_probs(w, std::pow(10.0, lt)));
    CHECK(h >= prev - 1e-12);
    prev = h;
  }
}

TEST_CASE("boltzmann_select") {
  Rng rng(11);
  long other = 0;
  const long n = 1000000;
  for (long i = 0; i < n; ++i) other += boltzmann_select({0.2, 0.9}, 1e-6, rng) != 1;
  CHECK(other <= 10);

  long counts[3] = {0, 0, 0};
  for (long i = 0; i < n; ++i) counts[boltzmann_select({0.5, 0.5, 0.5}, 2.0, rng)] += 1;
  const double se = std::sqrt((1.0 / 3.0) * (2.0 / 3.0) / n);
  for (long c : counts) CHECK(std::abs(static_cast<double>(c) / n - 1.0 / 3.0) < 4 * se);

  CHECK_THROWS_AS(boltzmann_select({0.5}, 1.0, rng), std::invalid_argument);
}

TEST_CASE("limit equivalence of boltzmann and myopic under common draws") {
  Rng rng(19);
  Rng walk(23);
  BeliefVector w = {0.4, 0.6};
  for (long t = 0; t < 100000; ++t) {
    // Random-walk beliefs, kept at least 0.01 apart.
    w[0] = std::min(1.0, std::max(0.0, w[0] + (walk.next_double() - 0.5) * 0.1));
    w[1] = std::min(1.0, std::max(0.0, w[1] + (walk.next_double() - 0.5) * 0.1));
    if (std::abs(w[0] - w[1]) < 0.01) w[1] = w[0] + 0.01 <= 1.0 ? w[0] + 0.01 : w[0] - 0.01;
    Rng r1 = rng;  // common random numbers: same stream state for both
    Rng r2 = rng;
    const SensingAction a = boltzmann_select(w, 1e-6, r1);
    CHECK(a == myopic_select(w));
    (void)boltzmann_select(w, 1e-6, r2);
    rng = r1;
  }
}

TEST_CASE("select_action dispatch") {
  Rng rng(5);
  PolicySpec spec;
  spec.kind = PolicyKind::Myopic;
  CHECK(select_action(spec, {0.1, 0.8}, rng) == 1);
  spec.kind = PolicyKind::Contrarian;
  CHECK(select_action(spec, {0.1, 0.8}, rng) == 0);
  spec.kind = PolicyKind::Boltzmann;
  spec.tau = 1e-6;
  CHECK(select_action(spec, {0.1, 0.8}, rng) == 1);
  spec.kind = PolicyKind::Bernoulli;
  spec.q = 1.0;
  CHECK(select_action(spec, {0.1, 0.8}, rng) == 1);
}
