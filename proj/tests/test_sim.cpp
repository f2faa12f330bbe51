#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "specsim/closed_form.hpp"
#include "specsim/sim.hpp"

using namespace specsim;

namespace {

SimConfig base_config(int n = 2) {
  SimConfig cfg;
  cfg.channels.assign(n, baseline_channel());
  cfg.horizon_t = 100000;
  cfg.warmup = 10000;
  cfg.replications = 20;
  cfg.seed = 7;
  return cfg;
}

// 3*SE bound for a closed-form mean vs the replication-level estimate.
double tp_mean_3se(const SimSummary& s) {
  // TP mean and throughput are linked by U = 1 - 1/L; propagate the
  // throughput standard error through L = 1/(1-U).
  const double l = s.tp_lengths.mean;
  return 3.0 * s.throughput_stderr * l * l;
}

}  // namespace

TEST_CASE("config validation") {
  SimConfig cfg = base_config();
  CHECK_NOTHROW(cfg.validate());
  cfg.channels.resize(1, baseline_channel());
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = base_config();
  cfg.warmup = cfg.horizon_t;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = base_config();
  cfg.alpha = 1.5;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = base_config();
  cfg.initial_beliefs = BeliefVector{0.5};
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}

TEST_CASE("run_slot trivial regimes") {
  // Total jamming of the defender's channel: no slot ever succeeds.
  SimConfig cfg = base_config();
  cfg.alpha = 1.0;
  cfg.attacker.kind = AttackKind::Greedy;
  cfg.horizon_t = 2000;
  cfg.warmup = 0;
  RngBundle rng = RngBundle::make(cfg.seed, 0);
  EpisodeState st = init_episode_state(cfg, rng);
  for (int t = 0; t < 2000; ++t) {
    const SlotRecord rec = run_slot(st, cfg, rng);
    CHECK_FALSE(rec.transmission_success);
    CHECK(rec.reward == 0);
    REQUIRE(rec.jam_target.has_value());
    CHECK(*rec.jam_target == rec.action);
  }

  // Absorbing idle channel, no attack: reward every slot once locked on.
  SimConfig abs = base_config();
  abs.channels = {GilbertElliotParams(1.0, 0.0, 0.5, 0.5),
                  GilbertElliotParams(0.5, 0.5, 0.1, 0.9)};
  abs.initial_beliefs = BeliefVector{1.0, 0.2};
  abs.alpha = 0.0;
  RngBundle rng2 = RngBundle::make(3, 0);
  EpisodeState st2 = init_episode_state(abs, rng2);
  st2.states[0] = 1;  // starting idle
  for (int t = 0; t < 1000; ++t) {
    const SlotRecord rec = run_slot(st2, abs, rng2);
    CHECK(rec.action == 0);
    CHECK(rec.reward == 1);
  }
}

TEST_CASE("myopic throughput matches the stationary-chain oracle") {
  SimConfig cfg = base_config();
  cfg.horizon_t = 110000;
  cfg.warmup = 10000;
  cfg.replications = 10;  // 10^6 counted slots
  const SimSummary s = run_replications(cfg);
  const double oracle = throughput_from_tp(myopic_tp_length(baseline_channel(), 0.0));
  CHECK(oracle == doctest::Approx(0.8222).epsilon(1e-4));
  CHECK(std::abs(s.throughput_mean - oracle) < 3 * s.throughput_stderr);
}

TEST_CASE("measure_tp_lengths") {
  // All-fail trace.
  std::vector<SlotRecord> records(25);
  for (auto& r : records) r.transmission_success = false;
  auto stats = measure_tp_lengths(records);
  CHECK(stats.mean == doctest::Approx(1.0));
  CHECK(stats.count == 25);
  CHECK(stats.histogram.at(1) == 25);

  // Mixed trace: lengths 3, 1, 2.
  records.assign(6, SlotRecord{});
  for (auto& r : records) r.transmission_success = true;
  records[2].transmission_success = false;
  records[3].transmission_success = false;
  records[5].transmission_success = false;
  stats = measure_tp_lengths(records);
  CHECK(stats.count == 3);
  CHECK(stats.mean == doctest::Approx(2.0));

  // Baseline myopic, alpha=0: mean TP length 5.625.
  SimConfig cfg = base_config();
  const auto recs = run_episode_records(cfg, 0);
  const auto mc = measure_tp_lengths(recs);
  // SE of the TP mean from the squared coefficient of variation of the
  // geometric-tailed length distribution; 3*SE cushion of ~0.06 at this size.
  CHECK(mc.mean == doctest::Approx(5.625).epsilon(0.02));

  // Contrarian policy under no attack: mean 3.
  cfg.policy.kind = PolicyKind::Contrarian;
  const auto mc2 = measure_tp_lengths(run_episode_records(cfg, 0));
  CHECK(mc2.mean == doctest::Approx(3.0).epsilon(0.02));
}

TEST_CASE("contrarian TP lengths match the closed form") {
  for (double alpha : {0.0, 0.25, 0.5}) {
    SimConfig cfg = base_config();
    cfg.policy.kind = PolicyKind::Contrarian;
    cfg.attacker.kind = AttackKind::MinBelief;
    cfg.alpha = alpha;
    const SimSummary s = run_replications(cfg);
    const double oracle = contrarian_tp_length(baseline_channel(), alpha);
    CHECK(std::abs(s.tp_lengths.mean - oracle) < std::max(tp_mean_3se(s), 1e-3));
  }
}

TEST_CASE("run_replications determinism and replication independence") {
  SimConfig cfg = base_config();
  cfg.alpha = 0.3;
  cfg.attacker.kind = AttackKind::Greedy;
  cfg.horizon_t = 20000;
  cfg.warmup = 2000;
  const SimSummary a = run_replications(cfg);
  const SimSummary b = run_replications(cfg);
  CHECK(a.throughput_mean == b.throughput_mean);
  CHECK(a.throughput_stderr == b.throughput_stderr);
  CHECK(a.rep_throughputs == b.rep_throughputs);
  CHECK(a.tp_lengths.histogram == b.tp_lengths.histogram);
  // Parallel and serial execution agree bit for bit.
  const SimSummary c = run_replications_serial(cfg);
  CHECK(a.throughput_mean == c.throughput_mean);
  CHECK(a.rep_throughputs == c.rep_throughputs);
}

TEST_CASE("jam fraction tracks alpha and throughput identity holds") {
  for (double alpha : {0.2, 0.6}) {
    SimConfig cfg = base_config();
    cfg.alpha = alpha;
    cfg.attacker.kind = AttackKind::Uniform;
    const SimSummary s = run_replications(cfg);
    const long slots = (cfg.horizon_t - cfg.warmup) * cfg.replications;
    const double se = std::sqrt(alpha * (1 - alpha) / slots);
    CHECK(std::abs(s.attack_fraction - alpha) < 3 * se);
    // U = 1 - 1/L consistency between the two empirical estimates.
    CHECK(std::abs(s.throughput_mean - (1.0 - 1.0 / s.tp_lengths.mean)) <
          std::max(3 * s.throughput_stderr, 1e-3));
  }
}

TEST_CASE("policy equivalence under common random numbers") {
  // Separate policy substream: Myopic (draw-free), Bernoulli(q=1) and
  // Boltzmann(tau->0) follow identical trajectories given distinct beliefs.
  SimConfig cfg = base_config();
  cfg.horizon_t = 100000;
  cfg.warmup = 0;
  cfg.alpha = 0.4;
  cfg.attacker.kind = AttackKind::Uniform;
  cfg.initial_beliefs = BeliefVector{0.7, 0.5};

  auto trace = [&](PolicyKind kind, double q, double tau) {
    SimConfig c = cfg;
    c.policy.kind = kind;
    c.policy.q = q;
    c.policy.tau = tau;
    std::vector<SensingAction> actions;
    const auto records = run_episode_records(c, 0);
    actions.reserve(records.size());
    for (const auto& r : records) actions.push_back(r.action);
    return actions;
  };
  const auto myopic = trace(PolicyKind::Myopic, 1.0, 1.0);
  CHECK(myopic == trace(PolicyKind::Bernoulli, 1.0, 1.0));
  CHECK(myopic == trace(PolicyKind::Boltzmann, 1.0, 1e-6));
}

TEST_CASE("N=10 softmax degradation is barely noticeable") {
  SimConfig cfg = base_config(10);
  cfg.policy.kind = PolicyKind::Boltzmann;
  cfg.policy.tau = 2.0;
  cfg.attacker.kind = AttackKind::Greedy;
  cfg.horizon_t = 30000;
  cfg.warmup = 3000;
  cfg.replications = 12;
  cfg.alpha = 0.0;
  const double u0 = run_replications(cfg).throughput_mean;
  cfg.alpha = 0.5;
  const double u5 = run_replications(cfg).throughput_mean;
  CHECK((u0 - u5) / u0 < 0.05);
}

TEST_CASE("myopic declines faster than softmax on the alpha grid") {
  SimConfig cfg = base_config(4);
  cfg.attacker.kind = AttackKind::Greedy;
  cfg.horizon_t = 30000;
  cfg.warmup = 3000;
  cfg.replications = 12;
  auto run_at = [&](PolicyKind kind, double alpha) {
    SimConfig c = cfg;
    c.policy.kind = kind;
    c.policy.tau = 2.0;
    c.alpha = alpha;
    return run_replications(c).throughput_mean;
  };
  const double m0 = run_at(PolicyKind::Myopic, 0.0);
  const double s0 = run_at(PolicyKind::Boltzmann, 0.0);
  CHECK(m0 >= s0);  // no attack favors the myopic policy
  for (double alpha : {0.2, 0.4}) {
    const double dm = m0 - run_at(PolicyKind::Myopic, alpha);
    const double ds = s0 - run_at(PolicyKind::Boltzmann, alpha);
    CHECK(dm > ds);
  }
}

TEST_CASE("detection statistics") {
  SprtSettings settings;
  settings.p_fa = 0.01;
  settings.p_m = 0.01;
  settings.detector_alpha = 0.5;

  // alpha=1 greedy: the defender fails every slot; the detector needs
  // exactly ceil(a / ln(theta1/theta0)) = 2 failures.
  SimConfig cfg = base_config();
  cfg.alpha = 1.0;
  cfg.attacker.kind = AttackKind::Greedy;
  cfg.horizon_t = 100;
  cfg.warmup = 0;
  cfg.replications = 200;
  settings.detector_alpha = 1.0;
  SimSummary s = run_with_detection(cfg, settings);
  REQUIRE(s.detection.has_value());
  CHECK(s.detection->decided_h1 == 200);
  const double asn1 =
      asn_under_attack(1.0, baseline_channel(), wald_thresholds(0.01, 0.01).upper_a);
  CHECK(std::abs(s.detection->mean_samples_to_decision - asn1) / asn1 < 0.10);

  // Attacked stream: detection fires, and faster than the theta1 model
  // predicts because TP-start slots fail more often than p10 even without
  // jamming (the Y stream is more extreme than Bernoulli(theta1)).
  cfg.alpha = 0.5;
  cfg.horizon_t = 2000;
  cfg.replications = 500;
  settings.detector_alpha = 0.5;
  s = run_with_detection(cfg, settings);
  // P_M = 0.01 allows a few misses.
  CHECK(s.detection->decided_h1 >= 480);
  CHECK(s.detection->mean_samples_to_decision <
        asn_under_attack(0.5, baseline_channel(), wald_thresholds(0.01, 0.01).upper_a) *
            1.10);

  // Unattacked stream: TP-start slots fail more often than p10, so false
  // alarms well above P_FA are expected; H0 still wins the majority.
  cfg.alpha = 0.0;
  cfg.horizon_t = 3000;
  cfg.replications = 400;
  s = run_with_detection(cfg, settings);
  CHECK(s.detection->decided_h0 > s.detection->decided_h1);
}
