#include "specsim/sim.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "specsim/optimize.hpp"

namespace specsim {

namespace {

// Defender's selection distribution as seen by the alpha-optimal attacker.
void policy_distribution(const PolicySpec& policy, const BeliefVector& beliefs,
                         std::vector<double>& q) {
  q.assign(beliefs.size(), 0.0);
  switch (policy.kind) {
    case PolicyKind::Myopic:
      q[myopic_select(beliefs)] = 1.0;
      break;
    case PolicyKind::Contrarian:
      q[contrarian_select(beliefs)] = 1.0;
      break;
    case PolicyKind::Bernoulli: {
      const SensingAction greedy = myopic_select(beliefs);
      q[greedy] = policy.q;
      q[1 - greedy] += 1.0 - policy.q;
      break;
    }
    case PolicyKind::Boltzmann:
      q = boltzmann_probs(beliefs, policy.tau);
      break;
  }
}

void update_division(EpisodeState& st, const SimConfig& cfg, bool tp_start,
                     std::vector<double>& q_scratch) {
  const int n = static_cast<int>(st.beliefs.size());
  // Belief-dependent targets are chosen when the belief vector the policy
  // acted on changes, i.e. at TP starts, and held through the period.
  switch (cfg.attacker.kind) {
    case AttackKind::Greedy:
      if (tp_start) {
        std::fill(st.division.begin(), st.division.end(), 0.0);
        st.division[myopic_select(st.beliefs)] = 1.0;
      }
      break;
    case AttackKind::MinBelief:
      // Stays on the channel a min-belief defender occupies for the period.
      if (tp_start) {
        std::fill(st.division.begin(), st.division.end(), 0.0);
        st.division[contrarian_select(st.beliefs)] = 1.0;
      }
      break;
    case AttackKind::Uniform:
      std::fill(st.division.begin(), st.division.end(), 1.0 / n);
      break;
    case AttackKind::OmegaBoltzmann:
      // Statistics-only attacker: Boltzmann over the stationary occupancies,
      // constant over time.
      if (tp_start) {
        BeliefVector w0(n);
        for (int k = 0; k < n; ++k) w0[k] = stationary_occupancy(cfg.channels[k]);
        st.division = omega_division(w0, cfg.attacker.tau_a);
      }
      break;
    case AttackKind::AlphaOptimal:
      // d is a function of (Q, Omega); recomputed at TP starts, where the
      // belief vector the policy acts on changes.
      if (tp_start) {
        if (cfg.alpha <= 0.0) {
          std::fill(st.division.begin(), st.division.end(), 1.0 / n);
        } else {
          policy_distribution(cfg.policy, st.beliefs, q_scratch);
          st.division =
              optimal_division(q_scratch, st.beliefs, cfg.channels, cfg.alpha);
        }
      }
      break;
  }
}

struct SlotOutcome {
  SensingAction action = 0;
  int jam_target = -1;  // -1 = no jam this slot
  bool success = false;
  long completed_tp = 0;  // > 0 when this slot ended a TP
};

SlotOutcome step_slot(EpisodeState& st, const SimConfig& cfg, RngBundle& rng,
                      std::vector<double>& q_scratch) {
  const int n = static_cast<int>(cfg.channels.size());
  for (int k = 0; k < n; ++k) {
    st.states[k] = step_state(cfg.channels[k], st.states[k], rng.channels);
  }

  const bool tp_start = st.need_select;
  SensingAction action;
  if (st.need_select || cfg.policy.resample == ResampleMode::EverySlot) {
    action = select_action(cfg.policy, st.beliefs, rng.policy);
  } else {
    action = st.current_channel;
  }
  if (!st.need_select && action != st.current_channel) {
    st.slots_in_tp = 0;  // voluntary mid-run switch (EverySlot mode only)
  }
  st.current_channel = action;
  st.need_select = false;

  update_division(st, cfg, tp_start, q_scratch);
  const std::optional<int> jam = sample_attack(st.division, cfg.alpha, rng.attacker);

  // Jamming energy occupies the channel: the jammed channel is busy this
  // slot and evolves from the busy state, the same as a primary-user slot.
  if (jam) st.states[*jam] = 0;

  SlotOutcome out;
  out.action = action;
  out.jam_target = jam ? *jam : -1;
  out.success = st.states[action] == 1 && (!jam || *jam != action);

  // Bayes update; a jammed slot is observed as busy.
  for (int k = 0; k < n; ++k) {
    if (k == action) continue;
    st.beliefs[k] = propagate_belief(cfg.channels[k], st.beliefs[k]);
  }
  st.beliefs[action] =
      out.success ? cfg.channels[action].p11 : cfg.channels[action].p01;

  st.slots_in_tp += 1;
  if (!out.success) {
    out.completed_tp = st.slots_in_tp;
    st.slots_in_tp = 0;
    st.need_select = true;
  }
  st.slot += 1;
  return out;
}

struct RepResult {
  double throughput = 0.0;
  TpLengthStats tp;
  long jam_count = 0;
  long counted_slots = 0;
  // Detection
  bool decided = false;
  bool decided_h1 = false;
  long samples_to_decision = 0;
};

RepResult run_episode(const SimConfig& cfg, int replication, bool detect,
                      const SprtSettings& settings) {
  RngBundle rng = RngBundle::make(cfg.seed, replication);
  EpisodeState st = init_episode_state(cfg, rng);
  std::vector<double> q_scratch;

  SprtState sprt;
  std::optional<SprtHypotheses> hyp;
  std::optional<SprtThresholds> thr;
  if (detect) {
    const double detector_alpha = settings.detector_alpha.value_or(cfg.alpha);
    hyp = hypotheses_from_attack(detector_alpha, cfg.channels.front());
    thr = wald_thresholds(settings.p_fa, settings.p_m);
  }

  RepResult rep;
  long reward_sum = 0;
  double tp_len_sum = 0.0;
  for (long t = 0; t < cfg.horizon_t; ++t) {
    const SlotOutcome out = step_slot(st, cfg, rng, q_scratch);
    if (t < cfg.warmup) continue;
    rep.counted_slots += 1;
    reward_sum += out.success ? 1 : 0;
    if (out.jam_target >= 0) rep.jam_count += 1;
    if (out.completed_tp > 0) {
      rep.tp.count += 1;
      tp_len_sum += static_cast<double>(out.completed_tp);
      rep.tp.histogram[out.completed_tp] += 1;
    }
    if (detect && !rep.decided) {
      const SprtDecision decision =
          sprt_step(sprt, out.success ? 0 : 1, *hyp, *thr);
      if (decision != SprtDecision::Continue) {
        rep.decided = true;
        rep.decided_h1 = decision == SprtDecision::AcceptH1;
        rep.samples_to_decision = sprt.samples_seen;
      }
    }
  }
  rep.throughput =
      static_cast<double>(reward_sum) / static_cast<double>(rep.counted_slots);
  rep.tp.mean = rep.tp.count > 0 ? tp_len_sum / rep.tp.count : 0.0;
  return rep;
}

SimSummary reduce_results(const SimConfig& cfg,
                          const std::vector<RepResult>& results, bool detect) {
  SimSummary summary;
  summary.rep_throughputs.reserve(results.size());
  double sum = 0.0;
  long jam_total = 0, slot_total = 0;
  double tp_len_sum = 0.0;
  for (const RepResult& rep : results) {
    summary.rep_throughputs.push_back(rep.throughput);
    sum += rep.throughput;
    jam_total += rep.jam_count;
    slot_total += rep.counted_slots;
    summary.tp_lengths.count += rep.tp.count;
    tp_len_sum += rep.tp.mean * rep.tp.count;
    for (const auto& [len, cnt] : rep.tp.histogram) {
      summary.tp_lengths.histogram[len] += cnt;
    }
  }
  const int r = static_cast<int>(results.size());
  summary.throughput_mean = sum / r;
  if (r >= 2) {
    double ss = 0.0;
    for (double u : summary.rep_throughputs) {
      ss += (u - summary.throughput_mean) * (u - summary.throughput_mean);
    }
    summary.throughput_stderr = std::sqrt(ss / (r - 1) / r);
  }
  summary.attack_fraction =
      static_cast<double>(jam_total) / static_cast<double>(slot_total);
  if (summary.tp_lengths.count > 0) {
    summary.tp_lengths.mean = tp_len_sum / summary.tp_lengths.count;
  }
  if (detect) {
    DetectionStats det;
    double n_sum = 0.0;
    std::vector<double> samples;
    for (const RepResult& rep : results) {
      if (!rep.decided) {
        det.undecided += 1;
        continue;
      }
      (rep.decided_h1 ? det.decided_h1 : det.decided_h0) += 1;
      n_sum += static_cast<double>(rep.samples_to_decision);
      samples.push_back(static_cast<double>(rep.samples_to_decision));
    }
    if (!samples.empty()) {
      det.mean_samples_to_decision = n_sum / samples.size();
      if (samples.size() >= 2) {
        double ss = 0.0;
        for (double s : samples) {
          ss += (s - det.mean_samples_to_decision) *
                (s - det.mean_samples_to_decision);
        }
        det.stderr_samples =
            std::sqrt(ss / (samples.size() - 1) / samples.size());
      }
    }
    summary.detection = det;
  }
  return summary;
}

SimSummary run_all(const SimConfig& cfg, bool parallel, bool detect,
                   const SprtSettings& settings) {
  cfg.validate();
  std::vector<RepResult> results(cfg.replications);
  if (parallel) {
#pragma omp parallel for schedule(dynamic)
    for (int r = 0; r < cfg.replications; ++r) {
      results[r] = run_episode(cfg, r, detect, settings);
    }
  } else {
    for (int r = 0; r < cfg.replications; ++r) {
      results[r] = run_episode(cfg, r, detect, settings);
    }
  }
  return reduce_results(cfg, results, detect);
}

}  // namespace

void SimConfig::validate() const {
  if (channels.size() < 2) {
    throw std::invalid_argument("sim requires N >= 2 channels");
  }
  policy.validate(static_cast<int>(channels.size()));
  attacker.validate();
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw std::invalid_argument("attack probability must be in [0,1]");
  }
  if (horizon_t <= 0 || warmup < 0 || warmup >= horizon_t) {
    throw std::invalid_argument("require 0 <= warmup < horizon");
  }
  if (replications < 1) {
    throw std::invalid_argument("replications must be positive");
  }
  if (initial_beliefs) {
    if (initial_beliefs->size() != channels.size()) {
      throw std::invalid_argument("initial belief vector size mismatch");
    }
    for (double w : *initial_beliefs) {
      if (!(w >= 0.0 && w <= 1.0)) {
        throw std::invalid_argument("initial beliefs must be in [0,1]");
      }
    }
  }
}

RngBundle RngBundle::make(std::uint64_t seed, int replication) {
  const std::uint64_t base = static_cast<std::uint64_t>(replication) * 3;
  return RngBundle{Rng::substream(seed, base),
                   Rng::substream(seed, base + 1),
                   Rng::substream(seed, base + 2)};
}

EpisodeState init_episode_state(const SimConfig& config, RngBundle& rng) {
  const int n = static_cast<int>(config.channels.size());
  EpisodeState st;
  st.states.resize(n);
  st.beliefs.resize(n);
  st.division.assign(n, 1.0 / n);
  for (int k = 0; k < n; ++k) {
    const double omega0 = stationary_occupancy(config.channels[k]);
    st.states[k] = rng.channels.bernoulli(omega0) ? 1 : 0;
    st.beliefs[k] = config.initial_beliefs ? (*config.initial_beliefs)[k] : omega0;
  }
  return st;
}

SlotRecord run_slot(EpisodeState& state, const SimConfig& config,
                    RngBundle& rng) {
  SlotRecord record;
  record.slot = state.slot;
  record.beliefs_before = state.beliefs;
  std::vector<double> q_scratch;
  const SlotOutcome out = step_slot(state, config, rng, q_scratch);
  record.action = out.action;
  if (out.jam_target >= 0) record.jam_target = out.jam_target;
  record.true_states = state.states;
  record.transmission_success = out.success;
  record.reward = out.success ? 1 : 0;
  return record;
}

SimSummary run_replications(const SimConfig& config, bool parallel) {
  return run_all(config, parallel, false, SprtSettings{});
}

SimSummary run_replications_serial(const SimConfig& config) {
  return run_all(config, false, false, SprtSettings{});
}

TpLengthStats measure_tp_lengths(const std::vector<SlotRecord>& records) {
  TpLengthStats stats;
  long run = 0;
  double len_sum = 0.0;
  for (const SlotRecord& rec : records) {
    run += 1;
    if (!rec.transmission_success) {
      stats.count += 1;
      stats.histogram[run] += 1;
      len_sum += static_cast<double>(run);
      run = 0;
    }
  }
  if (stats.count > 0) stats.mean = len_sum / stats.count;
  return stats;
}

std::vector<SlotRecord> run_episode_records(const SimConfig& config,
                                            int replication) {
  config.validate();
  RngBundle rng = RngBundle::make(config.seed, replication);
  EpisodeState st = init_episode_state(config, rng);
  std::vector<SlotRecord> records;
  records.reserve(static_cast<std::size_t>(config.horizon_t));
  for (long t = 0; t < config.horizon_t; ++t) {
    records.push_back(run_slot(st, config, rng));
  }
  return records;
}

SimSummary run_with_detection(const SimConfig& config,
                              const SprtSettings& settings) {
  return run_all(config, true, true, settings);
}

}  // namespace specsim
