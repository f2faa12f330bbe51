#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "specsim/adversary.hpp"
#include "specsim/channel.hpp"
#include "specsim/policy.hpp"
#include "specsim/rng.hpp"
#include "specsim/sprt.hpp"

namespace specsim {

struct SimConfig {
  std::vector<GilbertElliotParams> channels;
  PolicySpec policy;
  AttackStrategySpec attacker;
  double alpha = 0.0;
  long horizon_t = 100000;
  long warmup = 10000;
  int replications = 50;
  std::uint64_t seed = 1;
  // Empty = stationary initialization per channel.
  std::optional<BeliefVector> initial_beliefs;

  void validate() const;
};

struct SlotRecord {
  long slot = 0;
  BeliefVector beliefs_before;
  SensingAction action = 0;
  std::optional<int> jam_target;
  std::vector<ChannelState> true_states;
  bool transmission_success = false;
  int reward = 0;
};

struct TpLengthStats {
  double mean = 0.0;
  long count = 0;
  std::map<long, long> histogram;  // completed TP length -> occurrences
};

struct DetectionStats {
  long decided_h1 = 0;
  long decided_h0 = 0;
  long undecided = 0;
  double mean_samples_to_decision = 0.0;  // over decided replications
  double stderr_samples = 0.0;
};

struct SimSummary {
  double throughput_mean = 0.0;
  double throughput_stderr = 0.0;
  std::vector<double> rep_throughputs;
  TpLengthStats tp_lengths;
  double attack_fraction = 0.0;
  std::optional<DetectionStats> detection;
};

// Mutable per-episode state. Belief and channel vectors are sized to N.
struct EpisodeState {
  std::vector<ChannelState> states;
  BeliefVector beliefs;
  SensingAction current_channel = 0;
  bool need_select = true;
  long slots_in_tp = 0;
  long slot = 0;
  DivisionProbabilities division;  // current attacker split
};

// Three independent substreams per replication so policies with different
// draw counts still see identical channel and attacker randomness (common
// random numbers).
struct RngBundle {
  Rng channels;
  Rng policy;
  Rng attacker;

  static RngBundle make(std::uint64_t seed, int replication);
};

// Initializes channel states (sampled from each channel's stationary
// distribution) and beliefs for one episode.
EpisodeState init_episode_state(const SimConfig& config, RngBundle& rng);

// Advances the system one slot: channels evolve, the defender selects or
// stays per its resample mode, the attacker draws a jam target, the reward
// is collected, and beliefs update by Bayes rule (a jammed slot is observed
// as busy). Returns the full slot record.
SlotRecord run_slot(EpisodeState& state, const SimConfig& config,
                    RngBundle& rng);

// Runs `replications` independent episodes. With `parallel` the episodes are
// dispatched over OpenMP threads; reduction order is fixed by replication
// index so results are identical to the serial path.
SimSummary run_replications(const SimConfig& config, bool parallel = true);

// Serial reference used by tests and the benchmark.
SimSummary run_replications_serial(const SimConfig& config);

// TP boundaries at every failed slot; mean over completed TPs.
TpLengthStats measure_tp_lengths(const std::vector<SlotRecord>& records);

// Convenience for tests: one full episode as slot records.
std::vector<SlotRecord> run_episode_records(const SimConfig& config,
                                            int replication);

struct SprtSettings {
  double p_fa = 0.01;
  double p_m = 0.01;
  // theta1 is parameterized via the greedy-attack model 1 - p11(1-alpha)
  // regardless of the attacker strategy in play, with alpha taken from
  // detector_alpha when set (so a detector tuned for one attack level can be
  // run against a stream with another) and from the sim config otherwise.
  std::optional<double> detector_alpha;
};

// run_replications plus a per-replication SPRT over the failed-transmission
// stream (one observation per post-warmup slot).
SimSummary run_with_detection(const SimConfig& config,
                              const SprtSettings& settings);

}  // namespace specsim
