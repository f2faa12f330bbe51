// Compares the OpenMP-parallel replication runner against the serial
// reference implementation: identical aggregates required, wall time
// reported for both.

#include <chrono>
#include <cstdio>
#include <cstdlib>

#include "specsim/sim.hpp"

using namespace specsim;
using clock_type = std::chrono::steady_clock;

int main(int argc, char** argv) {
  SimConfig cfg;
  cfg.channels.assign(4, baseline_channel());
  cfg.policy.kind = PolicyKind::Boltzmann;
  cfg.policy.tau = 2.0;
  cfg.attacker.kind = AttackKind::Greedy;
  cfg.alpha = 0.4;
  cfg.horizon_t = 100000;
  cfg.warmup = 10000;
  cfg.replications = argc > 1 ? std::atoi(argv[1]) : 32;
  cfg.seed = 2026;

  const auto t0 = clock_type::now();
  const SimSummary parallel = run_replications(cfg, true);
  const auto t1 = clock_type::now();
  const SimSummary serial = run_replications_serial(cfg);
  const auto t2 = clock_type::now();

  const double ms_par = std::chrono::duration<double, std::milli>(t1 - t0).count();
  const double ms_ser = std::chrono::duration<double, std::milli>(t2 - t1).count();
  std::printf("replications: %d, horizon: %ld\n", cfg.replications, cfg.horizon_t);
  std::printf("parallel: %8.1f ms  throughput %.6f\n", ms_par, parallel.throughput_mean);
  std::printf("serial:   %8.1f ms  throughput %.6f\n", ms_ser, serial.throughput_mean);
  std::printf("speedup:  %.2fx\n", ms_ser / ms_par);

  const bool identical =
      parallel.throughput_mean == serial.throughput_mean &&
      parallel.throughput_stderr == serial.throughput_stderr &&
      parallel.rep_throughputs == serial.rep_throughputs &&
      parallel.tp_lengths.histogram == serial.tp_lengths.histogram;
  std::printf("aggregates identical: %s\n", identical ? "yes" : "NO");
  return identical ? 0 : 1;
}
