#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "ckmig/failure_models.hpp"
#include "ckmig/throughput.hpp"

namespace ckmig {

// Every predicted failure is checkpointed just in time; the machine is then
// out for C + D + R.
struct PredictedCheckpointPolicy {};

// N - m job slots run on up machines. A predicted failure on a slot host
// moves the job to a free spare (job suspended for M); the victim is down for
// M + D and then rejoins the pool. A failure with no free spare fails the
// replication.
struct MigrationPolicy {
  std::int64_t spares = 0;
};

// One job on 2^k machines checkpoints every T minutes (work T - C, then C).
// A failure of any of its machines loses the work since the last completed
// checkpoint plus R + D of downtime.
struct PeriodicPolicy {
  double period = 0.0;
  int job_size_log2 = 0;
};

using SimPolicy =
    std::variant<PredictedCheckpointPolicy, MigrationPolicy, PeriodicPolicy>;

struct SimConfig {
  std::int64_t N = 1;
  double horizon = 0.0;  // minutes
  FailureModel failure_model = FailureModel::exponential(1.0);
  CostParams costs{};
  SimPolicy policy = PredictedCheckpointPolicy{};
  std::uint64_t seed = 0;
  int replications = 1;
  // 0 picks std::thread::hardware_concurrency().
  unsigned threads = 1;
};

struct SimResult {
  // Mean over successful replications, in machine-equivalents. For the
  // periodic policy this is the job's yield times 2^k.
  double mean_throughput = 0.0;
  double ci95_halfwidth = 0.0;
  int replications = 0;
  int failed_replications = 0;
  double run_failure_rate = 0.0;  // replications that ran out of spares
  // Fraction of machine-time spent migrating/rebooting (migration policy).
  double unavailable_fraction = 0.0;
  // Periodic policy only.
  double measured_waste = 0.0;
  double mean_work_lost_per_failure = 0.0;
  std::int64_t failures = 0;  // summed over replications
  std::vector<double> replication_throughputs;  // successful ones, in order
  std::vector<std::string> warnings;
};

// Deterministic: identical configs give bit-identical results, regardless of
// the thread count.
SimResult simulate(const SimConfig& config);

}  // namespace ckmig
