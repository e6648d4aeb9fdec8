#pragma once

#include <cstdint>

#include "ckmig/failure_models.hpp"
#include "ckmig/job_mix.hpp"

namespace ckmig {

// Checkpoint save C, recovery R, down/reboot D and migration M, in minutes.
struct CostParams {
  double C = 0.0;
  double R = 0.0;
  double D = 0.0;
  double M = 0.0;

  void validate() const;
  // Migrating only pays off when it is cheaper than checkpoint + reboot +
  // recovery. Reported, never enforced.
  bool migration_sensible() const { return M < C + D + R; }
};

struct ThroughputReport {
  double rho_cp = 0.0;  // machine-equivalents
  double rho_m = 0.0;
  std::int64_t spares_m = 0;
  double improvement_pct = 0.0;
};

// N * mu / (mu + C + D + R): every predicted failure costs C + D + R.
double throughput_checkpoint_sequential(std::int64_t N, double mtbf,
                                        const CostParams& costs);

// (N - m) * mu / (mu + M): m machines held as spares, M lost per migration.
double throughput_migration_sequential(std::int64_t N, std::int64_t m,
                                       double mtbf, double M);

// sum_k beta_k 2^k mu_k / (mu_k + C + D + R) with mu_k from `model`.
double throughput_checkpoint_parallel(
    const JobMix& mix, const FailureModel& model, const CostParams& costs,
    WeibullGroupFormula formula = WeibullGroupFormula::Paper);

// Closed form for exponential machines:
// sum_k beta_k 2^k (1/lambda) / (1/lambda + 2^k (C + D + R)).
double throughput_checkpoint_parallel_exponential(const JobMix& mix,
                                                  double mtbf,
                                                  const CostParams& costs);

// (sum_k beta_k 2^k mu / (mu + 2^k M)) * (N - m) / N, with the per-machine
// mu (not mu_k).
double throughput_migration_parallel(const JobMix& mix, double mtbf, double M,
                                     std::int64_t m);

// 100 (rho_m - rho_cp) / rho_cp.
double improvement_pct(double rho_m, double rho_cp);

}  // namespace ckmig
