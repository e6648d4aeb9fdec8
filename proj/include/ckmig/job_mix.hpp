#pragma once

#include <cstdint>
#include <vector>

namespace ckmig {

inline constexpr double kDefaultSequentialFraction = 0.25;

// Steady-state mix of job sizes 2^j, 0 <= j <= Z, that keeps all machines
// busy. beta[j] is the expected number of running jobs of size 2^j; the
// values are expectations and are never rounded.
struct JobMix {
  int Z = 0;
  double p1 = 0.0;
  std::int64_t machines = 0;  // N
  std::vector<double> alpha;  // size-class probabilities, sum to 1
  double K = 0.0;             // expected number of running jobs
  std::vector<double> beta;   // beta[j] = alpha[j] * K
};

// Mix for N = 2^Z machines with sequential-job probability p1.
// K = N / (p1 + (1 - p1)(2N - 2) / Z).
JobMix solve_job_mix(int Z, double p1);

// Mix for an arbitrary machine count: size classes run up to
// Z = floor(log2 N), and K is chosen so that sum_j 2^j beta_j = N exactly.
// Agrees with solve_job_mix when N is a power of two.
JobMix solve_job_mix_for_machines(std::int64_t N, double p1);

}  // namespace ckmig
