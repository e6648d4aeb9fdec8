#include "ckmig/job_mix.hpp"

#include <bit>
#include <cmath>

#include "ckmig/errors.hpp"

namespace ckmig {
namespace {

JobMix build_mix(int Z, double p1, std::int64_t N) {
  detail::require(p1 >= 0.0 && p1 <= 1.0, "p1 must be a probability in [0, 1]");
  detail::require(Z >= 0 && Z <= 62, "Z must be in [0, 62]");
  if (Z == 0 && p1 < 1.0) {
    throw DomainError("Z = 0 leaves no parallel job sizes; p1 must be 1");
  }
  JobMix mix;
  mix.Z = Z;
  mix.p1 = p1;
  mix.machines = N;
  mix.alpha.assign(static_cast<std::size_t>(Z) + 1, 0.0);
  mix.alpha[0] = p1;
  for (int j = 1; j <= Z; ++j) mix.alpha[j] = (1.0 - p1) / Z;

  // N / K = sum_j 2^j alpha_j; the parallel part is (1 - p1)/Z * (2^(Z+1) - 2).
  double machines_per_job = p1;
  if (Z > 0) {
    machines_per_job += (1.0 - p1) / Z * (std::ldexp(2.0, Z) - 2.0);
  }
  mix.K = static_cast<double>(N) / machines_per_job;
  mix.beta.resize(mix.alpha.size());
  for (std::size_t j = 0; j < mix.alpha.size(); ++j) {
    mix.beta[j] = mix.alpha[j] * mix.K;
  }
  return mix;
}

}  // namespace

JobMix solve_job_mix(int Z, double p1) {
  detail::require(Z >= 0 && Z <= 62, "Z must be in [0, 62]");
  return build_mix(Z, p1, std::int64_t{1} << Z);
}

JobMix solve_job_mix_for_machines(std::int64_t N, double p1) {
  detail::require(N >= 1, "N must be >= 1");
  const int Z = std::bit_width(static_cast<std::uint64_t>(N)) - 1;
  return build_mix(Z, p1, N);
}

}  // namespace ckmig
