#include "ckmig/throughput.hpp"

#include <cmath>

#include "ckmig/errors.hpp"

namespace ckmig {
namespace {

void check_mtbf(double mtbf) {
  detail::require(mtbf > 0.0 && std::isfinite(mtbf), "MTBF must be positive");
}

void check_spares(std::int64_t N, std::int64_t m) {
  detail::require(N >= 1, "N must be >= 1");
  detail::require(m >= 0 && m <= N, "spare count m must satisfy 0 <= m <= N");
}

void check_mix(const JobMix& mix) {
  detail::require(mix.machines >= 1 && !mix.beta.empty() &&
                      mix.beta.size() == static_cast<std::size_t>(mix.Z) + 1,
                  "malformed job mix");
}

}  // namespace

void CostParams::validate() const {
  detail::require(C >= 0.0 && R >= 0.0 && D >= 0.0 && M >= 0.0,
                  "costs C, R, D, M must be non-negative");
  detail::require(std::isfinite(C + R + D + M), "costs must be finite");
}

double throughput_checkpoint_sequential(std::int64_t N, double mtbf,
                                        const CostParams& costs) {
  detail::require(N >= 1, "N must be >= 1");
  check_mtbf(mtbf);
  costs.validate();
  const double outage = costs.C + costs.D + costs.R;
  return static_cast<double>(N) * mtbf / (mtbf + outage);
}

double throughput_migration_sequential(std::int64_t N, std::int64_t m,
                                       double mtbf, double M) {
  check_spares(N, m);
  check_mtbf(mtbf);
  detail::require(M >= 0.0, "M must be non-negative");
  return static_cast<double>(N - m) * mtbf / (mtbf + M);
}

double throughput_checkpoint_parallel(const JobMix& mix, const FailureModel& model,
                                      const CostParams& costs,
                                      WeibullGroupFormula formula) {
  check_mix(mix);
  costs.validate();
  const double outage = costs.C + costs.D + costs.R;
  double rho = 0.0;
  for (int k = 0; k <= mix.Z; ++k) {
    const double mu_k = mtbf_of_group(model, k, formula);
    rho += mix.beta[k] * std::ldexp(1.0, k) * mu_k / (mu_k + outage);
  }
  return rho;
}

double throughput_checkpoint_parallel_exponential(const JobMix& mix, double mtbf,
                                                  const CostParams& costs) {
  check_mix(mix);
  check_mtbf(mtbf);
  costs.validate();
  const double outage = costs.C + costs.D + costs.R;
  double rho = 0.0;
  for (int k = 0; k <= mix.Z; ++k) {
    const double width = std::ldexp(1.0, k);
    rho += mix.beta[k] * width * mtbf / (mtbf + width * outage);
  }
  return rho;
}

double throughput_migration_parallel(const JobMix& mix, double mtbf, double M,
                                     std::int64_t m) {
  check_mix(mix);
  check_spares(mix.machines, m);
  check_mtbf(mtbf);
  detail::require(M >= 0.0, "M must be non-negative");
  double rho = 0.0;
  for (int k = 0; k <= mix.Z; ++k) {
    const double width = std::ldexp(1.0, k);
    rho += mix.beta[k] * width * mtbf / (mtbf + width * M);
  }
  const auto N = static_cast<double>(mix.machines);
  return rho * (N - static_cast<double>(m)) / N;
}

double improvement_pct(double rho_m, double rho_cp) {
  if (rho_cp == 0.0) {
    throw UndefinedImprovementError("improvement is undefined for a zero checkpoint throughput");
  }
  detail::require(rho_cp > 0.0 && rho_m >= 0.0, "throughputs must be non-negative");
  return 100.0 * (rho_m - rho_cp) / rho_cp;
}

}  // namespace ckmig
