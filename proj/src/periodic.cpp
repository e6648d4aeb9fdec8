#include "ckmig/periodic.hpp"

#include <algorithm>
#include <cmath>

#include "ckmig/errors.hpp"

namespace ckmig {
namespace {

void check_common(double C, double mtbf) {
  detail::require(C >= 0.0, "C must be non-negative");
  detail::require(mtbf > 0.0 && std::isfinite(mtbf), "MTBF must be positive");
}

void check_recovery(double R, double D) {
  detail::require(R >= 0.0 && D >= 0.0, "R and D must be non-negative");
}

double clamped_yield_weight(double C, double mu, double R, double D) {
  return 1.0 - min_waste_extended(C, mu, R, D).clamped;
}

}  // namespace

double waste_young(double C, double T, double mtbf) {
  check_common(C, mtbf);
  detail::require(T > 0.0, "checkpoint period T must be positive");
  return C / T + T / (2.0 * mtbf);
}

double waste_extended(double C, double T, double mtbf, double R, double D) {
  check_common(C, mtbf);
  check_recovery(R, D);
  detail::require(T > 0.0, "checkpoint period T must be positive");
  return C / T + (T / 2.0 + R + D) / mtbf;
}

double optimal_period(double C, double mtbf) {
  check_common(C, mtbf);
  return std::sqrt(2.0 * C * mtbf);
}

MinWaste min_waste_extended(double C, double mtbf, double R, double D) {
  check_common(C, mtbf);
  check_recovery(R, D);
  const double w = (R + D) / mtbf + std::sqrt(2.0 * C / mtbf);
  return {w, std::min(w, 1.0)};
}

FeasibilityThreshold mtbf_feasibility_threshold(double C, double R, double D) {
  detail::require(C >= 0.0, "C must be non-negative");
  check_recovery(R, D);
  const double rd = R + D;
  if (rd == 0.0) {
    detail::require(C > 0.0, "with C = R = D = 0 the waste is zero for every MTBF");
    // sqrt(2C/mu) <= 1  <=>  mu >= 2C
    const double mu_min = 2.0 * C;
    return {1.0 / std::sqrt(mu_min), mu_min};
  }
  // Positive root of (R + D) nu^2 + sqrt(2C) nu - 1 = 0.
  const double b = std::sqrt(2.0 * C);
  const double nu_b = (-b + std::sqrt(2.0 * C + 4.0 * rd)) / (2.0 * rd);
  return {nu_b, 1.0 / (nu_b * nu_b)};
}

double yield_independent(std::int64_t N, double C, double mtbf, double R, double D) {
  detail::require(N >= 1, "N must be >= 1");
  return static_cast<double>(N) * clamped_yield_weight(C, mtbf, R, D);
}

double yield_parallel(const JobMix& mix, double C, double mtbf, double R, double D) {
  return yield_parallel(mix, C, FailureModel::exponential(mtbf), R, D);
}

double yield_parallel(const JobMix& mix, double C, const FailureModel& model,
                      double R, double D, WeibullGroupFormula formula) {
  detail::require(mix.beta.size() == static_cast<std::size_t>(mix.Z) + 1,
                  "malformed job mix");
  double rho = 0.0;
  for (int k = 0; k <= mix.Z; ++k) {
    const double mu_k = mtbf_of_group(model, k, formula);
    rho += clamped_yield_weight(C, mu_k, R, D) * std::ldexp(1.0, k) * mix.beta[k];
  }
  return rho;
}

}  // namespace ckmig
