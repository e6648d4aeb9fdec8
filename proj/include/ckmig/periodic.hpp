#pragma once

#include "ckmig/failure_models.hpp"
#include "ckmig/job_mix.hpp"

namespace ckmig {

// Periodic checkpointing without prediction. T is the full period (work plus
// one checkpoint of length C).

// C/T + T/(2 mu)
double waste_young(double C, double T, double mtbf);

// C/T + (T/2 + R + D)/mu
double waste_extended(double C, double T, double mtbf, double R, double D);

// sqrt(2 C mu); minimizes both waste expressions.
double optimal_period(double C, double mtbf);

struct MinWaste {
  double unclamped = 0.0;  // (R + D)/mu + sqrt(2C/mu)
  double clamped = 0.0;    // min(unclamped, 1)
};

MinWaste min_waste_extended(double C, double mtbf, double R, double D);

// Minimum waste stays <= 1 iff 1/sqrt(mu) <= nu_b, i.e. mu >= mu_min.
struct FeasibilityThreshold {
  double nu_b = 0.0;    // 1/sqrt(minutes)
  double mu_min = 0.0;  // minutes
};

// For R + D = 0 the quadratic degenerates; then mu_min = 2C.
FeasibilityThreshold mtbf_feasibility_threshold(double C, double R, double D);

// N (1 - min(W_min, 1)) for independent sequential jobs.
double yield_independent(std::int64_t N, double C, double mtbf, double R,
                         double D);

// sum_k (1 - min(W_min(k), 1)) 2^k beta_k with mu_k = mu / 2^k.
double yield_parallel(const JobMix& mix, double C, double mtbf, double R,
                      double D);

// Same, with mu_k taken from an arbitrary per-machine failure model.
double yield_parallel(const JobMix& mix, double C, const FailureModel& model,
                      double R, double D,
                      WeibullGroupFormula formula = WeibullGroupFormula::Paper);

}  // namespace ckmig
