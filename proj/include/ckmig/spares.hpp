#pragma once

#include <cstdint>
#include <string_view>

namespace ckmig {

// Per-machine probabilities of being up (u) or migrating/rebooting (v).
struct AvailabilityParams {
  double u = 1.0;
  double v = 0.0;

  // Direct construction from v, for tests and custom studies.
  static AvailabilityParams from_v(double v);
};

AvailabilityParams availability_params(double mtbf, double M, double D);

enum class SpareMethod { Exact, LowerBound };

std::string_view to_string(SpareMethod method);
SpareMethod parse_spare_method(std::string_view text);

struct SpareSizing {
  std::int64_t m = 0;
  double achieved_success = 1.0;
  double epsilon = 0.0;
  SpareMethod method = SpareMethod::Exact;
};

// P[X <= m] for X ~ Binomial(N, v): the probability that at most m machines
// are down at a given instant. Absolute error is ~1e-14 up to N = 1e6.
double success_probability(std::int64_t N, std::int64_t m,
                           const AvailabilityParams& params);

// sum_{k<=m} (N/k)^k u^(N-k) v^k, with the k = 0 term taken as u^N.
// Never exceeds success_probability.
double success_probability_lower_bound(std::int64_t N, std::int64_t m,
                                       const AvailabilityParams& params);

// Smallest m with success(m) >= 1 - epsilon under the chosen method.
// Throws InfeasibleError when the lower bound cannot reach 1 - epsilon.
SpareSizing min_spares(std::int64_t N, const AvailabilityParams& params,
                       double epsilon, SpareMethod method = SpareMethod::Exact);

namespace detail {

// log of the Binomial(N, p) pmf at k, computed with Loader's saddle-point
// expansion so that no binomial coefficient is ever formed.
double log_binomial_pmf(std::int64_t k, std::int64_t N, double p, double q);

}  // namespace detail
}  // namespace ckmig
