#include "ckmig/spares.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "ckmig/errors.hpp"

namespace ckmig {
namespace {

constexpr double kNegligible = 1e-17;

void check_params(const AvailabilityParams& p) {
  detail::require(p.u >= 0.0 && p.u <= 1.0 && p.v >= 0.0 && p.v <= 1.0,
                  "availability probabilities must lie in [0, 1]");
  detail::require(std::abs(p.u + p.v - 1.0) <= 1e-12,
                  "availability probabilities must satisfy u + v = 1");
}

void check_counts(std::int64_t N, std::int64_t m) {
  detail::require(N >= 1, "N must be >= 1");
  detail::require(m >= 0 && m <= N, "spare count m must satisfy 0 <= m <= N");
}

// log(n!) - log(sqrt(2 pi n) (n/e)^n)
double stirling_error(double n) {
  constexpr double s0 = 1.0 / 12.0;
  constexpr double s1 = 1.0 / 360.0;
  constexpr double s2 = 1.0 / 1260.0;
  constexpr double s3 = 1.0 / 1680.0;
  constexpr double s4 = 1.0 / 1188.0;
  if (n <= 15.0) {
    if (n == 0.0) return 0.0;
    return std::lgamma(n + 1.0) - (n + 0.5) * std::log(n) + n -
           0.5 * std::log(2.0 * std::numbers::pi);
  }
  const double nn = n * n;
  if (n > 500.0) return (s0 - s1 / nn) / n;
  if (n > 80.0) return (s0 - (s1 - s2 / nn) / nn) / n;
  if (n > 35.0) return (s0 - (s1 - (s2 - s3 / nn) / nn) / nn) / n;
  return (s0 - (s1 - (s2 - (s3 - s4 / nn) / nn) / nn) / nn) / n;
}

// x log(x / np) + np - x, without cancellation when x is close to np.
double deviance_term(double x, double np) {
  if (std::abs(x - np) < 0.1 * (x + np)) {
    double v = (x - np) / (x + np);
    double s = (x - np) * v;
    double ej = 2.0 * x * v;
    v *= v;
    for (int j = 1; j < 1000; ++j) {
      ej *= v;
      const double next = s + ej / (2 * j + 1);
      if (next == s) return next;
      s = next;
    }
    return s;
  }
  return x * std::log(x / np) + np - x;
}

double binomial_pmf(std::int64_t k, std::int64_t N, double p, double q) {
  return std::exp(detail::log_binomial_pmf(k, N, p, q));
}

}  // namespace

namespace detail {

double log_binomial_pmf(std::int64_t k, std::int64_t N, double p, double q) {
  constexpr double neg_inf = -std::numeric_limits<double>::infinity();
  if (k < 0 || k > N) return neg_inf;
  if (p == 0.0) return k == 0 ? 0.0 : neg_inf;
  if (q == 0.0) return k == N ? 0.0 : neg_inf;
  const double n = static_cast<double>(N);
  const double x = static_cast<double>(k);
  if (k == 0) {
    return p < 0.1 ? -deviance_term(n, n * q) - n * p : n * std::log(q);
  }
  if (k == N) {
    return q < 0.1 ? -deviance_term(n, n * p) - n * q : n * std::log(p);
  }
  const double lc = stirling_error(n) - stirling_error(x) - stirling_error(n - x) -
                    deviance_term(x, n * p) - deviance_term(n - x, n * q);
  const double lf = std::log(2.0 * std::numbers::pi) + std::log(x) + std::log1p(-x / n);
  return lc - 0.5 * lf;
}

}  // namespace detail

AvailabilityParams AvailabilityParams::from_v(double v) {
  detail::require(v >= 0.0 && v <= 1.0, "v must lie in [0, 1]");
  return {1.0 - v, v};
}

AvailabilityParams availability_params(double mtbf, double M, double D) {
  detail::require(mtbf > 0.0 && std::isfinite(mtbf), "MTBF must be positive");
  detail::require(M >= 0.0 && D >= 0.0, "M and D must be non-negative");
  const double cycle = mtbf + M + D;
  const double v = (M + D) / cycle;
  return {1.0 - v, v};
}

std::string_view to_string(SpareMethod method) {
  return method == SpareMethod::Exact ? "exact" : "lower-bound";
}

SpareMethod parse_spare_method(std::string_view text) {
  if (text == "exact") return SpareMethod::Exact;
  if (text == "lower-bound" || text == "bound") return SpareMethod::LowerBound;
  throw DomainError("unknown spare method '" + std::string(text) + "'");
}

double success_probability(std::int64_t N, std::int64_t m,
                           const AvailabilityParams& params) {
  check_counts(N, m);
  check_params(params);
  const double p = params.v;
  const double q = params.u;
  if (m == N || p == 0.0) return 1.0;
  if (q == 0.0) return 0.0;

  const double ratio_up = p / q;    // pmf(k+1)/pmf(k) = ratio_up (N-k)/(k+1)
  const double ratio_down = q / p;  // pmf(k-1)/pmf(k) = ratio_down k/(N-k+1)
  const auto mode = static_cast<std::int64_t>(
      std::floor((static_cast<double>(N) + 1.0) * p));

  if (m < mode) {
    // Lower tail, walking down from m; terms decrease monotonically.
    double term = binomial_pmf(m, N, p, q);
    double sum = 0.0;
    for (std::int64_t k = m; k >= 0 && term > 0.0; --k) {
      sum += term;
      if (term < kNegligible * sum) break;
      term *= ratio_down * static_cast<double>(k) / static_cast<double>(N - k + 1);
    }
    return std::min(sum, 1.0);
  }
  // Upper tail above m, walking up; terms decrease monotonically.
  double term = binomial_pmf(m + 1, N, p, q);
  double tail = 0.0;
  for (std::int64_t k = m + 1; k <= N && term > 0.0; ++k) {
    tail += term;
    if (term < kNegligible * tail) break;
    term *= ratio_up * static_cast<double>(N - k) / static_cast<double>(k + 1);
  }
  return std::max(0.0, 1.0 - tail);
}

namespace {

// log of (N/k)^k u^(N-k) v^k, with the k = 0 term equal to u^N.
double log_bound_term(std::int64_t k, std::int64_t N, double log_u, double log_v) {
  const double n = static_cast<double>(N);
  const double x = static_cast<double>(k);
  double value = (n - x) * log_u;
  if (k > 0) value += x * (std::log(n / x) + log_v);
  return value;
}

}  // namespace

double success_probability_lower_bound(std::int64_t N, std::int64_t m,
                                       const AvailabilityParams& params) {
  check_counts(N, m);
  check_params(params);
  if (params.v == 0.0) return 1.0;
  if (params.u == 0.0) return m == N ? 1.0 : 0.0;
  const double log_u = std::log1p(-params.v);
  const double log_v = std::log(params.v);
  double sum = 0.0;
  double previous = 0.0;
  for (std::int64_t k = 0; k <= m; ++k) {
    const double term = std::exp(log_bound_term(k, N, log_u, log_v));
    sum += term;
    // Terms are log-concave in k: once decreasing and negligible, stop.
    if (k > 0 && term < previous && term < kNegligible * sum) break;
    previous = term;
  }
  return std::min(sum, 1.0);
}

namespace {

SpareSizing min_spares_exact(std::int64_t N, const AvailabilityParams& params,
                             double epsilon) {
  const double target = 1.0 - epsilon;
  auto ok = [&](std::int64_t m) { return success_probability(N, m, params) >= target; };

  std::int64_t hi = std::min<std::int64_t>(
      N, static_cast<std::int64_t>(std::ceil(static_cast<double>(N) * params.v)));
  std::int64_t lo = -1;  // largest m known to fail; -1 means "none"
  if (ok(hi)) {
    for (std::int64_t step = 1;; step *= 2) {
      const std::int64_t probe = hi - step;
      if (probe < 0) break;
      if (!ok(probe)) {
        lo = probe;
        break;
      }
      hi = probe;
    }
  } else {
    lo = hi;
    for (std::int64_t step = 1;; step *= 2) {
      const std::int64_t probe = std::min(N, lo + step);
      if (ok(probe)) {
        hi = probe;
        break;
      }
      lo = probe;
    }
  }
  // Invariant: ok(hi), !ok(lo) (or lo = -1).
  while (hi - lo > 1) {
    const std::int64_t mid = lo + (hi - lo) / 2;
    if (ok(mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return {hi, success_probability(N, hi, params), epsilon, SpareMethod::Exact};
}

SpareSizing min_spares_lower_bound(std::int64_t N, const AvailabilityParams& params,
                                   double epsilon) {
  const double target = 1.0 - epsilon;
  if (params.v == 0.0) return {0, 1.0, epsilon, SpareMethod::LowerBound};
  if (params.u == 0.0) return {N, 1.0, epsilon, SpareMethod::LowerBound};
  const double log_u = std::log1p(-params.v);
  const double log_v = std::log(params.v);
  double sum = 0.0;
  double previous = 0.0;
  for (std::int64_t k = 0; k <= N; ++k) {
    const double term = std::exp(log_bound_term(k, N, log_u, log_v));
    sum += term;
    if (sum >= target) {
      return {k, std::min(sum, 1.0), epsilon, SpareMethod::LowerBound};
    }
    if (k > 0 && term < previous) {
      // Past the peak the term ratio is non-increasing, so the remaining tail
      // is bounded by a geometric series.
      const double r = term / previous;
      if (r < 1.0 && sum + term * r / (1.0 - r) < target) break;
    }
    previous = term;
  }
  throw InfeasibleError("no feasible m under the lower bound: sum_k (N/k)^k u^(N-k) v^k "
                        "stays below 1 - epsilon = " + std::to_string(target) +
                        " (N = " + std::to_string(N) + ", v = " + std::to_string(params.v) +
                        ")");
}

}  // namespace

SpareSizing min_spares(std::int64_t N, const AvailabilityParams& params,
                       double epsilon, SpareMethod method) {
  detail::require(N >= 1, "N must be >= 1");
  detail::require(epsilon > 0.0 && epsilon < 1.0, "epsilon must lie in (0, 1)");
  check_params(params);
  return method == SpareMethod::Exact ? min_spares_exact(N, params, epsilon)
                                      : min_spares_lower_bound(N, params, epsilon);
}

}  // namespace ckmig
