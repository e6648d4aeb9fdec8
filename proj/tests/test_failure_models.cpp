#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include <doctest.h>

#include "ckmig/errors.hpp"
#include "ckmig/failure_models.hpp"
#include "ckmig/gamma.hpp"
#include "ckmig/rng.hpp"

using namespace ckmig;

namespace {

double rel_err(double got, double want) { return std::abs(got - want) / std::abs(want); }

}  // namespace

TEST_CASE("gamma_fn matches factorials and reference values") {
  double factorial = 1.0;
  for (int n = 1; n <= 10; ++n) {
    if (n > 1) factorial *= (n - 1);
    CHECK(rel_err(gamma_fn(n), factorial) < 1e-10);
  }
  // Values from a 40-digit arbitrary-precision evaluation.
  CHECK(rel_err(gamma_fn(0.1), 9.513507698668731836) < 1e-12);
  CHECK(rel_err(gamma_fn(0.5), 1.772453850905516027) < 1e-12);
  CHECK(rel_err(gamma_fn(2.5), 1.329340388179137020) < 1e-12);
  CHECK(rel_err(gamma_fn(7.3), 1271.423633663909273) < 1e-12);
  CHECK(rel_err(gamma_fn(12.5), 136843365.4655658572) < 1e-12);
  CHECK(rel_err(gamma_fn(29.9), 6.304174488373751511e30) < 1e-12);
}

TEST_CASE("gamma_fn agrees with std::tgamma on (0, 30]") {
  for (double x = 0.01; x <= 30.0; x += 0.0731) {
    CHECK(rel_err(gamma_fn(x), std::tgamma(x)) < 1e-12);
  }
  CHECK_THROWS_AS(gamma_fn(0.0), DomainError);
  CHECK_THROWS_AS(gamma_fn(-2.0), DomainError);
}

TEST_CASE("exponential group MTBF") {
  CHECK(mtbf_of_group_exponential(1000, 0) == 1000);
  CHECK(mtbf_of_group_exponential(1000, 3) == 125);
  CHECK(mtbf_of_group_exponential(43200, 8) == 168.75);
  for (int k = 0; k < 40; ++k) {
    CHECK(mtbf_of_group_exponential(777.7, k + 1) == mtbf_of_group_exponential(777.7, k) / 2);
  }
  CHECK_THROWS_AS(mtbf_of_group_exponential(0.0, 1), DomainError);
  CHECK_THROWS_AS(mtbf_of_group_exponential(-5.0, 1), DomainError);
  CHECK_THROWS_AS(mtbf_of_group_exponential(10.0, -1), DomainError);
}

TEST_CASE("published Weibull group MTBF formula") {
  CHECK(mtbf_of_group_weibull_paper(1, 1, 0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(rel_err(mtbf_of_group_weibull_paper(100, 1, 1), 50 * std::sqrt(std::numbers::pi)) <
        1e-13);
  CHECK(rel_err(mtbf_of_group_weibull_paper(1, 0.7, 2), 0.8904509535386157132) < 1e-13);
  // Documented disagreement with the exponential result at a = 1, k = 1.
  CHECK(mtbf_of_group_weibull_paper(1, 1, 1) == doctest::Approx(0.886227).epsilon(1e-6));
  CHECK(mtbf_of_group_exponential(1, 1) == 0.5);
  CHECK_THROWS_AS(mtbf_of_group_weibull_paper(0, 1, 0), DomainError);
  CHECK_THROWS_AS(mtbf_of_group_weibull_paper(1, 0, 0), DomainError);
}

TEST_CASE("exact Weibull group MTBF") {
  CHECK(rel_err(mtbf_of_group_weibull_exact(1000, 1, 3), 125) < 1e-12);
  CHECK(rel_err(mtbf_of_group_weibull_exact(1, 2, 2), 0.4431134627263790068) < 1e-13);
  CHECK(rel_err(mtbf_of_group_weibull_exact(1, 0.5, 1), 0.5) < 1e-13);
  for (int k = 0; k <= 20; ++k) {
    for (double mu : {1.0, 1440.0, 43200.0, 518400.0}) {
      CHECK(rel_err(mtbf_of_group_weibull_exact(mu, 1.0, k), mtbf_of_group_exponential(mu, k)) <
            1e-12);
    }
  }
  CHECK_THROWS_AS(mtbf_of_group_weibull_exact(1, -1, 0), DomainError);
}

TEST_CASE("mtbf_of_group dispatches on the model and formula") {
  const auto w = FailureModel::weibull(100, 1);
  CHECK(mtbf_of_group(w, 1, WeibullGroupFormula::Paper) ==
        mtbf_of_group_weibull_paper(100, 1, 1));
  CHECK(mtbf_of_group(w, 1, WeibullGroupFormula::Exact) ==
        mtbf_of_group_weibull_exact(100, 1, 1));
  CHECK(mtbf_of_group(FailureModel::exponential(64), 3) == 8);
  CHECK(rel_err(FailureModel::weibull_with_mean(1440, 0.7).mean(), 1440) < 1e-13);
  CHECK_THROWS_AS(FailureModel::exponential(0), DomainError);
  CHECK_THROWS_AS(FailureModel::weibull(1, 0), DomainError);
}

TEST_CASE("rng streams are reproducible and independent") {
  RngStream a(42, 0), b(42, 0), c(42, 1), d(43, 0);
  bool differs_stream = false, differs_seed = false;
  for (int i = 0; i < 100; ++i) {
    const auto x = a.next_u64();
    CHECK(x == b.next_u64());
    differs_stream |= x != c.next_u64();
    differs_seed |= x != d.next_u64();
  }
  CHECK(differs_stream);
  CHECK(differs_seed);
  RngStream e(7, 3);
  for (int i = 0; i < 10000; ++i) {
    const double u = e.uniform();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
  }
}

TEST_CASE("exponential sampling: mean of 1e6 draws within 1% of the MTBF") {
  const auto model = FailureModel::exponential(1440);
  RngStream rng(2024, 0);
  double sum = 0.0;
  const int n = 1'000'000;
  for (int i = 0; i < n; ++i) sum += model.sample(rng);
  CHECK(rel_err(sum / n, 1440) < 0.01);
}

TEST_CASE("Weibull with shape 1 is distributed as the exponential") {
  // Two-sample Kolmogorov-Smirnov at alpha = 0.001.
  const int n = 20000;
  RngStream r1(5, 0), r2(5, 1);
  const auto weib = FailureModel::weibull(300, 1.0);
  const auto expo = FailureModel::exponential(300);
  std::vector<double> a(n), b(n);
  for (int i = 0; i < n; ++i) {
    a[i] = weib.sample(r1);
    b[i] = expo.sample(r2);
  }
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  double d = 0.0;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] <= b[j]) ++i; else ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / n - static_cast<double>(j) / n));
  }
  const double critical = 1.95 * std::sqrt(2.0 / n);
  CHECK(d < critical);
}

TEST_CASE("minimum of 2^k exponentials has mean mu / 2^k") {
  const int k = 4;
  const double mu = 1000.0;
  const auto model = FailureModel::exponential(mu);
  RngStream rng(99, 0);
  const int trials = 100'000;
  double sum = 0.0, sum_sq = 0.0;
  for (int t = 0; t < trials; ++t) {
    double m = model.sample(rng);
    for (int i = 1; i < (1 << k); ++i) m = std::min(m, model.sample(rng));
    sum += m;
    sum_sq += m * m;
  }
  const double mean = sum / trials;
  const double expected = mtbf_of_group_exponential(mu, k);
  CHECK(rel_err(mean, expected) < 0.02);
  const double sd = std::sqrt(sum_sq / trials - mean * mean);
  const double half = 1.96 * sd / std::sqrt(static_cast<double>(trials));
  CHECK(std::abs(mean - expected) <= half);
}
