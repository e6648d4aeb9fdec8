#include <cmath>
#include <random>

#include <doctest.h>

#include "ckmig/errors.hpp"
#include "ckmig/throughput.hpp"

using namespace ckmig;

namespace {

const CostParams kToday{25, 25, 2.5, 1};

double rel_err(double got, double want) { return std::abs(got - want) / std::abs(want); }

}  // namespace

TEST_CASE("cost parameters") {
  CHECK(kToday.migration_sensible());
  CHECK_FALSE(CostParams{0.05, 0.05, 0.25, 1}.migration_sensible());
  CHECK_THROWS_AS((CostParams{-1, 0, 0, 0}.validate()), DomainError);
}

TEST_CASE("sequential checkpoint throughput") {
  CHECK(throughput_checkpoint_sequential(100, 1440, kToday) ==
        doctest::Approx(96.48241206030151).epsilon(1e-14));
  CHECK(throughput_checkpoint_sequential(100, 1440, {}) == 100);
  CHECK(throughput_checkpoint_sequential(1, 3, {1, 1, 1, 0}) == 0.5);
  CHECK_THROWS_AS(throughput_checkpoint_sequential(0, 1440, kToday), DomainError);
  CHECK_THROWS_AS(throughput_checkpoint_sequential(10, 0, kToday), DomainError);
}

TEST_CASE("sequential migration throughput") {
  CHECK(throughput_migration_sequential(100, 0, 1440, 0) == 100);
  CHECK(throughput_migration_sequential(100, 5, 1440, 1) ==
        doctest::Approx(94.93407356002776).epsilon(1e-14));
  CHECK(throughput_migration_sequential(100, 100, 1440, 1) == 0);
  CHECK_THROWS_AS(throughput_migration_sequential(100, 101, 1440, 1), DomainError);
}

TEST_CASE("parallel checkpoint throughput") {
  // p1 = 1 reduces to the sequential formula.
  for (int Z : {1, 4, 10, 20}) {
    const JobMix seq = solve_job_mix(Z, 1.0);
    CHECK(rel_err(throughput_checkpoint_parallel(seq, FailureModel::exponential(1440), kToday),
                  throughput_checkpoint_sequential(seq.machines, 1440, kToday)) < 1e-12);
  }
  // Z = 1, p1 = 0.5, mu = 100, C + D + R = 1, N = 2: beta_0 = beta_1 = 2/3.
  const JobMix mix = solve_job_mix(1, 0.5);
  const double expected = (2.0 / 3.0) * (100.0 / 101.0) + (4.0 / 3.0) * (50.0 / 51.0);
  CHECK(throughput_checkpoint_parallel(mix, FailureModel::exponential(100), {1, 0, 0, 0}) ==
        doctest::Approx(expected).epsilon(1e-14));
  CHECK(expected == doctest::Approx(1.9672555).epsilon(1e-7));

  const JobMix big = solve_job_mix(12, 0.25);
  CHECK(rel_err(throughput_checkpoint_parallel(big, FailureModel::exponential(777), {}),
                4096.0) < 1e-12);
}

TEST_CASE("parallel checkpoint: exponential specialization equals the generic form") {
  for (int Z : {1, 8, 14, 20}) {
    for (double mu : {1440.0, 43200.0, 518400.0}) {
      const JobMix mix = solve_job_mix(Z, 0.25);
      CHECK(rel_err(throughput_checkpoint_parallel_exponential(mix, mu, kToday),
                    throughput_checkpoint_parallel(mix, FailureModel::exponential(mu), kToday)) <
            1e-12);
    }
  }
}

TEST_CASE("parallel checkpoint under Weibull uses the selected group formula") {
  const JobMix mix = solve_job_mix(6, 0.25);
  const auto model = FailureModel::weibull(1440, 1.0);
  const double exact =
      throughput_checkpoint_parallel(mix, model, kToday, WeibullGroupFormula::Exact);
  CHECK(rel_err(exact, throughput_checkpoint_parallel_exponential(mix, 1440, kToday)) < 1e-12);
  const double paper = throughput_checkpoint_parallel(mix, model, kToday);
  CHECK(paper != doctest::Approx(exact));
}

TEST_CASE("parallel migration throughput") {
  for (int Z : {1, 8, 20}) {
    const JobMix mix = solve_job_mix(Z, 0.25);
    CHECK(rel_err(throughput_migration_parallel(mix, 1440, 0, 0),
                  static_cast<double>(mix.machines)) < 1e-12);
    const JobMix seq = solve_job_mix(Z, 1.0);
    CHECK(rel_err(throughput_migration_parallel(seq, 1440, 1, 1),
                  throughput_migration_sequential(seq.machines, 1, 1440, 1)) < 1e-12);
  }
  const JobMix mix = solve_job_mix(1, 0.5);
  CHECK(throughput_migration_parallel(mix, 100, 1, 0) ==
        doctest::Approx((2.0 / 3.0) * (100.0 / 101.0) + (4.0 / 3.0) * (100.0 / 102.0))
            .epsilon(1e-14));
  CHECK(throughput_migration_parallel(mix, 100, 1, 0) == doctest::Approx(1.96726).epsilon(1e-5));
  CHECK_THROWS_AS(throughput_migration_parallel(mix, 100, 1, 3), DomainError);
}

TEST_CASE("improvement percentage") {
  CHECK(improvement_pct(5, 5) == 0);
  CHECK(improvement_pct(1.1, 1.0) == doctest::Approx(10.0).epsilon(1e-12));
  const double rho_cp = throughput_checkpoint_sequential(100, 1440, kToday);
  const double rho_m = throughput_migration_sequential(100, 5, 1440, 1);
  CHECK(improvement_pct(rho_m, rho_cp) == doctest::Approx(-1.60479).epsilon(1e-5));
  CHECK_THROWS_AS(improvement_pct(1, 0), UndefinedImprovementError);
}

TEST_CASE("property: throughputs lie in [0, N] and are monotone in costs") {
  std::mt19937_64 gen(17);
  std::uniform_real_distribution<double> cost(0.0, 50.0);
  std::uniform_real_distribution<double> mu_dist(10.0, 600'000.0);
  std::uniform_int_distribution<int> z_dist(1, 20);
  for (int i = 0; i < 300; ++i) {
    const CostParams c{cost(gen), cost(gen), cost(gen), cost(gen)};
    const double mu = mu_dist(gen);
    const JobMix mix = solve_job_mix(z_dist(gen), 0.25);
    const auto N = mix.machines;
    const auto model = FailureModel::exponential(mu);
    const std::int64_t m = N / 7;

    const double seq_cp = throughput_checkpoint_sequential(N, mu, c);
    const double par_cp = throughput_checkpoint_parallel(mix, model, c);
    const double seq_m = throughput_migration_sequential(N, m, mu, c.M);
    const double par_m = throughput_migration_parallel(mix, mu, c.M, m);
    for (double rho : {seq_cp, par_cp, seq_m, par_m}) {
      CHECK(rho >= 0.0);
      CHECK(rho <= static_cast<double>(N) * (1 + 1e-12));
    }
    for (int which = 0; which < 3; ++which) {
      CostParams more = c;
      (which == 0 ? more.C : which == 1 ? more.D : more.R) += 1.0;
      CHECK(throughput_checkpoint_sequential(N, mu, more) < seq_cp);
      CHECK(throughput_checkpoint_parallel(mix, model, more) < par_cp);
    }
    CHECK(throughput_migration_sequential(N, m, mu, c.M + 1) < seq_m);
    CHECK(throughput_migration_parallel(mix, mu, c.M + 1, m) < par_m);
    CHECK(throughput_migration_sequential(N, m + 1, mu, c.M) < seq_m);
    CHECK(throughput_migration_parallel(mix, mu, c.M, m + 1) < par_m);
  }
}
