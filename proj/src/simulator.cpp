#include "ckmig/simulator.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <queue>
#include <set>
#include <thread>
#include <tuple>

#include <boost/math/distributions/students_t.hpp>

#include "ckmig/errors.hpp"
#include "ckmig/rng.hpp"

namespace ckmig {
namespace {

struct ReplicationOutcome {
  bool failed = false;
  double throughput = 0.0;
  double unavailable_fraction = 0.0;
  double waste = 0.0;
  double work_lost = 0.0;
  std::int64_t failures = 0;
};

// Min-heap entry ordered by (time, machine id).
struct Event {
  double time;
  std::int64_t machine;
  bool operator>(const Event& o) const {
    return std::tie(time, machine) > std::tie(o.time, o.machine);
  }
};
using EventQueue = std::priority_queue<Event, std::vector<Event>, std::greater<>>;

ReplicationOutcome run_predicted_checkpoint(const SimConfig& cfg, RngStream& rng) {
  const double outage = cfg.costs.C + cfg.costs.D + cfg.costs.R;
  const double H = cfg.horizon;
  const double mean_up = cfg.failure_model.mean();
  const double p_down = outage / (mean_up + outage);
  ReplicationOutcome out;
  double useful = 0.0;
  for (std::int64_t machine = 0; machine < cfg.N; ++machine) {
    double t = 0.0;
    // Start from the stationary alternating renewal state.
    if (outage > 0.0 && rng.uniform() < p_down) t = rng.uniform() * outage;
    while (t < H) {
      const double up = cfg.failure_model.sample(rng);
      useful += std::min(up, H - t);
      t += up;
      if (t >= H) break;
      ++out.failures;
      t += outage;
    }
  }
  out.throughput = useful / H;
  return out;
}

ReplicationOutcome run_migration(const SimConfig& cfg, std::int64_t spares,
                                 RngStream& rng) {
  const double M = cfg.costs.M;
  const double D = cfg.costs.D;
  const double outage = M + D;
  const double H = cfg.horizon;
  const std::int64_t N = cfg.N;
  const std::int64_t slots = N - spares;
  constexpr std::int64_t kSpare = -1;
  constexpr std::int64_t kDown = -2;

  ReplicationOutcome out;
  std::vector<std::int64_t> role(static_cast<std::size_t>(N), kSpare);
  std::vector<double> slot_lost(static_cast<std::size_t>(slots), 0.0);
  std::vector<double> slot_resume(static_cast<std::size_t>(slots), 0.0);
  std::set<std::int64_t> pool;
  EventQueue failures;   // next predicted failure of each up machine
  EventQueue recoveries;  // end of the M + D outage of each down machine
  double unavailable = 0.0;

  auto suspend = [&](std::int64_t slot, double from, double until) {
    const double start = std::max(from, slot_resume[slot]);
    if (until > start) {
      slot_lost[slot] += std::min(until, H) - std::min(start, H);
      slot_resume[slot] = until;
    }
  };

  // Stationary start: each machine is independently down with probability v.
  const double mean_up = cfg.failure_model.mean();
  const double v = outage / (mean_up + outage);
  std::vector<double> migrating_until;
  std::int64_t down = 0;
  for (std::int64_t machine = 0; machine < N; ++machine) {
    if (outage > 0.0 && rng.uniform() < v) {
      const double residual = rng.uniform() * outage;
      role[machine] = kDown;
      ++down;
      unavailable += std::min(residual, H);
      recoveries.push({residual, machine});
      if (residual > D) migrating_until.push_back(residual - D);
    } else {
      failures.push({cfg.failure_model.sample(rng), machine});
    }
  }
  if (down > spares) {
    out.failed = true;
    return out;
  }
  std::int64_t next_slot = 0;
  for (std::int64_t machine = 0; machine < N; ++machine) {
    if (role[machine] == kDown) continue;
    if (next_slot < slots) {
      role[machine] = next_slot++;
    } else {
      pool.insert(machine);
    }
  }
  if (slots > 0) {
    for (std::size_t i = 0; i < migrating_until.size(); ++i) {
      suspend(static_cast<std::int64_t>(i % static_cast<std::size_t>(slots)), 0.0,
              migrating_until[i]);
    }
  }

  while (true) {
    const bool have_failure = !failures.empty() && failures.top().time < H;
    const bool have_recovery = !recoveries.empty() && recoveries.top().time < H;
    if (!have_failure && !have_recovery) break;
    // Recoveries first on ties so a returning machine can take a migration.
    if (have_recovery &&
        (!have_failure || recoveries.top().time <= failures.top().time)) {
      const Event e = recoveries.top();
      recoveries.pop();
      role[e.machine] = kSpare;
      pool.insert(e.machine);
      failures.push({e.time + cfg.failure_model.sample(rng), e.machine});
      continue;
    }
    const Event e = failures.top();
    failures.pop();
    ++out.failures;
    if (outage == 0.0) {
      // Zero-length outage: the machine is its own replacement.
      failures.push({e.time + cfg.failure_model.sample(rng), e.machine});
      continue;
    }
    const std::int64_t slot = role[e.machine];
    if (slot == kSpare) {
      pool.erase(e.machine);
    } else {
      if (pool.empty()) {
        out.failed = true;
        return out;
      }
      const std::int64_t target = *pool.begin();
      pool.erase(pool.begin());
      role[target] = slot;
      suspend(slot, e.time, e.time + M);
    }
    role[e.machine] = kDown;
    unavailable += std::min(e.time + outage, H) - e.time;
    recoveries.push({e.time + outage, e.machine});
  }

  double useful = 0.0;
  for (double lost : slot_lost) useful += H - lost;
  out.throughput = useful / H;
  out.unavailable_fraction = unavailable / (static_cast<double>(N) * H);
  return out;
}

ReplicationOutcome run_periodic(const SimConfig& cfg, const PeriodicPolicy& policy,
                                RngStream& rng) {
  const double H = cfg.horizon;
  const double T = policy.period;
  const double C = cfg.costs.C;
  const double downtime = cfg.costs.R + cfg.costs.D;
  const double work_per_period = std::max(0.0, T - C);
  const std::int64_t width = std::int64_t{1} << policy.job_size_log2;

  // Processor failure clocks run on execution time; downtime is failure-free.
  EventQueue clocks;
  for (std::int64_t p = 0; p < width; ++p) {
    clocks.push({cfg.failure_model.sample(rng), p});
  }

  auto work_done = [&](double exec) {
    const double periods = std::floor(exec / T);
    return periods * work_per_period + std::min(exec - periods * T, work_per_period);
  };

  ReplicationOutcome out;
  double wall = 0.0;
  double exec = 0.0;  // execution time; a period starts at every restart
  double useful = 0.0;
  while (true) {
    const Event next = clocks.top();
    const double run = next.time - exec;
    if (wall + run >= H) {
      useful += work_done(H - wall);
      break;
    }
    const double completed = std::floor(run / T);
    useful += completed * work_per_period;
    out.work_lost += run - completed * T;
    ++out.failures;
    wall += run + downtime;
    exec = next.time;
    clocks.pop();
    clocks.push({exec + cfg.failure_model.sample(rng), next.machine});
    if (wall >= H) break;
  }
  out.waste = 1.0 - useful / H;
  out.throughput = static_cast<double>(width) * useful / H;
  return out;
}

void validate(const SimConfig& cfg) {
  detail::require(cfg.N >= 1, "N must be >= 1");
  detail::require(cfg.horizon > 0.0 && std::isfinite(cfg.horizon),
                  "horizon must be positive");
  detail::require(cfg.replications >= 1, "replications must be >= 1");
  cfg.costs.validate();
  if (const auto* mig = std::get_if<MigrationPolicy>(&cfg.policy)) {
    detail::require(mig->spares >= 0 && mig->spares <= cfg.N,
                    "spare count m must satisfy 0 <= m <= N");
  }
  if (const auto* per = std::get_if<PeriodicPolicy>(&cfg.policy)) {
    detail::require(per->period > 0.0 && std::isfinite(per->period),
                    "checkpoint period T must be positive");
    detail::require(per->job_size_log2 >= 0 && per->job_size_log2 <= 30,
                    "job size exponent k must be in [0, 30]");
    detail::require((std::int64_t{1} << per->job_size_log2) <= cfg.N,
                    "job of 2^k machines does not fit in N");
  }
}

ReplicationOutcome run_replication(const SimConfig& cfg, int replication) {
  RngStream rng(cfg.seed, static_cast<std::uint64_t>(replication));
  return std::visit(
      [&](const auto& policy) {
        using P = std::decay_t<decltype(policy)>;
        if constexpr (std::is_same_v<P, PredictedCheckpointPolicy>) {
          return run_predicted_checkpoint(cfg, rng);
        } else if constexpr (std::is_same_v<P, MigrationPolicy>) {
          return run_migration(cfg, policy.spares, rng);
        } else {
          return run_periodic(cfg, policy, rng);
        }
      },
      cfg.policy);
}

double ci95_halfwidth(const std::vector<double>& values, double mean) {
  const auto n = values.size();
  if (n < 2) return 0.0;
  double ss = 0.0;
  for (double x : values) ss += (x - mean) * (x - mean);
  const double sd = std::sqrt(ss / static_cast<double>(n - 1));
  const boost::math::students_t dist(static_cast<double>(n - 1));
  return boost::math::quantile(dist, 0.975) * sd / std::sqrt(static_cast<double>(n));
}

}  // namespace

SimResult simulate(const SimConfig& config) {
  validate(config);
  const auto reps = static_cast<std::size_t>(config.replications);
  std::vector<ReplicationOutcome> outcomes(reps);

  unsigned threads = config.threads == 0 ? std::thread::hardware_concurrency() : config.threads;
  threads = std::clamp<unsigned>(threads, 1, static_cast<unsigned>(reps));
  if (threads == 1) {
    for (std::size_t r = 0; r < reps; ++r) {
      outcomes[r] = run_replication(config, static_cast<int>(r));
    }
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> workers;
    workers.reserve(threads);
    for (unsigned w = 0; w < threads; ++w) {
      workers.emplace_back([&] {
        for (std::size_t r = next++; r < reps; r = next++) {
          outcomes[r] = run_replication(config, static_cast<int>(r));
        }
      });
    }
  }

  SimResult result;
  result.replications = config.replications;
  double unavailable = 0.0;
  double waste = 0.0;
  double lost = 0.0;
  for (const auto& o : outcomes) {
    result.failures += o.failures;
    if (o.failed) {
      ++result.failed_replications;
      continue;
    }
    result.replication_throughputs.push_back(o.throughput);
    unavailable += o.unavailable_fraction;
    waste += o.waste;
    lost += o.work_lost;
  }
  result.run_failure_rate =
      static_cast<double>(result.failed_replications) / config.replications;
  const auto ok = result.replication_throughputs.size();
  if (ok > 0) {
    double sum = 0.0;
    for (double x : result.replication_throughputs) sum += x;
    result.mean_throughput = sum / static_cast<double>(ok);
    result.ci95_halfwidth = ci95_halfwidth(result.replication_throughputs, result.mean_throughput);
    result.unavailable_fraction = unavailable / static_cast<double>(ok);
    result.measured_waste = waste / static_cast<double>(ok);
  }
  if (std::holds_alternative<PeriodicPolicy>(config.policy) && result.failures > 0) {
    result.mean_work_lost_per_failure = lost / static_cast<double>(result.failures);
  }

  if (config.horizon < 100.0 * config.failure_model.mean()) {
    result.warnings.push_back("horizon is shorter than 100 x MTBF; estimates may be biased");
  }
  if (const auto* per = std::get_if<PeriodicPolicy>(&config.policy);
      per != nullptr && per->period <= config.costs.C) {
    result.warnings.push_back("period T <= C leaves no time for useful work");
  }
  if (ok == 0) result.warnings.push_back("every replication ran out of spares");
  return result;
}

}  // namespace ckmig
