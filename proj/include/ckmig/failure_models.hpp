#pragma once

#include <variant>

#include "ckmig/rng.hpp"

namespace ckmig {

struct Exponential {
  double mtbf;  // minutes
};

struct Weibull {
  double scale;  // minutes
  double shape;
};

// Per-machine failure-time distribution.
class FailureModel {
 public:
  static FailureModel exponential(double mtbf);
  static FailureModel weibull(double scale, double shape);
  // Weibull with the given shape whose mean equals `mtbf`.
  static FailureModel weibull_with_mean(double mtbf, double shape);

  const std::variant<Exponential, Weibull>& variant() const { return model_; }
  bool is_exponential() const {
    return std::holds_alternative<Exponential>(model_);
  }

  // Mean time to failure of one machine.
  double mean() const;
  double sample(RngStream& rng) const;

 private:
  explicit FailureModel(std::variant<Exponential, Weibull> m) : model_(m) {}
  std::variant<Exponential, Weibull> model_;
};

// Which group-MTBF formula downstream code uses for Weibull machines.
enum class WeibullGroupFormula { Paper, Exact };

// Mean time to the first failure among 2^k exponential machines: mtbf / 2^k.
double mtbf_of_group_exponential(double mtbf, int k);

// scale * Gamma(1 + 1/(shape * 2^k)), the group MTBF as published. Note this
// does not reduce to the exponential result at shape = 1 (k >= 1).
double mtbf_of_group_weibull_paper(double scale, double shape, int k);

// scale * (2^k)^(-1/shape) * Gamma(1 + 1/shape): mean of the minimum of 2^k
// i.i.d. Weibull(scale, shape) variables.
double mtbf_of_group_weibull_exact(double scale, double shape, int k);

// Group MTBF for a job on 2^k machines under `model`.
double mtbf_of_group(const FailureModel& model, int k,
                     WeibullGroupFormula formula = WeibullGroupFormula::Paper);

}  // namespace ckmig
