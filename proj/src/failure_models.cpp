#include "ckmig/failure_models.hpp"

#include <cmath>

#include "ckmig/errors.hpp"
#include "ckmig/gamma.hpp"

namespace ckmig {
namespace {

void check_group_args(double scale, double shape, int k) {
  detail::require(scale > 0.0 && std::isfinite(scale), "scale must be positive");
  detail::require(shape > 0.0 && std::isfinite(shape), "shape must be positive");
  detail::require(k >= 0, "group size exponent k must be >= 0");
}

}  // namespace

FailureModel FailureModel::exponential(double mtbf) {
  detail::require(mtbf > 0.0 && std::isfinite(mtbf), "MTBF must be positive");
  return FailureModel(Exponential{mtbf});
}

FailureModel FailureModel::weibull(double scale, double shape) {
  check_group_args(scale, shape, 0);
  return FailureModel(Weibull{scale, shape});
}

FailureModel FailureModel::weibull_with_mean(double mtbf, double shape) {
  detail::require(mtbf > 0.0 && std::isfinite(mtbf), "MTBF must be positive");
  detail::require(shape > 0.0, "shape must be positive");
  return weibull(mtbf / gamma_fn(1.0 + 1.0 / shape), shape);
}

double FailureModel::mean() const {
  if (const auto* e = std::get_if<Exponential>(&model_)) return e->mtbf;
  const auto& w = std::get<Weibull>(model_);
  return w.scale * gamma_fn(1.0 + 1.0 / w.shape);
}

double FailureModel::sample(RngStream& rng) const {
  const double u = rng.uniform_open0();
  if (const auto* e = std::get_if<Exponential>(&model_)) {
    return -e->mtbf * std::log(u);
  }
  const auto& w = std::get<Weibull>(model_);
  return w.scale * std::pow(-std::log(u), 1.0 / w.shape);
}

double mtbf_of_group_exponential(double mtbf, int k) {
  detail::require(mtbf > 0.0 && std::isfinite(mtbf), "MTBF must be positive");
  detail::require(k >= 0, "group size exponent k must be >= 0");
  return std::ldexp(mtbf, -k);
}

double mtbf_of_group_weibull_paper(double scale, double shape, int k) {
  check_group_args(scale, shape, k);
  return scale * gamma_fn(1.0 + 1.0 / std::ldexp(shape, k));
}

double mtbf_of_group_weibull_exact(double scale, double shape, int k) {
  check_group_args(scale, shape, k);
  // (2^k)^(-1/a) = 2^(-k/a)
  return scale * std::exp2(-static_cast<double>(k) / shape) *
         gamma_fn(1.0 + 1.0 / shape);
}

double mtbf_of_group(const FailureModel& model, int k,
                     WeibullGroupFormula formula) {
  if (const auto* e = std::get_if<Exponential>(&model.variant())) {
    return mtbf_of_group_exponential(e->mtbf, k);
  }
  const auto& w = std::get<Weibull>(model.variant());
  return formula == WeibullGroupFormula::Paper
             ? mtbf_of_group_weibull_paper(w.scale, w.shape, k)
             : mtbf_of_group_weibull_exact(w.scale, w.shape, k);
}

}  // namespace ckmig
