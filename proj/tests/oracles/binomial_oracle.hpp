#pragma once

// Independent reference implementations of the binomial CDF used to check
// the production spare-sizing code. None of this shares code with src/.

#include <cstdint>

#include <boost/math/distributions/binomial.hpp>
#include <boost/math/distributions/normal.hpp>
#include <boost/multiprecision/cpp_int.hpp>

namespace oracle {

using Rational = boost::multiprecision::cpp_rational;

inline Rational binomial_coefficient(int n, int k) {
  Rational c = 1;
  for (int i = 1; i <= k; ++i) c = c * (n - k + i) / i;
  return c;
}

inline Rational pow_rational(const Rational& base, int e) {
  Rational r = 1;
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

// Exact P[X <= m], X ~ Binomial(n, v_num / v_den), by rational enumeration.
inline Rational exact_cdf(int n, int m, std::int64_t v_num, std::int64_t v_den) {
  const Rational v(v_num, v_den);
  const Rational u = 1 - v;
  Rational sum = 0;
  for (int k = 0; k <= m; ++k) {
    sum += binomial_coefficient(n, k) * pow_rational(u, n - k) * pow_rational(v, k);
  }
  return sum;
}

// Smallest m whose exact CDF reaches 1 - eps, by linear scan.
inline int brute_force_min_spares(int n, std::int64_t v_num, std::int64_t v_den,
                                  const Rational& eps) {
  for (int m = 0; m <= n; ++m) {
    if (exact_cdf(n, m, v_num, v_den) >= 1 - eps) return m;
  }
  return n;
}

// Continuity-corrected normal approximation of the binomial CDF.
inline double normal_cdf_approx(std::int64_t n, std::int64_t m, double v) {
  const double mean = static_cast<double>(n) * v;
  const double sd = std::sqrt(static_cast<double>(n) * v * (1.0 - v));
  const boost::math::normal_distribution<double> z;
  return boost::math::cdf(z, (static_cast<double>(m) + 0.5 - mean) / sd);
}

// Incomplete-beta based CDF from Boost.Math.
inline double boost_cdf(std::int64_t n, std::int64_t m, double v) {
  const boost::math::binomial_distribution<double> d(static_cast<double>(n), v);
  return boost::math::cdf(d, static_cast<double>(m));
}

}  // namespace oracle
