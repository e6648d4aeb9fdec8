#pragma once

#include <stdexcept>
#include <string>

namespace ckmig {

// Invalid model parameters (non-positive MTBF, m > N, T <= 0, ...).
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

// The model is well-formed but has no answer, e.g. the spare lower bound
// never reaches 1 - epsilon.
class InfeasibleError : public std::runtime_error {
 public:
  explicit InfeasibleError(const std::string& what) : std::runtime_error(what) {}
};

// improvement_pct with a zero checkpoint throughput.
class UndefinedImprovementError : public std::domain_error {
 public:
  explicit UndefinedImprovementError(const std::string& what)
      : std::domain_error(what) {}
};

namespace detail {

inline void require(bool ok, const char* msg) {
  if (!ok) throw DomainError(msg);
}

}  // namespace detail
}  // namespace ckmig
