#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace lvbec {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// The radicand f²(g) is non-positive at some momentum, i.e. the
/// quasiparticle spectrum is dynamically unstable there.
class UnstableSpectrum : public std::runtime_error {
 public:
  UnstableSpectrum(double g, double f_squared);

  double g() const noexcept { return g_; }
  double f_squared() const noexcept { return f_squared_; }

 private:
  double g_;
  double f_squared_;
};

/// min_g f²(g; A, R) stays positive for every A (contact-like R).
class NoInstability : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Collects every violation found while validating an input record.
class ValidationError : public std::invalid_argument {
 public:
  explicit ValidationError(std::vector<std::string> violations);

  const std::vector<std::string>& violations() const noexcept {
    return violations_;
  }

 private:
  std::vector<std::string> violations_;
};

}  // namespace lvbec
