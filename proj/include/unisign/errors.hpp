#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace unisign {

// Base class for all numerical failures raised by this library.
class error : public std::runtime_error {
 public:
  explicit error(const std::string& what) : std::runtime_error(what) {}
};

// Input outside the mathematical domain of an operation.
class domain_error : public error {
 public:
  explicit domain_error(const std::string& what) : error(what) {}
};

// A matrix that must be (numerically) nonsingular was not.
class singular_matrix_error : public error {
 public:
  explicit singular_matrix_error(const std::string& what) : error(what) {}
};

// Evaluation hit a pole of a rational function; `factor` is the offending
// coefficient index (1-based).
class pole_error : public error {
 public:
  pole_error(const std::string& what, int factor)
      : error(what), factor(factor) {}
  int factor;
};

// An iteration exceeded its cap. For the sign iterations, `theta_history`
// carries the arc-angle sequence up to the failure.
class convergence_error : public error {
 public:
  explicit convergence_error(const std::string& what,
                             std::vector<double> theta_history = {})
      : error(what), theta_history(std::move(theta_history)) {}
  std::vector<double> theta_history;
};

// Subspace iteration failed to decouple the two invariant-subspace blocks.
class decoupling_error : public error {
 public:
  decoupling_error(const std::string& what, double residual)
      : error(what), residual(residual) {}
  double residual;
};

// Spectrum splitting failed repeatedly without reaching a cluster base case.
class balance_error : public error {
 public:
  explicit balance_error(const std::string& what) : error(what) {}
};

}  // namespace unisign
