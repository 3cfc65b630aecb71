#pragma once

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace bcft {

using Label = int;
using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;
using IMatrix = Eigen::Matrix<long long, Eigen::Dynamic, Eigen::Dynamic>;

inline constexpr double kDefaultTolerance = 1e-9;

// Error hierarchy. The CLI maps these onto exit codes:
// ValidationError/InconsistencyError -> 1, StructuralError/InputError -> 2,
// NumericError -> 3.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: wrong shapes, out-of-range labels, bad JSON members.
class StructuralError : public Error {
 public:
  using Error::Error;
};

/// Invalid user-supplied parameters (e.g. non-coprime minimal model labels).
class InputError : public Error {
 public:
  using Error::Error;
};

/// Well-formed data that violates a required axiom or identity.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Two computations that must agree do not.
class InconsistencyError : public Error {
 public:
  using Error::Error;
};

/// Numerics cannot produce a trustworthy discrete answer (no singular-value
/// gap, non-convergence, rounding residual too large).
class NumericError : public Error {
 public:
  using Error::Error;
};

struct Violation {
  std::string code;
  std::string message;
};

/// Collection of violated constraints; empty means valid.
struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
  void add(std::string code, std::string message) {
    violations.push_back({std::move(code), std::move(message)});
  }
  void merge(const ValidationReport& other) {
    violations.insert(violations.end(), other.violations.begin(),
                      other.violations.end());
  }
};

}  // namespace bcft
