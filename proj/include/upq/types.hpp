#pragma once

#include <complex>
#include <stdexcept>

#include <Eigen/Dense>

namespace upq {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

// A well-formed input that fails a mathematical condition: not a group
// member, outside the exponential image, inequivalent, ...
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input: wrong shapes, bad signature, unreadable files.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace upq
