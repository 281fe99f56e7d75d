#pragma once

// Hermitian part of the Lie algebra u(p,q): matrices [[0, T], [T^*, 0]] with a
// p x q block T, and the closed-form exponential / logarithm between it and
// the positive-definite Hermitian members of U(p,q).

#include "upq/metric.hpp"

namespace upq {

class LieElement {
 public:
  // Throws InputError when block is not p x q.
  LieElement(SignatureMetric metric, ComplexMatrix block);

  const SignatureMetric& metric() const { return metric_; }
  const ComplexMatrix& block() const { return block_; }

  // [[0, T], [T^*, 0]]
  ComplexMatrix assembled() const;

 private:
  SignatureMetric metric_;
  ComplexMatrix block_;
};

// ||T^* J + J T||_F <= tol (1 + ||T||_F).
bool validate_lie_algebra(const ComplexMatrix& t, const SignatureMetric& metric,
                          double tol = kMembershipTol);

LieElement make_hermitian_generator(const ComplexMatrix& block, const SignatureMetric& metric);

/// exp(T) from the SVD T = W S X^*:
///
///   [[ W cosh(S) W^*,  W sinh(S) X^* ],
///    [ X sinh(S) W^*,  X cosh(S) X^* ]]
///
/// with cosh extended by 1 on the directions the singular values do not
/// cover. The result is Hermitian, positive definite and in U(p,q).
ComplexMatrix exp_us(const LieElement& t);

struct LieTolerances {
  double membership = kMembershipTol;
  double positive_definite = kPositiveDefiniteTol;  // relative to ||M||_2
};

// True when M (a Hermitian member, else DomainError) is positive definite.
bool is_in_exp_image(const ComplexMatrix& m, const SignatureMetric& metric,
                     const LieTolerances& tol = {});

// Inverse of exp_us on positive-definite members, read from the SVD of the
// off-diagonal block: M12 = W sinh(S) X^*  =>  T = W asinh(sinh S) X^*.
// Throws DomainError("not positive definite") outside the image.
LieElement log_us(const ComplexMatrix& m, const SignatureMetric& metric,
                  const LieTolerances& tol = {});

// Complex dimension p*q of u_s(p,q).
int dimension_check(const SignatureMetric& metric);

// Forward-difference Jacobian of T -> exp_us(T) at T = 0 over the 2pq real
// coordinates of the block (real parts first, then imaginary parts), mapped
// into the 2n^2 real coordinates of the result.
Eigen::MatrixXd exp_differential_at_zero(const SignatureMetric& metric, double step);

// Number of singular values above threshold.
int numerical_rank(const Eigen::MatrixXd& a, double threshold);

}  // namespace upq
