#pragma once

// Signature metric J = diag{I_p, -I_q}, the indefinite forms it defines, and
// membership predicates for U(p,q) and its Hermitian part.

#include "upq/tolerances.hpp"
#include "upq/types.hpp"

namespace upq {

class SignatureMetric {
 public:
  // Throws InputError for negative dimensions or p + q == 0.
  SignatureMetric(int p, int q);

  int p() const { return p_; }
  int q() const { return q_; }
  int n() const { return p_ + q_; }
  bool balanced() const { return p_ == q_; }

  // +1 for the first p coordinates, -1 for the last q.
  double sign(int i) const { return i < p_ ? 1.0 : -1.0; }

  RealVector diagonal() const;
  ComplexMatrix matrix() const;

  friend bool operator==(const SignatureMetric&, const SignatureMetric&) = default;

 private:
  int p_;
  int q_;
};

SignatureMetric make_metric(int p, int q);

// The four blocks of an n x n matrix under the p + q split.
struct BlockView {
  ComplexMatrix m11;  // p x p
  ComplexMatrix m12;  // p x q
  ComplexMatrix m21;  // q x p
  ComplexMatrix m22;  // q x q

  ComplexMatrix assemble() const;
};

BlockView split_blocks(const ComplexMatrix& m, const SignatureMetric& metric);

// U (+) V for U p x p and V q x q.
ComplexMatrix block_diagonal(const ComplexMatrix& u, const ComplexMatrix& v);

/// B(z, w) = sum_{i<p} conj(z_i) w_i - sum_{j>=p} conj(z_j) w_j.
Complex indefinite_form(const ComplexVector& z, const ComplexVector& w,
                        const SignatureMetric& metric);

/// Q(z) = B(z, z), always real.
double quadratic_form(const ComplexVector& z, const SignatureMetric& metric);

/// M* J M, computed column-by-column with the dispatched dot kernel.
ComplexMatrix pseudo_gram(const ComplexMatrix& m, const SignatureMetric& metric);

/// ||M* J M - J||_F / (1 + ||M||_F^2). Zero exactly on U(p,q); the
/// normalization makes a single tolerance usable across scales.
double membership_residual(const ComplexMatrix& m, const SignatureMetric& metric);

// Throws InputError when m is not n x n.
bool is_pseudo_unitary(const ComplexMatrix& m, const SignatureMetric& metric,
                       double tol = kMembershipTol);

// ||M - M*||_F / (1 + ||M||_F); +infinity for non-square input.
double hermitian_residual(const ComplexMatrix& m);
bool is_hermitian(const ComplexMatrix& m, double tol = kMembershipTol);

// ||M* M - I||_F / (1 + ||M||_F^2).
double unitary_residual(const ComplexMatrix& m);

/// Largest of the residuals of the three block identities
///   M11* M11 - M21* M21 = I_p,
///   M12* M12 - M22* M22 = -I_q,
///   M11* M12 - M21* M22 = 0,
/// normalized like membership_residual, so it never exceeds it.
double block_identities_residual(const ComplexMatrix& m, const SignatureMetric& metric);

/// Inverse of a group element from its blocks: [[M11*, -M21*], [-M12*, M22*]],
/// i.e. J M* J. Throws DomainError if the membership residual exceeds tol,
/// since the formula is meaningless off the group.
ComplexMatrix fast_inverse(const ComplexMatrix& m, const SignatureMetric& metric,
                           double tol = kMembershipTol);

struct CompactIntersectionCheck {
  bool in_intersection = false;
  double group_residual = 0.0;
  double unitary_residual = 0.0;
  double m12_norm = 0.0;
  double m21_norm = 0.0;

  explicit operator bool() const { return in_intersection; }
};

// Membership in U(p,q) and U(n) simultaneously; members are exactly the
// block-diagonal unitaries, so the off-diagonal norms are reported as well.
CompactIntersectionCheck check_compact_intersection(const ComplexMatrix& m,
                                                    const SignatureMetric& metric,
                                                    double tol = kMembershipTol);

}  // namespace upq
