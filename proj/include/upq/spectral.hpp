#pragma once

// Spectral structure of Hermitian group members: the ranks of M -/+ J, the
// eigenvalue gap of M + J, and the correspondence between members and
// families of generator vectors (lambda_j, z_j) with
//
//   sigma * M = sum_j lambda_j z_j z_j^* - J.

#include <string>
#include <string_view>
#include <vector>

#include "upq/metric.hpp"

namespace upq {

struct Generator {
  double lambda = 0.0;
  ComplexVector z;
};

struct GeneratorSet {
  SignatureMetric metric;
  int sign = 1;  // which of M, -M the generators describe
  std::vector<Generator> generators;

  std::size_t rank() const { return generators.size(); }
  // First p entries of z_j.
  ComplexVector positive_part(std::size_t j) const;
  // Last q entries of z_j.
  ComplexVector negative_part(std::size_t j) const;
  double alpha(std::size_t j) const { return positive_part(j).norm(); }
  double beta(std::size_t j) const { return negative_part(j).norm(); }
};

struct SpectralTolerances {
  double membership = kMembershipTol;
  double rank_threshold = kRankThreshold;
  double zero = kSpectralZeroTol;
  double gap = kSpectralGapTol;
};

struct RankPair {
  int plus = 0;   // rank(M - J)
  int minus = 0;  // rank(M + J)
};

// Eigenvalues of M + J in ascending order. M must be Hermitian.
RealVector shifted_spectrum(const ComplexMatrix& m, const SignatureMetric& metric);

// Throws DomainError unless m is Hermitian and in U(p,q) within tol.membership.
void require_hermitian_member(const ComplexMatrix& m, const SignatureMetric& metric,
                              double tol);

// Ranks counted as eigenvalues above tol.rank_threshold in modulus.
RankPair rank_pair(const ComplexMatrix& m, const SignatureMetric& metric,
                   const SpectralTolerances& tol = {});

// Every eigenvalue of M + J is either ~0 or has modulus >= 2 - tol.gap.
bool eigenvalue_bound_check(const ComplexMatrix& m, const SignatureMetric& metric,
                            const SpectralTolerances& tol = {});

// Chooses sigma so that rank(sigma M + J) <= rank(sigma M - J) (ties -> +1)
// and returns the nonzero eigenpairs of sigma M + J, sorted by lambda
// descending. Throws DomainError for non-members or when an eigenvalue falls
// inside the forbidden annulus.
GeneratorSet extract_generators(const ComplexMatrix& m, const SignatureMetric& metric,
                                const SpectralTolerances& tol = {});

enum class ViolationKind {
  Shape,
  Sign,
  RankBound,
  Orthonormality,
  NormSum,
  JOrthogonality,
  SplitOrthogonality,
  Degenerate,
  LambdaMismatch,
};

std::string_view violation_name(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  std::string detail;
};

std::vector<Violation> validate_generators(const GeneratorSet& gens,
                                           double tol = kGeneratorTol);

// sigma * (sum_j lambda_j z_j z_j^* - J). Throws DomainError listing every
// violated condition when validation fails.
ComplexMatrix construct_from_generators(const GeneratorSet& gens, double tol = kGeneratorTol);

}  // namespace upq
