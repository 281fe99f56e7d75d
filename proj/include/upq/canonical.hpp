#pragma once

// Block diagonalization of Hermitian elements of U(p,p) into 2x2 blocks and
// the resulting invariants of the equivalence
//
//   M1 ~ M2  iff  M1 = +/- M2  or  M1 = Q^* M2 Q  with Q in U(p) (+) U(p).
//
// Block j lives on rows/columns {j, p + j}; a list of 2x2 matrices A_j is
// placed as sum_j A_j (x) P_j with P_j = e_j e_j^*.

#include <optional>
#include <span>
#include <vector>

#include "upq/spectral.hpp"

namespace upq {

using Matrix2c = Eigen::Matrix2cd;

enum class BlockKind { Hyperbolic, Iota };

struct HyperbolicBlock {
  BlockKind kind = BlockKind::Hyperbolic;
  double t = 0.0;  // only meaningful for Hyperbolic
  int sign = 1;

  static HyperbolicBlock hyperbolic(double t, int sign = 1) {
    return {BlockKind::Hyperbolic, t, sign};
  }
  static HyperbolicBlock iota(int sign = 1) { return {BlockKind::Iota, 0.0, sign}; }

  // sign * [[cosh t, sinh t], [sinh t, cosh t]] or sign * diag{1, -1}.
  Matrix2c matrix() const;
  HyperbolicBlock flipped() const { return {kind, t, -sign}; }
};

struct CanonicalTolerances {
  SpectralTolerances spectral{};
  double t_equal = kTEqualTol;
};

struct BlockDecomposition {
  SignatureMetric metric{1, 1};
  int sign = 1;                     // sigma used for generator extraction
  ComplexMatrix frame;              // Q = U (+) V with Q M Q^* block diagonal
  std::vector<HyperbolicBlock> blocks;
  std::vector<Matrix2c> raw_blocks;  // 2x2 blocks read off Q M Q^*
  double reconstruction_residual = 0.0;  // ||Q M Q^* - sum_j A_j (x) P_j||_F
};

// sum_j A_j (x) P_j for arbitrary 2x2 blocks.
ComplexMatrix place_blocks(std::span<const Matrix2c> blocks);

// Q^* (sum_j A_j (x) P_j) Q. Requires exactly p blocks and, when given, a
// block-diagonal unitary frame.
ComplexMatrix assemble_blocks(std::span<const HyperbolicBlock> blocks,
                              const SignatureMetric& metric,
                              const std::optional<ComplexMatrix>& frame = std::nullopt,
                              double tol = kMembershipTol);

// Discrete classification of a U_s(1,1) block. Hyperbolic blocks have equal
// diagonal entries (+/-cosh t), iota blocks opposite ones (+/-1), so the
// split at |a11 - a22| = 1 has a margin of 1 on both sides.
HyperbolicBlock classify_block(const Matrix2c& a);

// Largest violation of the U_s(1,1) equations:
//   m11^2 - |m12|^2 = 1,  |m12|^2 - m22^2 = -1,  m12 (m11 - m22) = 0.
double block_equations_residual(const Matrix2c& a);

BlockDecomposition block_decompose(const ComplexMatrix& m, const SignatureMetric& metric,
                                   const CanonicalTolerances& tol = {});

struct CanonicalInvariant {
  std::vector<HyperbolicBlock> blocks;
};

bool t_equal(double a, double b, double base_tol = kTEqualTol);

// Normalized invariant of a block list: iota pairs of opposite sign are
// rewritten as +/-I_2 (they are equivalent by permuting the second factor),
// the list is sorted by (kind, sign descending, t ascending), and the global
// sign flip is applied when it yields the lexicographically smaller list.
CanonicalInvariant canonical_invariant(std::span<const HyperbolicBlock> blocks,
                                       double t_tol = kTEqualTol);
CanonicalInvariant canonical_invariant(const ComplexMatrix& m, const SignatureMetric& metric,
                                       const CanonicalTolerances& tol = {});

bool same_invariant(const CanonicalInvariant& a, const CanonicalInvariant& b,
                    double t_tol = kTEqualTol);

bool are_equivalent(const ComplexMatrix& m1, const ComplexMatrix& m2,
                    const SignatureMetric& metric, const CanonicalTolerances& tol = {});

// |det M - 1| <= tol.
bool is_special(const ComplexMatrix& m, double tol = kMembershipTol);

}  // namespace upq
