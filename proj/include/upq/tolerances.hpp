#pragma once

namespace upq {

// Relative tolerance for the quadratic membership identity M* J M = J and
// for the Hermitian check. Valid at desk scale (n <= 64, moderate norms).
inline constexpr double kMembershipTol = 1e-10;

// Cutoff between the zero and nonzero eigenvalue clusters of M +/- J.
// Nonzero eigenvalues have modulus >= 2, so 1.0 sits in the middle of the gap.
inline constexpr double kRankThreshold = 1.0;

// Width of the forbidden annulus checks: |lambda| <= zero or |lambda| >= 2 - gap.
inline constexpr double kSpectralZeroTol = 1e-8;
inline constexpr double kSpectralGapTol = 1e-8;

// Tolerance used when validating generator sets.
inline constexpr double kGeneratorTol = 1e-9;

// Eigenvectors whose eigenvalues differ by less than this (relative) are
// treated as one cluster.
inline constexpr double kClusterRelGap = 1e-8;

// Absolute tolerance on hyperbolic parameters for t <= kTRelativeBeyond,
// scaled proportionally above it.
inline constexpr double kTEqualTol = 1e-8;
inline constexpr double kTRelativeBeyond = 20.0;

// Positive-definiteness threshold, relative to the spectral norm.
inline constexpr double kPositiveDefiniteTol = 1e-10;

}  // namespace upq
