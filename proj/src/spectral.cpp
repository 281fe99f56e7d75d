#include "upq/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace upq {
namespace {

Eigen::SelfAdjointEigenSolver<ComplexMatrix> hermitian_eigen(const ComplexMatrix& a) {
  const ComplexMatrix sym = 0.5 * (a + a.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym);
  if (solver.info() != Eigen::Success) throw DomainError("Hermitian eigensolver did not converge");
  return solver;
}

int count_above(const RealVector& values, double threshold) {
  return static_cast<int>((values.array().abs() > threshold).count());
}

// Rotates the first nonzero-maximal entry of z onto the positive real axis.
void normalize_phase(ComplexVector& z) {
  Eigen::Index best = 0;
  double best_mag = -1.0;
  for (Eigen::Index i = 0; i < z.size(); ++i) {
    const double mag = std::abs(z[i]);
    if (mag > best_mag * (1.0 + 1e-12)) {
      best = i;
      best_mag = mag;
    }
  }
  if (best_mag > 0.0) z *= std::conj(z[best]) / best_mag;
}

bool magnitudes_greater(const ComplexVector& a, const ComplexVector& b) {
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    const double ma = std::abs(a[i]);
    const double mb = std::abs(b[i]);
    if (std::abs(ma - mb) > 1e-12) return ma > mb;
  }
  return false;
}

// Within a cluster of (numerically) equal eigenvalues the eigensolver may
// return any orthonormal basis. Re-orthonormalize, then diagonalize the
// Gram matrix [z_i^* J z_j] so the returned basis is J-orthogonal.
void rotate_cluster(ComplexMatrix& z, const SignatureMetric& metric) {
  Eigen::HouseholderQR<ComplexMatrix> qr(z);
  ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(z.rows(), z.cols());
  // Keep the span orientation: undo the phases Householder introduced.
  const ComplexMatrix r = qr.matrixQR().topRows(z.cols()).triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < z.cols(); ++j) {
    const Complex d = r(j, j);
    if (std::abs(d) > 0.0) q.col(j) *= d / std::abs(d);
  }
  const ComplexMatrix gram = q.adjoint() * metric.diagonal().cast<Complex>().asDiagonal() * q;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(0.5 * (gram + gram.adjoint()));
  z = q * solver.eigenvectors();
}

}  // namespace

ComplexVector GeneratorSet::positive_part(std::size_t j) const {
  return generators.at(j).z.head(metric.p());
}

ComplexVector GeneratorSet::negative_part(std::size_t j) const {
  return generators.at(j).z.tail(metric.q());
}

RealVector shifted_spectrum(const ComplexMatrix& m, const SignatureMetric& metric) {
  if (m.rows() != metric.n() || m.cols() != metric.n()) {
    throw InputError("shifted_spectrum: matrix does not match metric dimension");
  }
  return hermitian_eigen(m + metric.matrix()).eigenvalues();
}

void require_hermitian_member(const ComplexMatrix& m, const SignatureMetric& metric,
                              double tol) {
  if (m.rows() != metric.n() || m.cols() != metric.n()) {
    throw InputError("matrix does not match metric dimension");
  }
  if (!is_hermitian(m, tol)) {
    throw DomainError("matrix is not Hermitian (residual " +
                      std::to_string(hermitian_residual(m)) + ")");
  }
  const double residual = membership_residual(m, metric);
  if (!(residual <= tol)) {
    throw DomainError("matrix is not in U(p,q) (residual " + std::to_string(residual) + ")");
  }
}

RankPair rank_pair(const ComplexMatrix& m, const SignatureMetric& metric,
                   const SpectralTolerances& tol) {
  require_hermitian_member(m, metric, tol.membership);
  const ComplexMatrix j = metric.matrix();
  return {count_above(hermitian_eigen(m - j).eigenvalues(), tol.rank_threshold),
          count_above(hermitian_eigen(m + j).eigenvalues(), tol.rank_threshold)};
}

bool eigenvalue_bound_check(const ComplexMatrix& m, const SignatureMetric& metric,
                            const SpectralTolerances& tol) {
  const RealVector values = shifted_spectrum(m, metric);
  return (values.array().abs() <= tol.zero || values.array().abs() >= 2.0 - tol.gap).all();
}

GeneratorSet extract_generators(const ComplexMatrix& m, const SignatureMetric& metric,
                                const SpectralTolerances& tol) {
  const RankPair ranks = rank_pair(m, metric, tol);
  const int sign = ranks.minus <= ranks.plus ? 1 : -1;

  const auto solver = hermitian_eigen(static_cast<double>(sign) * m + metric.matrix());
  const RealVector& values = solver.eigenvalues();
  const ComplexMatrix& vectors = solver.eigenvectors();

  std::vector<Eigen::Index> nonzero;
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    const double mag = std::abs(values[i]);
    if (mag > tol.zero && mag < 2.0 - tol.gap) {
      std::ostringstream msg;
      msg << "eigenvalue " << values[i]
          << " of sigma*M + J lies in the forbidden band; input is not in U_s(p,q)";
      throw DomainError(msg.str());
    }
    if (mag > tol.rank_threshold) nonzero.push_back(i);
  }
  // Sorted by lambda descending.
  std::sort(nonzero.begin(), nonzero.end(),
            [&](Eigen::Index a, Eigen::Index b) { return values[a] > values[b]; });

  GeneratorSet out{metric, sign, {}};
  std::size_t start = 0;
  while (start < nonzero.size()) {
    std::size_t stop = start + 1;
    while (stop < nonzero.size()) {
      const double a = values[nonzero[stop - 1]];
      const double b = values[nonzero[stop]];
      if (std::abs(a - b) > kClusterRelGap * std::max(std::abs(a), std::abs(b))) break;
      ++stop;
    }
    const auto width = static_cast<Eigen::Index>(stop - start);
    ComplexMatrix cluster(metric.n(), width);
    for (Eigen::Index c = 0; c < width; ++c) cluster.col(c) = vectors.col(nonzero[start + c]);
    if (width > 1) rotate_cluster(cluster, metric);

    std::vector<Generator> group;
    for (Eigen::Index c = 0; c < width; ++c) {
      ComplexVector z = cluster.col(c);
      normalize_phase(z);
      group.push_back({values[nonzero[start + c]], std::move(z)});
    }
    std::stable_sort(group.begin(), group.end(), [](const Generator& a, const Generator& b) {
      return magnitudes_greater(a.z, b.z);
    });
    for (auto& g : group) out.generators.push_back(std::move(g));
    start = stop;
  }
  return out;
}

std::string_view violation_name(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::Shape:
      return "shape";
    case ViolationKind::Sign:
      return "sign";
    case ViolationKind::RankBound:
      return "rank bound";
    case ViolationKind::Orthonormality:
      return "orthonormality";
    case ViolationKind::NormSum:
      return "norm-sum";
    case ViolationKind::JOrthogonality:
      return "J-orthogonality";
    case ViolationKind::SplitOrthogonality:
      return "split orthogonality";
    case ViolationKind::Degenerate:
      return "alpha=beta degeneracy";
    case ViolationKind::LambdaMismatch:
      return "lambda mismatch";
  }
  return "unknown";
}

std::vector<Violation> validate_generators(const GeneratorSet& gens, double tol) {
  std::vector<Violation> out;
  const auto& metric = gens.metric;
  const int n = metric.n();
  const int p = metric.p();
  const int q = metric.q();
  const std::size_t k = gens.rank();

  if (gens.sign != 1 && gens.sign != -1) {
    out.push_back({ViolationKind::Sign, "sign must be +1 or -1"});
  }
  for (std::size_t j = 0; j < k; ++j) {
    if (gens.generators[j].z.size() != n) {
      out.push_back({ViolationKind::Shape, "generator " + std::to_string(j) + " has length " +
                                               std::to_string(gens.generators[j].z.size())});
    }
  }
  if (!out.empty()) return out;

  if (k > static_cast<std::size_t>(n / 2)) {
    out.push_back({ViolationKind::RankBound,
                   "k = " + std::to_string(k) + " exceeds floor(n/2) = " + std::to_string(n / 2)});
  }

  const RealVector d = metric.diagonal();
  for (std::size_t i = 0; i < k; ++i) {
    const ComplexVector& zi = gens.generators[i].z;
    for (std::size_t j = i + 1; j < k; ++j) {
      const ComplexVector& zj = gens.generators[j].z;
      const std::string pair = "(" + std::to_string(i) + "," + std::to_string(j) + ")";
      if (std::abs(zi.dot(zj)) > tol) {
        out.push_back({ViolationKind::Orthonormality, "z_i^* z_j != 0 for " + pair});
      }
      if (std::abs(zi.dot(d.cast<Complex>().asDiagonal() * zj)) > tol) {
        out.push_back({ViolationKind::JOrthogonality, "z_i^* J z_j != 0 for " + pair});
      }
      const Complex plus = zi.head(p).dot(zj.head(p));
      const Complex minus = zi.tail(q).dot(zj.tail(q));
      if (std::abs(plus) > tol || std::abs(minus) > tol) {
        out.push_back({ViolationKind::SplitOrthogonality,
                       "split parts not orthogonal for " + pair});
      }
    }
  }

  for (std::size_t j = 0; j < k; ++j) {
    const double a2 = gens.positive_part(j).squaredNorm();
    const double b2 = gens.negative_part(j).squaredNorm();
    const std::string tag = "generator " + std::to_string(j);
    if (std::abs(a2 + b2 - 1.0) > tol) {
      out.push_back({ViolationKind::NormSum, tag + ": alpha^2 + beta^2 = " +
                                                 std::to_string(a2 + b2)});
    }
    const double diff = a2 - b2;
    if (std::abs(diff) <= tol) {
      out.push_back({ViolationKind::Degenerate, tag + ": alpha = beta, lambda undefined"});
      continue;
    }
    const double lambda = gens.generators[j].lambda;
    if (std::abs(lambda * diff - 2.0) > tol * std::max(2.0, std::abs(lambda))) {
      out.push_back({ViolationKind::LambdaMismatch,
                     tag + ": lambda = " + std::to_string(lambda) + ", expected " +
                         std::to_string(2.0 / diff)});
    }
  }
  return out;
}

ComplexMatrix construct_from_generators(const GeneratorSet& gens, double tol) {
  const auto violations = validate_generators(gens, tol);
  if (!violations.empty()) {
    std::string msg = "invalid generator set:";
    for (const auto& v : violations) {
      msg += " [";
      msg += violation_name(v.kind);
      msg += "] ";
      msg += v.detail;
      msg += ";";
    }
    throw DomainError(msg);
  }
  ComplexMatrix m = -gens.metric.matrix();
  for (const auto& g : gens.generators) m += g.lambda * g.z * g.z.adjoint();
  return static_cast<double>(gens.sign) * m;
}

}  // namespace upq
