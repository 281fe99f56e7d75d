#include "upq/lie.hpp"

#include <cmath>

#include "upq/spectral.hpp"

namespace upq {
namespace {

struct BlockSvd {
  ComplexMatrix w;  // p x p
  ComplexMatrix x;  // q x q
  RealVector s;     // min(p, q)
};

BlockSvd full_svd(const ComplexMatrix& block) {
  const auto p = block.rows();
  const auto q = block.cols();
  if (p == 0 || q == 0) {
    return {ComplexMatrix::Identity(p, p), ComplexMatrix::Identity(q, q), RealVector(0)};
  }
  Eigen::JacobiSVD<ComplexMatrix> svd(block, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return {svd.matrixU(), svd.matrixV(), svd.singularValues()};
}

}  // namespace

LieElement::LieElement(SignatureMetric metric, ComplexMatrix block)
    : metric_(metric), block_(std::move(block)) {
  if (block_.rows() != metric_.p() || block_.cols() != metric_.q()) {
    throw InputError("Lie block must be " + std::to_string(metric_.p()) + "x" +
                     std::to_string(metric_.q()) + ", got " + std::to_string(block_.rows()) +
                     "x" + std::to_string(block_.cols()));
  }
}

ComplexMatrix LieElement::assembled() const {
  const int p = metric_.p();
  const int q = metric_.q();
  ComplexMatrix t = ComplexMatrix::Zero(metric_.n(), metric_.n());
  t.topRightCorner(p, q) = block_;
  t.bottomLeftCorner(q, p) = block_.adjoint();
  return t;
}

bool validate_lie_algebra(const ComplexMatrix& t, const SignatureMetric& metric, double tol) {
  if (t.rows() != metric.n() || t.cols() != metric.n()) {
    throw InputError("validate_lie_algebra: matrix does not match metric dimension");
  }
  const ComplexMatrix j = metric.matrix();
  return (t.adjoint() * j + j * t).norm() <= tol * (1.0 + t.norm());
}

LieElement make_hermitian_generator(const ComplexMatrix& block, const SignatureMetric& metric) {
  return LieElement(metric, block);
}

ComplexMatrix exp_us(const LieElement& t) {
  const int p = t.metric().p();
  const int q = t.metric().q();
  const BlockSvd svd = full_svd(t.block());
  const auto r = svd.s.size();

  RealVector cosh_p = RealVector::Ones(p);
  RealVector cosh_q = RealVector::Ones(q);
  RealVector sinh_r(r);
  for (Eigen::Index i = 0; i < r; ++i) {
    cosh_p[i] = std::cosh(svd.s[i]);
    cosh_q[i] = std::cosh(svd.s[i]);
    sinh_r[i] = std::sinh(svd.s[i]);
  }

  ComplexMatrix m(p + q, p + q);
  m.topLeftCorner(p, p) = svd.w * cosh_p.cast<Complex>().asDiagonal() * svd.w.adjoint();
  m.bottomRightCorner(q, q) = svd.x * cosh_q.cast<Complex>().asDiagonal() * svd.x.adjoint();
  const ComplexMatrix off =
      svd.w.leftCols(r) * sinh_r.cast<Complex>().asDiagonal() * svd.x.leftCols(r).adjoint();
  m.topRightCorner(p, q) = off;
  m.bottomLeftCorner(q, p) = off.adjoint();
  return m;
}

bool is_in_exp_image(const ComplexMatrix& m, const SignatureMetric& metric,
                     const LieTolerances& tol) {
  require_hermitian_member(m, metric, tol.membership);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(0.5 * (m + m.adjoint()),
                                                      Eigen::EigenvaluesOnly);
  const RealVector& values = solver.eigenvalues();
  const double spectral_norm = values.cwiseAbs().maxCoeff();
  return values.minCoeff() > tol.positive_definite * spectral_norm;
}

LieElement log_us(const ComplexMatrix& m, const SignatureMetric& metric,
                  const LieTolerances& tol) {
  if (!is_in_exp_image(m, metric, tol)) {
    throw DomainError("not positive definite: matrix is outside the image of exp");
  }
  const int p = metric.p();
  const int q = metric.q();
  const BlockSvd svd = full_svd(m.topRightCorner(p, q));
  const auto r = svd.s.size();
  RealVector angles(r);
  for (Eigen::Index i = 0; i < r; ++i) angles[i] = std::asinh(svd.s[i]);
  ComplexMatrix block =
      svd.w.leftCols(r) * angles.cast<Complex>().asDiagonal() * svd.x.leftCols(r).adjoint();
  return LieElement(metric, std::move(block));
}

int dimension_check(const SignatureMetric& metric) { return metric.p() * metric.q(); }

Eigen::MatrixXd exp_differential_at_zero(const SignatureMetric& metric, double step) {
  const int p = metric.p();
  const int q = metric.q();
  const int n = metric.n();
  const int coords = 2 * p * q;
  const ComplexMatrix base = exp_us(LieElement(metric, ComplexMatrix::Zero(p, q)));

  Eigen::MatrixXd jac(2 * n * n, coords);
  for (int c = 0; c < coords; ++c) {
    const int entry = c % (p * q);
    const Complex unit = c < p * q ? Complex(1.0, 0.0) : Complex(0.0, 1.0);
    ComplexMatrix block = ComplexMatrix::Zero(p, q);
    block(entry / q, entry % q) = step * unit;
    const ComplexMatrix diff = (exp_us(LieElement(metric, block)) - base) / step;
    for (int i = 0; i < n * n; ++i) {
      jac(i, c) = diff.data()[i].real();
      jac(n * n + i, c) = diff.data()[i].imag();
    }
  }
  return jac;
}

int numerical_rank(const Eigen::MatrixXd& a, double threshold) {
  if (a.size() == 0) return 0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
  return static_cast<int>((svd.singularValues().array() > threshold).count());
}

}  // namespace upq
