#include "upq/metric.hpp"

#include <cmath>
#include <limits>
#include <span>
#include <string>

#include "upq/kernels.hpp"

namespace upq {
namespace {

std::span<const Complex> entries(const ComplexMatrix& m) {
  return {m.data(), static_cast<std::size_t>(m.size())};
}

std::span<const Complex> column_range(const ComplexMatrix& m, Eigen::Index col,
                                      Eigen::Index begin, Eigen::Index len) {
  return {m.data() + col * m.rows() + begin, static_cast<std::size_t>(len)};
}

void require_square(const ComplexMatrix& m, const SignatureMetric& metric) {
  if (m.rows() != metric.n() || m.cols() != metric.n()) {
    throw InputError("matrix is " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()) +
                     ", metric requires " + std::to_string(metric.n()) + "x" +
                     std::to_string(metric.n()));
  }
}

double frobenius_sq(const ComplexMatrix& m) { return kernels::norm_sq(entries(m)); }

}  // namespace

SignatureMetric::SignatureMetric(int p, int q) : p_(p), q_(q) {
  if (p < 0 || q < 0) throw InputError("signature dimensions must be nonnegative");
  if (p + q == 0) throw InputError("signature must have p + q >= 1");
}

RealVector SignatureMetric::diagonal() const {
  RealVector d(n());
  d.head(p_).setOnes();
  d.tail(q_).setConstant(-1.0);
  return d;
}

ComplexMatrix SignatureMetric::matrix() const {
  return diagonal().cast<Complex>().asDiagonal();
}

SignatureMetric make_metric(int p, int q) { return SignatureMetric(p, q); }

ComplexMatrix BlockView::assemble() const {
  const auto p = m11.rows();
  const auto q = m22.rows();
  ComplexMatrix m(p + q, p + q);
  m.topLeftCorner(p, p) = m11;
  m.topRightCorner(p, q) = m12;
  m.bottomLeftCorner(q, p) = m21;
  m.bottomRightCorner(q, q) = m22;
  return m;
}

BlockView split_blocks(const ComplexMatrix& m, const SignatureMetric& metric) {
  require_square(m, metric);
  const int p = metric.p();
  const int q = metric.q();
  return {m.topLeftCorner(p, p), m.topRightCorner(p, q), m.bottomLeftCorner(q, p),
          m.bottomRightCorner(q, q)};
}

ComplexMatrix block_diagonal(const ComplexMatrix& u, const ComplexMatrix& v) {
  if (u.rows() != u.cols() || v.rows() != v.cols()) {
    throw InputError("block_diagonal expects square blocks");
  }
  ComplexMatrix out = ComplexMatrix::Zero(u.rows() + v.rows(), u.cols() + v.cols());
  out.topLeftCorner(u.rows(), u.cols()) = u;
  out.bottomRightCorner(v.rows(), v.cols()) = v;
  return out;
}

Complex indefinite_form(const ComplexVector& z, const ComplexVector& w,
                        const SignatureMetric& metric) {
  if (z.size() != metric.n() || w.size() != metric.n()) {
    throw InputError("indefinite_form: vector length does not match metric dimension");
  }
  const int p = metric.p();
  const int q = metric.q();
  const std::span<const Complex> zs(z.data(), z.size());
  const std::span<const Complex> ws(w.data(), w.size());
  return kernels::dotc(zs.first(p), ws.first(p)) - kernels::dotc(zs.last(q), ws.last(q));
}

double quadratic_form(const ComplexVector& z, const SignatureMetric& metric) {
  if (z.size() != metric.n()) {
    throw InputError("quadratic_form: vector length does not match metric dimension");
  }
  const std::span<const Complex> zs(z.data(), z.size());
  return kernels::norm_sq(zs.first(metric.p())) - kernels::norm_sq(zs.last(metric.q()));
}

ComplexMatrix pseudo_gram(const ComplexMatrix& m, const SignatureMetric& metric) {
  require_square(m, metric);
  const int n = metric.n();
  const int p = metric.p();
  const int q = metric.q();
  ComplexMatrix g(n, n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i <= j; ++i) {
      const Complex v = kernels::dotc(column_range(m, i, 0, p), column_range(m, j, 0, p)) -
                        kernels::dotc(column_range(m, i, p, q), column_range(m, j, p, q));
      g(i, j) = v;
      g(j, i) = std::conj(v);
    }
  }
  return g;
}

double membership_residual(const ComplexMatrix& m, const SignatureMetric& metric) {
  ComplexMatrix g = pseudo_gram(m, metric);
  g.diagonal() -= metric.diagonal().cast<Complex>();
  return std::sqrt(frobenius_sq(g)) / (1.0 + frobenius_sq(m));
}

bool is_pseudo_unitary(const ComplexMatrix& m, const SignatureMetric& metric, double tol) {
  return membership_residual(m, metric) <= tol;
}

double hermitian_residual(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) return std::numeric_limits<double>::infinity();
  const ComplexMatrix adj = m.adjoint();
  return std::sqrt(kernels::diff_norm_sq(entries(m), entries(adj))) /
         (1.0 + std::sqrt(frobenius_sq(m)));
}

bool is_hermitian(const ComplexMatrix& m, double tol) { return hermitian_residual(m) <= tol; }

double unitary_residual(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) return std::numeric_limits<double>::infinity();
  const auto n = m.cols();
  double acc = 0.0;
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i < n; ++i) {
      Complex v = kernels::dotc(column_range(m, i, 0, n), column_range(m, j, 0, n));
      if (i == j) v -= 1.0;
      acc += std::norm(v);
    }
  }
  return std::sqrt(acc) / (1.0 + frobenius_sq(m));
}

double block_identities_residual(const ComplexMatrix& m, const SignatureMetric& metric) {
  const BlockView b = split_blocks(m, metric);
  const int p = metric.p();
  const int q = metric.q();
  const ComplexMatrix first =
      b.m11.adjoint() * b.m11 - b.m21.adjoint() * b.m21 - ComplexMatrix::Identity(p, p);
  const ComplexMatrix second =
      b.m12.adjoint() * b.m12 - b.m22.adjoint() * b.m22 + ComplexMatrix::Identity(q, q);
  const ComplexMatrix cross = b.m11.adjoint() * b.m12 - b.m21.adjoint() * b.m22;
  const double worst = std::max({first.norm(), second.norm(), cross.norm()});
  return worst / (1.0 + frobenius_sq(m));
}

ComplexMatrix fast_inverse(const ComplexMatrix& m, const SignatureMetric& metric, double tol) {
  const double residual = membership_residual(m, metric);
  if (!(residual <= tol)) {
    throw DomainError("fast_inverse: matrix is not in U(p,q) (residual " +
                      std::to_string(residual) + ")");
  }
  const BlockView b = split_blocks(m, metric);
  return BlockView{b.m11.adjoint(), -b.m21.adjoint(), -b.m12.adjoint(), b.m22.adjoint()}
      .assemble();
}

CompactIntersectionCheck check_compact_intersection(const ComplexMatrix& m,
                                                    const SignatureMetric& metric, double tol) {
  CompactIntersectionCheck out;
  out.group_residual = membership_residual(m, metric);
  out.unitary_residual = unitary_residual(m);
  const BlockView b = split_blocks(m, metric);
  out.m12_norm = b.m12.norm();
  out.m21_norm = b.m21.norm();
  out.in_intersection = out.group_residual <= tol && out.unitary_residual <= tol;
  return out;
}

}  // namespace upq
