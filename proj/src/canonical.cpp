#include "upq/canonical.hpp"

#include <algorithm>
#include <cmath>

namespace upq {
namespace {

// Below this norm a split part z_j^+ or z_j^- is treated as zero and its
// slot is filled from the orthogonal complement instead.
constexpr double kSplitZero = 1e-10;

// Orthonormalizes the filled columns in slot order, then fills the remaining
// slots with the standard basis vector that survives projection best.
ComplexMatrix complete_basis(ComplexMatrix basis, std::vector<bool> filled) {
  const auto dim = basis.rows();
  auto project_out = [&](ComplexVector& v) {
    for (int pass = 0; pass < 2; ++pass) {
      for (Eigen::Index c = 0; c < dim; ++c) {
        if (filled[c]) v -= basis.col(c) * basis.col(c).dot(v);
      }
    }
  };
  std::vector<bool> done(dim, false);
  for (Eigen::Index c = 0; c < dim; ++c) {
    if (!filled[c]) continue;
    ComplexVector v = basis.col(c);
    filled[c] = false;
    // Only earlier slots are orthonormal at this point.
    for (int pass = 0; pass < 2; ++pass) {
      for (Eigen::Index d = 0; d < c; ++d) {
        if (done[d]) v -= basis.col(d) * basis.col(d).dot(v);
      }
    }
    basis.col(c) = v.normalized();
    filled[c] = true;
    done[c] = true;
  }
  for (Eigen::Index c = 0; c < dim; ++c) {
    if (filled[c]) continue;
    ComplexVector best;
    double best_norm = -1.0;
    for (Eigen::Index i = 0; i < dim; ++i) {
      ComplexVector v = ComplexVector::Unit(dim, i);
      project_out(v);
      const double nv = v.norm();
      if (nv > best_norm + 1e-12) {
        best_norm = nv;
        best = v;
      }
    }
    basis.col(c) = best / best_norm;
    filled[c] = true;
  }
  return basis;
}

int block_order(const HyperbolicBlock& a, const HyperbolicBlock& b, double t_tol) {
  if (a.kind != b.kind) return a.kind == BlockKind::Hyperbolic ? -1 : 1;
  if (a.sign != b.sign) return a.sign > b.sign ? -1 : 1;
  if (a.kind == BlockKind::Hyperbolic && !t_equal(a.t, b.t, t_tol)) return a.t < b.t ? -1 : 1;
  return 0;
}

int list_order(const std::vector<HyperbolicBlock>& a, const std::vector<HyperbolicBlock>& b,
               double t_tol) {
  const auto len = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < len; ++i) {
    if (const int c = block_order(a[i], b[i], t_tol); c != 0) return c;
  }
  if (a.size() == b.size()) return 0;
  return a.size() < b.size() ? -1 : 1;
}

void sort_blocks(std::vector<HyperbolicBlock>& blocks) {
  std::sort(blocks.begin(), blocks.end(), [](const HyperbolicBlock& a, const HyperbolicBlock& b) {
    if (a.kind != b.kind) return a.kind == BlockKind::Hyperbolic;
    if (a.sign != b.sign) return a.sign > b.sign;
    return a.t < b.t;
  });
}

}  // namespace

Matrix2c HyperbolicBlock::matrix() const {
  Matrix2c a;
  if (kind == BlockKind::Hyperbolic) {
    const double c = std::cosh(t);
    const double s = std::sinh(t);
    a << c, s, s, c;
  } else {
    a << 1.0, 0.0, 0.0, -1.0;
  }
  return static_cast<double>(sign) * a;
}

ComplexMatrix place_blocks(std::span<const Matrix2c> blocks) {
  const auto p = static_cast<Eigen::Index>(blocks.size());
  ComplexMatrix m = ComplexMatrix::Zero(2 * p, 2 * p);
  for (Eigen::Index j = 0; j < p; ++j) {
    const Matrix2c& a = blocks[j];
    m(j, j) = a(0, 0);
    m(j, p + j) = a(0, 1);
    m(p + j, j) = a(1, 0);
    m(p + j, p + j) = a(1, 1);
  }
  return m;
}

ComplexMatrix assemble_blocks(std::span<const HyperbolicBlock> blocks,
                              const SignatureMetric& metric,
                              const std::optional<ComplexMatrix>& frame, double tol) {
  if (!metric.balanced()) throw InputError("assemble_blocks requires p = q");
  if (static_cast<int>(blocks.size()) != metric.p()) {
    throw InputError("assemble_blocks: expected " + std::to_string(metric.p()) + " blocks, got " +
                     std::to_string(blocks.size()));
  }
  std::vector<Matrix2c> mats;
  mats.reserve(blocks.size());
  for (const auto& b : blocks) {
    if (b.sign != 1 && b.sign != -1) throw InputError("block sign must be +1 or -1");
    if (b.kind == BlockKind::Hyperbolic && !(b.t >= 0.0 && std::isfinite(b.t))) {
      throw InputError("hyperbolic parameter must be finite and nonnegative");
    }
    mats.push_back(b.matrix());
  }
  const ComplexMatrix m = place_blocks(mats);
  if (!frame) return m;

  const ComplexMatrix& q = *frame;
  const int p = metric.p();
  if (q.rows() != metric.n() || q.cols() != metric.n()) {
    throw InputError("assemble_blocks: frame has wrong shape");
  }
  if (q.topRightCorner(p, p).norm() > tol || q.bottomLeftCorner(p, p).norm() > tol ||
      unitary_residual(q) > tol) {
    throw InputError("assemble_blocks: frame is not a block-diagonal unitary");
  }
  const ComplexMatrix out = q.adjoint() * m * q;
  return 0.5 * (out + out.adjoint());
}

HyperbolicBlock classify_block(const Matrix2c& a) {
  const double a11 = a(0, 0).real();
  const double a22 = a(1, 1).real();
  const int sign = a11 >= 0.0 ? 1 : -1;
  if (std::abs(a11 - a22) < 1.0) {
    const double s = 0.5 * (std::abs(a(0, 1)) + std::abs(a(1, 0)));
    return HyperbolicBlock::hyperbolic(std::asinh(s), sign);
  }
  return HyperbolicBlock::iota(sign);
}

double block_equations_residual(const Matrix2c& a) {
  const Complex m11 = a(0, 0);
  const Complex m22 = a(1, 1);
  const Complex m12 = a(0, 1);
  const double s2 = std::norm(m12);
  const double hermitian = std::max(
      {std::abs(m11.imag()), std::abs(m22.imag()), std::abs(a(1, 0) - std::conj(m12))});
  return std::max({std::abs(m11.real() * m11.real() - s2 - 1.0),
                   std::abs(s2 - m22.real() * m22.real() + 1.0),
                   std::abs(m12 * (m11.real() - m22.real())), hermitian});
}

BlockDecomposition block_decompose(const ComplexMatrix& m, const SignatureMetric& metric,
                                   const CanonicalTolerances& tol) {
  if (!metric.balanced()) throw InputError("block_decompose requires p = q");
  const GeneratorSet gens = extract_generators(m, metric, tol.spectral);
  const int p = metric.p();
  const auto k = static_cast<int>(gens.rank());
  if (k > p) throw DomainError("generator count exceeds p; input is not in U_s(p,p)");

  // Column j of e (resp. f) is the normalized split part e'_j (resp. f'_j).
  ComplexMatrix e = ComplexMatrix::Zero(p, p);
  ComplexMatrix f = ComplexMatrix::Zero(p, p);
  std::vector<bool> e_filled(p, false);
  std::vector<bool> f_filled(p, false);
  for (int j = 0; j < k; ++j) {
    const ComplexVector plus = gens.positive_part(j);
    const ComplexVector minus = gens.negative_part(j);
    if (plus.norm() > kSplitZero) {
      e.col(j) = plus / plus.norm();
      e_filled[j] = true;
    }
    if (minus.norm() > kSplitZero) {
      f.col(j) = minus / minus.norm();
      f_filled[j] = true;
    }
  }
  e = complete_basis(std::move(e), std::move(e_filled));
  f = complete_basis(std::move(f), std::move(f_filled));

  // U e'_j = e_j and V f'_j = f_j.
  BlockDecomposition out{metric, gens.sign, block_diagonal(e.adjoint(), f.adjoint()), {}, {}, 0.0};
  const ComplexMatrix conjugated = out.frame * m * out.frame.adjoint();
  for (int j = 0; j < p; ++j) {
    Matrix2c a;
    a << conjugated(j, j), conjugated(j, p + j), conjugated(p + j, j), conjugated(p + j, p + j);
    out.raw_blocks.push_back(a);
    out.blocks.push_back(classify_block(a));
  }
  std::vector<Matrix2c> ideal;
  for (const auto& b : out.blocks) ideal.push_back(b.matrix());
  out.reconstruction_residual = (conjugated - place_blocks(ideal)).norm();
  return out;
}

bool t_equal(double a, double b, double base_tol) {
  const double scale = std::max(1.0, std::max(std::abs(a), std::abs(b)) / kTRelativeBeyond);
  return std::abs(a - b) <= base_tol * scale;
}

CanonicalInvariant canonical_invariant(std::span<const HyperbolicBlock> blocks, double t_tol) {
  std::vector<HyperbolicBlock> list(blocks.begin(), blocks.end());

  // iota(+) (+) iota(-) ~ I_2 (+) (-I_2): swap the two second-factor basis
  // vectors with V. Rewrite every such pair into the hyperbolic form.
  auto count_iota = [&](int sign) {
    return std::count_if(list.begin(), list.end(), [&](const HyperbolicBlock& b) {
      return b.kind == BlockKind::Iota && b.sign == sign;
    });
  };
  auto pairs = std::min(count_iota(1), count_iota(-1));
  for (auto& b : list) {
    if (pairs == 0) break;
    if (b.kind == BlockKind::Iota && b.sign == 1) {
      b = HyperbolicBlock::hyperbolic(0.0, 1);
      auto it = std::find_if(list.begin(), list.end(), [](const HyperbolicBlock& x) {
        return x.kind == BlockKind::Iota && x.sign == -1;
      });
      *it = HyperbolicBlock::hyperbolic(0.0, -1);
      --pairs;
    }
  }
  for (auto& b : list) {
    if (b.kind == BlockKind::Iota) b.t = 0.0;
  }

  std::vector<HyperbolicBlock> flipped;
  flipped.reserve(list.size());
  for (const auto& b : list) flipped.push_back(b.flipped());
  sort_blocks(list);
  sort_blocks(flipped);
  if (list_order(flipped, list, t_tol) < 0) return {std::move(flipped)};
  return {std::move(list)};
}

CanonicalInvariant canonical_invariant(const ComplexMatrix& m, const SignatureMetric& metric,
                                       const CanonicalTolerances& tol) {
  const BlockDecomposition d = block_decompose(m, metric, tol);
  return canonical_invariant(d.blocks, tol.t_equal);
}

bool same_invariant(const CanonicalInvariant& a, const CanonicalInvariant& b, double t_tol) {
  if (list_order(a.blocks, b.blocks, t_tol) == 0) return true;
  // Near-symmetric lists can pick different representatives under the flip.
  std::vector<HyperbolicBlock> flipped;
  for (const auto& x : b.blocks) flipped.push_back(x.flipped());
  sort_blocks(flipped);
  return list_order(a.blocks, flipped, t_tol) == 0;
}

bool are_equivalent(const ComplexMatrix& m1, const ComplexMatrix& m2,
                    const SignatureMetric& metric, const CanonicalTolerances& tol) {
  return same_invariant(canonical_invariant(m1, metric, tol), canonical_invariant(m2, metric, tol),
                        tol.t_equal);
}

bool is_special(const ComplexMatrix& m, double tol) {
  if (m.rows() != m.cols() || m.rows() == 0) return false;
  return std::abs(m.determinant() - Complex(1.0, 0.0)) <= tol;
}

}  // namespace upq
