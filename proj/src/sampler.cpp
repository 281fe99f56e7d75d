#include "upq/sampler.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <algorithm>

namespace upq {

double Rng::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_ = radius * std::sin(angle);
  has_spare_ = true;
  return radius * std::cos(angle);
}

Complex Rng::complex_normal() {
  const double re = normal();
  const double im = normal();
  return Complex(re, im) / std::numbers::sqrt2;
}

std::size_t Rng::categorical(std::span<const double> weights) {
  const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
  const double target = uniform() * total;
  double acc = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    acc += weights[i];
    if (target < acc) return i;
  }
  // Rounding at the top end: last index with positive weight.
  for (std::size_t i = weights.size(); i-- > 0;) {
    if (weights[i] > 0.0) return i;
  }
  return 0;
}

ComplexMatrix complex_gaussian(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  ComplexMatrix z(rows, cols);
  // Row-major draw order, independent of Eigen's storage order.
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) z(i, j) = rng.complex_normal();
  }
  return z;
}

ComplexMatrix haar_unitary(int n, Rng& rng) {
  if (n < 1) throw InputError("haar_unitary requires n >= 1");
  const ComplexMatrix z = complex_gaussian(n, n, rng);
  Eigen::HouseholderQR<ComplexMatrix> qr(z);
  ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(n, n);
  const auto& r = qr.matrixQR();
  for (int j = 0; j < n; ++j) {
    const Complex d = r(j, j);
    const double mag = std::abs(d);
    if (mag > 0.0) q.col(j) *= d / mag;
  }
  return q;
}

ComplexMatrix haar_unitary(int n, std::uint64_t seed) {
  Rng rng(seed);
  return haar_unitary(n, rng);
}

ComplexMatrix haar_block_unitary(const SignatureMetric& metric, Rng& rng) {
  const ComplexMatrix u =
      metric.p() > 0 ? haar_unitary(metric.p(), rng) : ComplexMatrix(0, 0);
  const ComplexMatrix v =
      metric.q() > 0 ? haar_unitary(metric.q(), rng) : ComplexMatrix(0, 0);
  return block_diagonal(u, v);
}

UsppSample sample_us_pp(const SampleSpec& spec) {
  const auto& metric = spec.metric;
  if (!metric.balanced()) throw InputError("sample_us_pp requires p = q");
  for (double w : spec.weights) {
    if (!(w >= 0.0)) throw InputError("block kind weights must be nonnegative");
  }
  const double total = std::accumulate(spec.weights.begin(), spec.weights.end(), 0.0);
  if (std::abs(total - 1.0) > 1e-12) throw InputError("block kind weights must sum to 1");
  const int p = metric.p();

  const auto* fixed = std::get_if<std::vector<double>>(&spec.t_distribution);
  if (fixed && static_cast<int>(fixed->size()) != p) {
    throw InputError("fixed t list must have one entry per block");
  }
  double t_max = 0.0;
  if (const auto* uni = std::get_if<UniformT>(&spec.t_distribution)) {
    if (!(uni->t_max >= 0.0)) throw InputError("t_max must be nonnegative");
    t_max = uni->t_max;
  }

  Rng rng(spec.seed);
  std::vector<HyperbolicBlock> blocks;
  blocks.reserve(p);
  for (int j = 0; j < p; ++j) {
    const auto kind = static_cast<SampledKind>(rng.categorical(spec.weights));
    const double t = fixed ? (*fixed)[j] : rng.uniform(0.0, t_max);
    switch (kind) {
      case SampledKind::HyperbolicPlus:
        blocks.push_back(HyperbolicBlock::hyperbolic(t, 1));
        break;
      case SampledKind::HyperbolicMinus:
        blocks.push_back(HyperbolicBlock::hyperbolic(t, -1));
        break;
      case SampledKind::IotaPlus:
        blocks.push_back(HyperbolicBlock::iota(1));
        break;
      case SampledKind::IotaMinus:
        blocks.push_back(HyperbolicBlock::iota(-1));
        break;
    }
  }

  const ComplexMatrix frame = spec.random_frame
                                  ? haar_block_unitary(metric, rng)
                                  : ComplexMatrix(ComplexMatrix::Identity(metric.n(), metric.n()));
  UsppSample out;
  out.matrix = assemble_blocks(blocks, metric, frame);
  out.truth.metric = metric;
  out.truth.sign = 1;
  out.truth.frame = frame;
  out.truth.blocks = blocks;
  for (const auto& b : blocks) out.truth.raw_blocks.push_back(b.matrix());
  out.truth.reconstruction_residual = 0.0;
  return out;
}

LieElement sample_us_lie(const SignatureMetric& metric, std::uint64_t seed, double scale) {
  if (!(scale >= 0.0)) throw InputError("scale must be nonnegative");
  Rng rng(seed);
  return LieElement(metric, scale * complex_gaussian(metric.p(), metric.q(), rng));
}

ComplexMatrix sample_upq(const SignatureMetric& metric, std::uint64_t seed,
                         const UpqSampleOptions& options) {
  if (!(options.scale >= 0.0)) throw InputError("scale must be nonnegative");
  Rng rng(seed);
  const ComplexMatrix block = options.scale * complex_gaussian(metric.p(), metric.q(), rng);
  const ComplexMatrix hermitian = exp_us(LieElement(metric, block));
  if (options.identity_frame) return hermitian;
  return haar_block_unitary(metric, rng) * hermitian;
}

GeneratorSet sample_generators(const SignatureMetric& metric, std::uint64_t seed, int k) {
  const int p = metric.p();
  const int q = metric.q();
  if (k < 0 || k > std::min(p, q)) throw InputError("sample_generators requires 0 <= k <= min(p, q)");
  Rng rng(seed);
  const ComplexMatrix u = haar_unitary(std::max(p, 1), rng);
  const ComplexMatrix v = haar_unitary(std::max(q, 1), rng);
  GeneratorSet gens{metric, rng.uniform() < 0.5 ? 1 : -1, {}};
  for (int j = 0; j < k; ++j) {
    // alpha^2 in (0, 0.45] U [0.55, 1), so |lambda| <= 40.
    double a2 = rng.uniform(0.0, 0.9);
    a2 = a2 < 0.45 ? a2 : a2 + 0.1;
    a2 = std::clamp(a2, 1e-3, 1.0 - 1e-3);
    const double alpha = std::sqrt(a2);
    const double beta = std::sqrt(1.0 - a2);
    ComplexVector z(metric.n());
    z.head(p) = alpha * u.col(j).head(p);
    z.tail(q) = beta * v.col(j).head(q);
    gens.generators.push_back({2.0 / (a2 - (1.0 - a2)), std::move(z)});
  }
  return gens;
}

}  // namespace upq
