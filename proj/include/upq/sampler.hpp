#pragma once

// Seeded generators for test corpora: Haar unitaries, Hermitian members of
// U(p,p) with known block structure, Lie algebra elements, generic members
// of U(p,q) via M = (U (+) V) exp(T), and random valid generator sets.
//
// The bit stream is std::mt19937_64 (fully specified by the standard); the
// uniform and normal transforms are implemented here so that samples are
// identical across standard library implementations.

#include <array>
#include <cstdint>
#include <random>
#include <span>
#include <variant>
#include <vector>

#include "upq/canonical.hpp"
#include "upq/lie.hpp"

namespace upq {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform on [0, 1) with 53 random bits.
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  // Standard normal via Box-Muller.
  double normal();
  // Complex normal with E|z|^2 = 1.
  Complex complex_normal();
  // Index drawn with the given (nonnegative) weights.
  std::size_t categorical(std::span<const double> weights);

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

ComplexMatrix complex_gaussian(Eigen::Index rows, Eigen::Index cols, Rng& rng);

// QR of a complex Gaussian matrix with the phases of diag(R) folded back into Q.
ComplexMatrix haar_unitary(int n, Rng& rng);
ComplexMatrix haar_unitary(int n, std::uint64_t seed);

// U (+) V with independent Haar factors.
ComplexMatrix haar_block_unitary(const SignatureMetric& metric, Rng& rng);

struct UniformT {
  double t_max = 3.0;
};

// Order of SampleSpec::weights.
enum class SampledKind { HyperbolicPlus, HyperbolicMinus, IotaPlus, IotaMinus };

struct SampleSpec {
  SignatureMetric metric{1, 1};
  std::uint64_t seed = 0;
  // Either t ~ uniform(0, t_max) per block or one fixed t per block.
  std::variant<UniformT, std::vector<double>> t_distribution = UniformT{};
  std::array<double, 4> weights{0.4, 0.2, 0.2, 0.2};
  // false: Q = I, the block-diagonal form itself is returned.
  bool random_frame = true;
};

struct UsppSample {
  ComplexMatrix matrix;
  BlockDecomposition truth;
};

// Throws InputError for p != q, bad weights or a fixed t list of wrong length.
UsppSample sample_us_pp(const SampleSpec& spec);

// Block with independent complex Gaussian entries, E|T_ij|^2 = scale^2.
LieElement sample_us_lie(const SignatureMetric& metric, std::uint64_t seed, double scale = 1.0);

struct UpqSampleOptions {
  double scale = 1.0;           // scale of the Hermitian factor's generator
  bool identity_frame = false;  // force the unitary factor to I
};

// (U (+) V) * exp_us(T).
ComplexMatrix sample_upq(const SignatureMetric& metric, std::uint64_t seed,
                         const UpqSampleOptions& options = {});

// Random valid generator set with k generators (k <= min(p, q)): split parts
// are scaled columns of Haar unitaries, with alpha^2 kept away from 1/2.
GeneratorSet sample_generators(const SignatureMetric& metric, std::uint64_t seed, int k);

}  // namespace upq
