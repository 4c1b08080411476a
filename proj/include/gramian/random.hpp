#pragma once

#include <cstdint>
#include <optional>
#include <random>

#include "gramian/matrix_core.hpp"

namespace gkit {

/// Seedable, splittable random stream.
///
/// The engine is std::mt19937_64 (its output sequence is fixed by the
/// standard). Uniform and Gaussian variates are derived here rather than through
/// the <random> distributions, whose algorithms are implementation-defined, so
/// a seed reproduces the same doubles with any standard library.
///
/// split(k) derives an independent child stream from (seed, k) alone, which
/// lets parallel workers draw per-trial streams without sharing state.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t seed() const noexcept { return seed_; }
  Rng split(std::uint64_t stream) const;

  std::uint64_t next_u64();
  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  /// Uniform integer in [lo, hi].
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);
  double normal();
  /// Standard complex Gaussian: real and imaginary parts N(0, 1/2).
  Complex complex_normal();

  ComplexMatrix gaussian(Eigen::Index rows, Eigen::Index cols);
  /// Haar-distributed unitary: QR of a complex Gaussian matrix with the
  /// phases of diag(R) folded back into Q.
  ComplexMatrix haar_unitary(Eigen::Index n);

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
  std::optional<double> spare_normal_;
};

/// SplitMix64 finalizer; used to decorrelate derived seeds.
std::uint64_t mix64(std::uint64_t x) noexcept;

}  // namespace gkit
