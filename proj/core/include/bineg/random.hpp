#pragma once

#include <cstdint>
#include <random>

#include "bineg/linalg.hpp"

namespace bineg {

// Seeded generator with independent substreams. The engine and the seeding
// algorithm are fully specified by the standard, and the distributions below
// are implemented here, so a (seed, stream) pair produces the same sequence on
// every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0);

  std::uint64_t next_u64() { return engine_(); }
  // Uniform on [0, 1) with 53 random bits.
  double uniform();
  // Standard normal (Box-Muller).
  double normal();
  // Real and imaginary parts independent standard normals.
  Complex complex_normal();
  // Uniform integer in [lo, hi].
  int uniform_int(int lo, int hi);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream() const { return stream_; }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

// rows x cols matrix of independent standard complex Gaussians.
Matrix gaussian_matrix(Eigen::Index rows, Eigen::Index cols, Rng& rng);

// Orthonormal columns from a full-column-rank input via QR, with the phases
// fixed so R has a positive diagonal. Haar-distributed when the input is
// Gaussian.
Matrix isometry_from(const Matrix& g);

Matrix haar_unitary(Eigen::Index n, Rng& rng);

// rows x cols isometry (V^dagger V = I_cols), Haar distributed.
Matrix haar_isometry(Eigen::Index rows, Eigen::Index cols, Rng& rng);

}  // namespace bineg
