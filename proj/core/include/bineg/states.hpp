#pragma once

#include <cstdint>

#include "bineg/bounds.hpp"
#include "bineg/linalg.hpp"
#include "bineg/random.hpp"

namespace bineg {

// Unit vector in C^2 (x) C^2, basis |00>,|01>,|10>,|11>.
class PureState {
 public:
  // Throws InvalidState unless the vector has 4 finite entries and unit norm
  // to kLinalg.
  explicit PureState(Vector amplitudes);
  static PureState normalized(const Vector& v);

  const Vector& amplitudes() const { return amps_; }
  Matrix projector() const { return outer(amps_); }

 private:
  Vector amps_;
};

// Two-qubit density matrix. The constructor enforces every invariant and
// names the one that fails: dimension, finite, hermitian, psd, trace.
class DensityMatrix {
 public:
  explicit DensityMatrix(const Matrix& m);
  explicit DensityMatrix(const PureState& psi);

  const Matrix& matrix() const { return m_; }

 private:
  Matrix m_;
};

struct FamilyParams {
  double p = 0.0;
  double q = 0.0;
  double r = 0.0;
};

// rho = (U_A (x) U_B)(sqrt(mu)|00> + sqrt(1-mu)|11>), mu >= 1/2.
struct SchmidtForm {
  double mu = 1.0;
  Matrix local_a;
  Matrix local_b;

  Vector reconstruct() const;
};

PureState basis_state(int index);
// sqrt(q)|00> + sqrt(1-q)|11>
PureState phi_q(double q);
// sqrt(r)|01> - sqrt(1-r)|10>
PureState psi_r(double r);
PureState phi_plus();
// (|00> - |11>)/sqrt(2)
PureState psi_minus_0011();

// p|phi_q><phi_q| + (1-p)|psi_r><psi_r|, assembled entrywise.
DensityMatrix sigma_pqr(const FamilyParams& params);
// c|phi+><phi+| + (1-c)|10><10|
DensityMatrix sigma_mems(double c);

FamilyParams rho1_params();
FamilyParams rho2_params();
DensityMatrix rho1();
DensityMatrix rho2();

// (p, q_p, r_p). Throws OutOfRange when p is outside the range.
FamilyParams boundary_params(double c, double nu, double p);
DensityMatrix boundary_family(double c, double nu, double p);

SchmidtForm schmidt(const PureState& psi);

// Normalized vector of independent complex Gaussians.
PureState random_pure(Rng& rng);
PureState random_pure(std::uint64_t seed);
// G G^dagger / Tr(G G^dagger) with G a 4 x rank complex Gaussian matrix.
DensityMatrix random_mixed(int rank, Rng& rng);
DensityMatrix random_mixed(int rank, std::uint64_t seed);
// Density matrix from a 4 x k factor: G G^dagger / Tr(G G^dagger).
DensityMatrix state_from_factor(const Matrix& g);

// Min eigenvalue of rho^Gamma >= -kZeroEigenvalue. For two qubits this is
// exactly separability.
bool is_ppt(const DensityMatrix& rho);

}  // namespace bineg
