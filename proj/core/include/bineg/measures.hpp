#pragma once

#include <optional>

#include "bineg/bounds.hpp"
#include "bineg/states.hpp"

namespace bineg {

struct MeasureTriple {
  double c = 0.0;
  double nu = 0.0;
  double n2 = 0.0;
};

struct PqrDerived {
  double alpha = 0.0;
  double beta = 0.0;
  double mu = 1.0;
};

struct ClosedFormResult {
  MeasureTriple measures;
  PqrDerived derived;
};

// Spectral data of rho^Gamma shared by the negativity-type quantities.
struct PartialTransposeSpectrum {
  RealVector eigenvalues;     // ascending
  int negative_count = 0;     // eigenvalues below -zero_threshold
  double trace_negative = 0.0;         // Tr[(rho^Gamma)_-]
  double trace_negative_negative = 0.0;  // Tr[(((rho^Gamma)_-)^Gamma)_-]
  // Larger Schmidt coefficient of the eigenvector of the most negative
  // eigenvalue; empty when rho is PPT.
  std::optional<double> mu;
};

PartialTransposeSpectrum partial_transpose_spectrum(const DensityMatrix& rho);

// 2 Tr[(rho^Gamma)_-]
double negativity(const DensityMatrix& rho);
// Tr[(rho^Gamma)_-] + 2 Tr[(((rho^Gamma)_-)^Gamma)_-]
double binegativity(const DensityMatrix& rho);

// Wootters concurrence. The spin-flip spectrum is obtained as the singular
// values of tau = W^T (sigma_y (x) sigma_y) W for rho = W W^dagger, which
// stays accurate for rank-deficient states.
double concurrence(const DensityMatrix& rho);
// Square roots of the eigenvalues of the Hermitian product
// sqrt(rho) (Y) conj(rho) (Y) sqrt(rho), decreasing. Reference route;
// loses accuracy around zero eigenvalues.
RealVector spin_flip_spectrum_via_product(const DensityMatrix& rho);
// Decreasing singular values of tau, padded to 4.
RealVector spin_flip_spectrum(const DensityMatrix& rho);

// Empty for PPT states. Throws MultipleNegativeEigenvalues when rho^Gamma
// has more than one eigenvalue below the zero threshold.
std::optional<double> negative_eigvec_mu(const DensityMatrix& rho);

MeasureTriple measure_triple(const DensityMatrix& rho);

// Exact formulas for sigma(p, q, r).
ClosedFormResult closed_form_pqr(const FamilyParams& params);

// sigma_y (x) sigma_y
const Matrix& spin_flip_operator();

}  // namespace bineg
