#include "bineg/measures.hpp"

#include <algorithm>
#include <cmath>

#include "bineg/errors.hpp"

namespace bineg {

namespace {

// Larger Schmidt coefficient of a unit two-qubit vector: for amplitude matrix
// A, mu (1 - mu) = |det A|^2.
double larger_schmidt_coefficient(const Vector& v) {
  const double det = std::abs(v(0) * v(3) - v(1) * v(2)) / v.squaredNorm();
  const double disc = std::max(0.0, 1.0 - 4.0 * det * det);
  return 0.5 * (1.0 + std::sqrt(disc));
}

}  // namespace

const Matrix& spin_flip_operator() {
  static const Matrix y = [] {
    Matrix m = Matrix::Zero(4, 4);
    m(0, 3) = -1.0;
    m(1, 2) = 1.0;
    m(2, 1) = 1.0;
    m(3, 0) = -1.0;
    return m;
  }();
  return y;
}

PartialTransposeSpectrum partial_transpose_spectrum(const DensityMatrix& rho) {
  const Matrix pt = partial_transpose(rho.matrix());
  const auto eig = hermitian_eig(pt);
  const double thr = zero_threshold(pt);

  PartialTransposeSpectrum out;
  out.eigenvalues = eig.values;
  Matrix neg = Matrix::Zero(4, 4);
  for (Eigen::Index k = 0; k < 4; ++k) {
    const double lambda = eig.values(k);
    if (lambda < -thr) {
      ++out.negative_count;
      neg -= lambda * outer(eig.vectors.col(k));
    }
  }
  if (out.negative_count == 0) return out;

  out.trace_negative = neg.trace().real();
  out.trace_negative_negative = negative_part(partial_transpose(neg)).trace().real();
  out.mu = larger_schmidt_coefficient(eig.vectors.col(0));
  return out;
}

double negativity(const DensityMatrix& rho) {
  return 2.0 * partial_transpose_spectrum(rho).trace_negative;
}

double binegativity(const DensityMatrix& rho) {
  const auto s = partial_transpose_spectrum(rho);
  return s.trace_negative + 2.0 * s.trace_negative_negative;
}

RealVector spin_flip_spectrum(const DensityMatrix& rho) {
  const auto eig = hermitian_eig(rho.matrix());
  Matrix w = Matrix::Zero(4, 4);
  for (Eigen::Index k = 0; k < 4; ++k) {
    const double lambda = eig.values(k);
    if (lambda > 0.0) w.col(k) = std::sqrt(lambda) * eig.vectors.col(k);
  }
  const Matrix tau = w.transpose() * spin_flip_operator() * w;
  Eigen::JacobiSVD<Matrix> svd(tau);
  RealVector s = RealVector::Zero(4);
  s.head(svd.singularValues().size()) = svd.singularValues();
  std::sort(s.data(), s.data() + 4, std::greater<>());
  return s;
}

RealVector spin_flip_spectrum_via_product(const DensityMatrix& rho) {
  const Matrix root = psd_sqrt(rho.matrix());
  const Matrix& y = spin_flip_operator();
  Matrix r = root * y * rho.matrix().conjugate() * y * root;
  r = 0.5 * (r + r.adjoint());
  RealVector ev = hermitian_eigenvalues(r);
  RealVector out(4);
  for (Eigen::Index k = 0; k < 4; ++k) out(k) = std::sqrt(std::max(0.0, ev(3 - k)));
  return out;
}

double concurrence(const DensityMatrix& rho) {
  const RealVector s = spin_flip_spectrum(rho);
  return std::clamp(s(0) - s(1) - s(2) - s(3), 0.0, 1.0);
}

std::optional<double> negative_eigvec_mu(const DensityMatrix& rho) {
  const auto s = partial_transpose_spectrum(rho);
  if (s.negative_count > 1) {
    throw MultipleNegativeEigenvalues("partial transpose has more than one negative eigenvalue");
  }
  return s.mu;
}

MeasureTriple measure_triple(const DensityMatrix& rho) {
  const auto s = partial_transpose_spectrum(rho);
  return {concurrence(rho), 2.0 * s.trace_negative,
          s.trace_negative + 2.0 * s.trace_negative_negative};
}

ClosedFormResult closed_form_pqr(const FamilyParams& params) {
  const double p = params.p;
  const double q = params.q;
  const double r = params.r;
  if (!(p >= 0.0 && p <= 1.0 && q >= 0.0 && q <= 1.0 && r >= 0.0 && r <= 1.0)) {
    throw OutOfRange("closed_form_pqr: p, q, r must lie in [0, 1]");
  }

  ClosedFormResult out;
  auto& d = out.derived;
  d.alpha = p * p * q * (1.0 - q);
  d.beta = (1.0 - p) * (1.0 - p) * r * (1.0 - r);

  double nu = 0.0;
  double mu_raw = 1.0;
  if (d.alpha <= d.beta) {
    const double s = std::sqrt(4.0 * (d.beta - d.alpha) + p * p);
    nu = s - p;
    const double t = s + p * (1.0 - 2.0 * q);
    const double denom = 4.0 * d.beta + t * t;
    if (denom > 0.0) mu_raw = 4.0 * d.beta / denom;
  } else {
    const double s = std::sqrt(4.0 * (d.alpha - d.beta) + (1.0 - p) * (1.0 - p));
    nu = s - (1.0 - p);
    const double t = s + (1.0 - p) * (1.0 - 2.0 * r);
    const double denom = 4.0 * d.alpha + t * t;
    if (denom > 0.0) mu_raw = 4.0 * d.alpha / denom;
  }
  d.mu = std::max(mu_raw, 1.0 - mu_raw);
  nu = std::max(nu, 0.0);

  out.measures.c = 2.0 * std::abs(std::sqrt(d.alpha) - std::sqrt(d.beta));
  out.measures.nu = nu;
  out.measures.n2 = nu * (0.5 + std::sqrt(d.mu * (1.0 - d.mu)));
  return out;
}

}  // namespace bineg
