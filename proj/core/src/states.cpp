#include "bineg/states.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "bineg/errors.hpp"

namespace bineg {

namespace {

constexpr double kParamSlack = 1e-12;
constexpr double kSqrtClamp = 1e-12;

double checked_unit(double x, const char* what) {
  if (!(x >= -kParamSlack && x <= 1.0 + kParamSlack)) {
    throw OutOfRange(std::string(what) + " must lie in [0, 1]");
  }
  return std::clamp(x, 0.0, 1.0);
}

double clamped_sqrt(double x, const char* what) {
  if (x < -kSqrtClamp) throw InfeasibleRegion(std::string(what) + ": negative square-root argument");
  return std::sqrt(std::max(x, 0.0));
}

}  // namespace

PureState::PureState(Vector amplitudes) : amps_(std::move(amplitudes)) {
  if (amps_.size() != 4) throw InvalidState("dimension: pure state needs 4 amplitudes");
  if (!amps_.allFinite()) throw InvalidState("finite: amplitudes contain NaN or Inf");
  if (std::abs(amps_.norm() - 1.0) > tol::kLinalg) throw InvalidState("norm: amplitudes are not unit norm");
}

PureState PureState::normalized(const Vector& v) {
  const double n = v.norm();
  if (!(n > 0.0) || !std::isfinite(n)) throw InvalidState("norm: cannot normalize a zero vector");
  return PureState(v / n);
}

DensityMatrix::DensityMatrix(const Matrix& m) {
  if (m.rows() != 4 || m.cols() != 4) throw InvalidState("dimension: density matrix must be 4x4");
  if (!m.allFinite()) throw InvalidState("finite: entries contain NaN or Inf");
  if (!is_hermitian(m)) throw InvalidState("hermitian: matrix is not Hermitian");
  m_ = 0.5 * (m + m.adjoint());
  if (std::abs(m_.trace().real() - 1.0) > tol::kZeroEigenvalue) {
    throw InvalidState("trace: trace differs from 1");
  }
  if (hermitian_eigenvalues(m_)(0) < -tol::kZeroEigenvalue) {
    throw InvalidState("psd: matrix has a negative eigenvalue");
  }
}

DensityMatrix::DensityMatrix(const PureState& psi) : DensityMatrix(psi.projector()) {}

Vector SchmidtForm::reconstruct() const {
  Vector core = Vector::Zero(4);
  core(0) = std::sqrt(mu);
  core(3) = std::sqrt(std::max(0.0, 1.0 - mu));
  return kron(local_a, local_b) * core;
}

PureState basis_state(int index) {
  if (index < 0 || index > 3) throw OutOfRange("basis_state: index must be 0..3");
  Vector v = Vector::Zero(4);
  v(index) = 1.0;
  return PureState(v);
}

PureState phi_q(double q) {
  q = checked_unit(q, "phi_q: q");
  Vector v = Vector::Zero(4);
  v(0) = std::sqrt(q);
  v(3) = std::sqrt(1.0 - q);
  return PureState(v);
}

PureState psi_r(double r) {
  r = checked_unit(r, "psi_r: r");
  Vector v = Vector::Zero(4);
  v(1) = std::sqrt(r);
  v(2) = -std::sqrt(1.0 - r);
  return PureState(v);
}

PureState phi_plus() { return phi_q(0.5); }

PureState psi_minus_0011() {
  Vector v = Vector::Zero(4);
  v(0) = std::sqrt(0.5);
  v(3) = -std::sqrt(0.5);
  return PureState(v);
}

DensityMatrix sigma_pqr(const FamilyParams& params) {
  const double p = checked_unit(params.p, "sigma_pqr: p");
  const double q = checked_unit(params.q, "sigma_pqr: q");
  const double r = checked_unit(params.r, "sigma_pqr: r");
  const double a = p * std::sqrt(q * (1.0 - q));
  const double b = (1.0 - p) * std::sqrt(r * (1.0 - r));
  Matrix m = Matrix::Zero(4, 4);
  m(0, 0) = p * q;
  m(0, 3) = a;
  m(3, 0) = a;
  m(3, 3) = p * (1.0 - q);
  m(1, 1) = (1.0 - p) * r;
  m(1, 2) = -b;
  m(2, 1) = -b;
  m(2, 2) = (1.0 - p) * (1.0 - r);
  return DensityMatrix(m);
}

DensityMatrix sigma_mems(double c) {
  c = checked_unit(c, "sigma_mems: c");
  Matrix m = c * phi_plus().projector();
  m(2, 2) += 1.0 - c;
  return DensityMatrix(m);
}

FamilyParams rho1_params() { return {7.0 / 48.0, 1.0, 0.5 + std::sqrt(1105.0) / 82.0}; }

FamilyParams rho2_params() { return {39.0 / 112.0, 0.5 + 2.0 * std::sqrt(77.0) / 39.0, 0.5}; }

DensityMatrix rho1() { return sigma_pqr(rho1_params()); }

DensityMatrix rho2() { return sigma_pqr(rho2_params()); }

FamilyParams boundary_params(double c, double nu, double p) {
  const BoundaryRange range = boundary_p_range(c, nu);
  if (p < range.p_min - kParamSlack || p > range.p_max + kParamSlack) {
    throw OutOfRange("boundary_family: p outside [p_min, p_max]");
  }
  p = std::clamp(p, range.p_min, range.p_max);

  const double q_arg = (p - 0.5 * (c - nu)) * (p + 0.5 * (c + nu));
  const double r_arg = (p - 0.5 * (c - nu) - c * (nu + 1.0) / (c - nu)) *
                       (p + 0.5 * (c + nu) - c * (nu + 1.0) / (c + nu));
  clamped_sqrt(q_arg, "boundary_family q_p");
  clamped_sqrt(r_arg, "boundary_family r_p");
  // Same values as 1/2 + scale/p sqrt(q_arg) and 1/2 + scale/(1-p) sqrt(r_arg),
  // rewritten through q(1-q) and r(1-r) so they stay inside [1/2, 1].
  const double sq = nu * std::max(p - range.p_min, 0.0) / (2.0 * c * p);
  const double sr = (c * c + nu * nu + 2.0 * nu * p) / (4.0 * c * (1.0 - p));
  const double q = 0.5 + std::sqrt(std::max(0.25 - sq * sq, 0.0));
  const double r = 0.5 + std::sqrt(std::max(0.25 - sr * sr, 0.0));
  return {p, q, r};
}

// Built entrywise rather than through sigma_pqr: q_p reaches 1 at p_min, where
// sqrt(q (1 - q)) from a rounded q would carry an error of order sqrt(eps).
// The off-diagonal weights have the polynomial forms
//   p sqrt(q(1-q)) = nu (p - p_min) / (2c),  (1-p) sqrt(r(1-r)) = (c^2 + nu^2 + 2 nu p) / (4c)
// and the small diagonal weights follow from them.
DensityMatrix boundary_family(double c, double nu, double p) {
  const FamilyParams fp = boundary_params(c, nu, p);
  const double p_min = boundary_p_range(c, nu).p_min;
  const double a = nu * std::max(fp.p - p_min, 0.0) / (2.0 * c);
  const double b = (c * c + nu * nu + 2.0 * nu * fp.p) / (4.0 * c);
  const double pq = fp.p * fp.q;
  const double pr = (1.0 - fp.p) * fp.r;
  Matrix m = Matrix::Zero(4, 4);
  m(0, 0) = pq;
  m(0, 3) = a;
  m(3, 0) = a;
  m(3, 3) = pq > 0.0 ? a * a / pq : 0.0;
  m(1, 1) = pr;
  m(1, 2) = -b;
  m(2, 1) = -b;
  m(2, 2) = pr > 0.0 ? b * b / pr : 0.0;
  return DensityMatrix(m);
}

SchmidtForm schmidt(const PureState& psi) {
  const Vector& v = psi.amplitudes();
  Eigen::Matrix2cd amp;
  amp << v(0), v(1), v(2), v(3);
  // amp = U S V^dagger, so |psi> = sum_i s_i |u_i> (x) conj(|v_i>).
  Eigen::JacobiSVD<Eigen::Matrix2cd> svd(amp, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  SchmidtForm out;
  out.local_a = svd.matrixU();
  out.local_b = svd.matrixV().conjugate();
  const double norm = std::hypot(s(0), s(1));
  out.mu = std::clamp((s(0) / norm) * (s(0) / norm), 0.5, 1.0);
  return out;
}

PureState random_pure(Rng& rng) { return PureState::normalized(gaussian_matrix(4, 1, rng).col(0)); }

PureState random_pure(std::uint64_t seed) {
  Rng rng(seed);
  return random_pure(rng);
}

DensityMatrix state_from_factor(const Matrix& g) {
  if (g.rows() != 4 || g.cols() < 1) throw WrongDimension("state_from_factor: factor must be 4 x k");
  Matrix m = g * g.adjoint();
  const double t = m.trace().real();
  if (!(t > 0.0) || !std::isfinite(t)) throw InvalidState("trace: factor is zero");
  return DensityMatrix(m / t);
}

DensityMatrix random_mixed(int rank, Rng& rng) {
  if (rank < 1 || rank > 4) throw OutOfRange("random_mixed: rank must be 1..4");
  return state_from_factor(gaussian_matrix(4, rank, rng));
}

DensityMatrix random_mixed(int rank, std::uint64_t seed) {
  Rng rng(seed);
  return random_mixed(rank, rng);
}

bool is_ppt(const DensityMatrix& rho) {
  const Matrix pt = partial_transpose(rho.matrix());
  return hermitian_eigenvalues(pt)(0) >= -zero_threshold(pt);
}

}  // namespace bineg
