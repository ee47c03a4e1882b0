#pragma once

#include <complex>
#include <span>

#include <Eigen/Dense>

namespace bineg {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

namespace tol {
// Tolerance ladder: each stage is one decade looser than its inputs.
inline constexpr double kLinalg = 1e-12;
inline constexpr double kZeroEigenvalue = 1e-11;
inline constexpr double kStructural = 1e-10;
inline constexpr double kMeasure = 1e-9;
inline constexpr double kOptimization = 1e-8;
}  // namespace tol

// Eigenvalues ascending; eigenvectors are the matching orthonormal columns.
struct HermitianEigenSystem {
  RealVector values;
  Matrix vectors;
};

struct HermitianParts {
  Matrix positive;
  Matrix negative;
};

// ||M - M^dagger||_F <= kLinalg * max(1, ||M||_F).
bool is_hermitian(const Matrix& m, double tol = tol::kLinalg);

// Cyclic Jacobi for two-qubit operators, Eigen's tridiagonal QL solver for
// anything larger (the 16 x 16 Choi matrices). Throws NotHermitian.
HermitianEigenSystem hermitian_eig(const Matrix& m);

// The two backends, exposed for cross-checking.
HermitianEigenSystem jacobi_eig(const Matrix& m);
HermitianEigenSystem tridiagonal_eig(const Matrix& m);

// Eigenvalues only, ascending.
RealVector hermitian_eigenvalues(const Matrix& m);

// Magnitude below which an eigenvalue of m counts as zero.
double zero_threshold(const Matrix& m);

// M = positive - negative with both PSD and positive * negative = 0.
// Eigenvalues within zero_threshold(m) are dropped from both parts.
HermitianParts hermitian_parts(const Matrix& m);
Matrix positive_part(const Matrix& m);
Matrix negative_part(const Matrix& m);

// Transpose of the second factor of a 4x4 operator on qubit (x) qubit, basis
// |00>,|01>,|10>,|11>. Throws WrongDimension.
Matrix partial_transpose(const Matrix& m);

// Transpose of the selected tensor factors. dims are the local dimensions in
// order (most significant first) and must multiply to m.rows().
Matrix partial_transpose(const Matrix& m, std::span<const int> dims,
                         std::span<const bool> transpose_factor);

// Clamps eigenvalues in [-kZeroEigenvalue, 0) to 0; throws NotPSD below that.
Matrix psd_sqrt(const Matrix& m);

Matrix kron(const Matrix& a, const Matrix& b);
Matrix dagger(const Matrix& m);
Complex trace(const Matrix& m);
double frobenius_distance(const Matrix& a, const Matrix& b);

// Projector |v><v|.
Matrix outer(const Vector& v);

}  // namespace bineg
