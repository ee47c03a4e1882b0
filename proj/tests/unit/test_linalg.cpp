#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <vector>

#include "bineg/errors.hpp"
#include "bineg/linalg.hpp"
#include "bineg/random.hpp"

namespace bineg {
namespace {

Matrix random_hermitian(Eigen::Index n, Rng& rng) {
  const Matrix g = gaussian_matrix(n, n, rng);
  return 0.5 * (g + g.adjoint());
}

// Eigenvalues from Eigen's general complex Schur solver, which does not use
// Hermitian structure.
std::vector<double> schur_eigenvalues(const Matrix& m) {
  Eigen::ComplexEigenSolver<Matrix> solver(m, false);
  std::vector<double> out;
  for (Eigen::Index k = 0; k < m.rows(); ++k) out.push_back(solver.eigenvalues()(k).real());
  std::sort(out.begin(), out.end());
  return out;
}

// Direct index definition of the transpose on B.
Matrix pt_oracle(const Matrix& m) {
  Matrix out(4, 4);
  for (int row = 0; row < 4; ++row) {
    for (int col = 0; col < 4; ++col) {
      const int a = row / 2, b = row % 2, ap = col / 2, bp = col % 2;
      out(row, col) = m(2 * a + bp, 2 * ap + b);
    }
  }
  return out;
}

TEST(HermitianEig, ReconstructsRandomMatrices) {
  for (Eigen::Index n : {1, 2, 3, 4, 8, 16}) {
    for (std::uint64_t i = 0; i < 200; ++i) {
      Rng rng(7, i);
      const Matrix a = random_hermitian(n, rng);
      const auto eig = hermitian_eig(a);
      const Matrix back = eig.vectors * eig.values.asDiagonal() * eig.vectors.adjoint();
      EXPECT_LE((back - a).norm(), 1e-12 * std::max(1.0, a.norm())) << "n=" << n;
      EXPECT_LE((eig.vectors.adjoint() * eig.vectors - Matrix::Identity(n, n)).norm(), 1e-12);
      for (Eigen::Index k = 1; k < n; ++k) EXPECT_LE(eig.values(k - 1), eig.values(k));
    }
  }
}

TEST(HermitianEig, EigenvaluesMatchGeneralSolver) {
  for (std::uint64_t i = 0; i < 100; ++i) {
    Rng rng(11, i);
    const Matrix a = random_hermitian(4, rng);
    const auto ours = hermitian_eigenvalues(a);
    const auto ref = schur_eigenvalues(a);
    for (int k = 0; k < 4; ++k) EXPECT_NEAR(ours(k), ref[static_cast<std::size_t>(k)], 1e-12);
  }
}

TEST(HermitianEig, BackendsAgreeOnSixteenBySixteen) {
  Rng rng(3);
  const Matrix a = random_hermitian(16, rng);
  const auto j = jacobi_eig(a);
  const auto t = tridiagonal_eig(a);
  EXPECT_LE((j.values - t.values).norm(), 1e-12 * a.norm());
}

TEST(HermitianEig, DegenerateAndDiagonalInputs) {
  const Matrix id = Matrix::Identity(4, 4);
  const auto eig = hermitian_eig(id);
  for (int k = 0; k < 4; ++k) EXPECT_DOUBLE_EQ(eig.values(k), 1.0);

  Matrix d = Matrix::Zero(4, 4);
  d.diagonal() << 3.0, -1.0, 2.0, 0.0;
  const auto v = hermitian_eigenvalues(d);
  EXPECT_DOUBLE_EQ(v(0), -1.0);
  EXPECT_DOUBLE_EQ(v(3), 3.0);

  // Rank one projector with a complex phase.
  Vector psi(4);
  psi << Complex(0.5, 0.0), Complex(0.0, 0.5), Complex(-0.5, 0.0), Complex(0.0, -0.5);
  const auto p = hermitian_eigenvalues(outer(psi));
  EXPECT_NEAR(p(3), 1.0, 1e-14);
  EXPECT_NEAR(p(0), 0.0, 1e-14);
}

TEST(HermitianEig, RejectsBadInput) {
  Matrix a = Matrix::Zero(4, 4);
  a(0, 1) = 1.0;
  EXPECT_THROW(hermitian_eig(a), NotHermitian);
  EXPECT_THROW(hermitian_eig(Matrix::Zero(3, 4)), WrongDimension);
  EXPECT_THROW(hermitian_eig(Matrix(0, 0)), WrongDimension);
}

TEST(HermitianParts, SplitIsExact) {
  Rng rng(5);
  const Matrix a = random_hermitian(4, rng);
  const auto parts = hermitian_parts(a);
  EXPECT_LE((parts.positive - parts.negative - a).norm(), 1e-12);
  EXPECT_GE(hermitian_eigenvalues(parts.positive)(0), -1e-12);
  EXPECT_GE(hermitian_eigenvalues(parts.negative)(0), -1e-12);
  EXPECT_LE((parts.positive * parts.negative).norm(), 1e-12);
}

TEST(HermitianParts, TinyEigenvaluesCountAsZero) {
  Matrix d = Matrix::Zero(4, 4);
  d.diagonal() << 1.0, -1e-13, 0.5, 0.0;
  EXPECT_EQ(negative_part(d).norm(), 0.0);
}

TEST(PartialTranspose, MatchesIndexDefinition) {
  Rng rng(9);
  const Matrix a = gaussian_matrix(4, 4, rng);
  EXPECT_EQ((partial_transpose(a) - pt_oracle(a)).norm(), 0.0);
  EXPECT_EQ((partial_transpose(partial_transpose(a)) - a).norm(), 0.0);

  const int dims[] = {2, 2};
  const bool on_b[] = {false, true};
  EXPECT_EQ((partial_transpose(a, dims, on_b) - pt_oracle(a)).norm(), 0.0);
  const bool both[] = {true, true};
  EXPECT_EQ((partial_transpose(a, dims, both) - a.transpose()).norm(), 0.0);
}

TEST(PartialTranspose, GeneralVersionOnFourFactors) {
  Rng rng(13);
  const Matrix a = gaussian_matrix(2, 2, rng);
  const Matrix b = gaussian_matrix(2, 2, rng);
  const Matrix c = gaussian_matrix(2, 2, rng);
  const Matrix d = gaussian_matrix(2, 2, rng);
  const Matrix m = kron(kron(a, b), kron(c, d));
  const int dims[] = {2, 2, 2, 2};
  const bool mask[] = {false, true, false, true};
  const Matrix expect = kron(kron(a, b.transpose()), kron(c, d.transpose()));
  EXPECT_LE((partial_transpose(m, dims, mask) - expect).norm(), 1e-12);
}

TEST(PartialTranspose, RejectsWrongShape) {
  EXPECT_THROW(partial_transpose(Matrix::Zero(3, 3)), WrongDimension);
  const int dims[] = {2, 3};
  const bool mask[] = {false, true};
  EXPECT_THROW(partial_transpose(Matrix::Zero(4, 4), dims, mask), Error);
}

TEST(PsdSqrt, SquaresBack) {
  Rng rng(17);
  const Matrix g = gaussian_matrix(4, 2, rng);
  const Matrix p = g * g.adjoint();
  const Matrix s = psd_sqrt(p);
  EXPECT_LE((s * s - p).norm(), 1e-12 * p.norm());
  EXPECT_THROW(psd_sqrt(-Matrix::Identity(4, 4)), NotPSD);
}

TEST(Kron, MixedProductRule) {
  Rng rng(19);
  const Matrix a = gaussian_matrix(2, 2, rng), b = gaussian_matrix(2, 3, rng);
  const Matrix c = gaussian_matrix(2, 2, rng), d = gaussian_matrix(3, 2, rng);
  EXPECT_LE((kron(a, b) * kron(c, d) - kron(a * c, b * d)).norm(), 1e-12);
  EXPECT_EQ(kron(a, b).rows(), 4);
  EXPECT_EQ(kron(a, b).cols(), 6);
}

TEST(IsHermitian, ToleranceScalesWithNorm) {
  Matrix a = 1e6 * Matrix::Identity(2, 2);
  a(0, 1) = 1e-7;
  EXPECT_TRUE(is_hermitian(a));
  a(0, 1) = 1.0;
  EXPECT_FALSE(is_hermitian(a));
}

}  // namespace
}  // namespace bineg
