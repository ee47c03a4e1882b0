#include "bineg/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include <Eigen/Eigenvalues>

#include "bineg/errors.hpp"

namespace bineg {

namespace {

constexpr int kMaxSweeps = 60;
constexpr Eigen::Index kJacobiMaxDim = 4;
constexpr double kSkipRelative = 1e-16;

void require_square(const Matrix& m, const char* what) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw WrongDimension(std::string(what) + ": matrix must be square and non-empty");
  }
}

}  // namespace

bool is_hermitian(const Matrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  const double scale = std::max(1.0, m.norm());
  return (m - m.adjoint()).norm() <= tol * scale;
}

HermitianEigenSystem jacobi_eig(const Matrix& m) {
  require_square(m, "jacobi_eig");
  if (!is_hermitian(m)) throw NotHermitian("jacobi_eig: input is not Hermitian");

  const Eigen::Index n = m.rows();
  Matrix a = 0.5 * (m + m.adjoint());
  Matrix v = Matrix::Identity(n, n);
  const double skip = kSkipRelative * std::max(a.norm(), 1e-300);

  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    int rotations = 0;
    for (Eigen::Index p = 0; p < n - 1; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const Complex apq = a(p, q);
        const double mag = std::abs(apq);
        if (mag <= skip) continue;
        ++rotations;

        // Phase-rotate column q so the pivot is real, then apply a real
        // Jacobi rotation. G = diag(1, conj(w)) * [[c, s], [-s, c]].
        const Complex w = apq / mag;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double theta = (aqq - app) / (2.0 * mag);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        const Complex gpp = c;
        const Complex gpq = s;
        const Complex gqp = -s * std::conj(w);
        const Complex gqq = c * std::conj(w);

        for (Eigen::Index k = 0; k < n; ++k) {
          const Complex akp = a(k, p);
          const Complex akq = a(k, q);
          a(k, p) = akp * gpp + akq * gqp;
          a(k, q) = akp * gpq + akq * gqq;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const Complex apk = a(p, k);
          const Complex aqk = a(q, k);
          a(p, k) = std::conj(gpp) * apk + std::conj(gqp) * aqk;
          a(q, k) = std::conj(gpq) * apk + std::conj(gqq) * aqk;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const Complex vkp = v(k, p);
          const Complex vkq = v(k, q);
          v(k, p) = vkp * gpp + vkq * gqp;
          v(k, q) = vkp * gpq + vkq * gqq;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
      }
    }
    if (rotations == 0) break;
  }

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index i, Eigen::Index j) {
    return a(i, i).real() < a(j, j).real();
  });

  HermitianEigenSystem out{RealVector(n), Matrix(n, n)};
  for (Eigen::Index k = 0; k < n; ++k) {
    const Eigen::Index src = order[static_cast<std::size_t>(k)];
    out.values(k) = a(src, src).real();
    out.vectors.col(k) = v.col(src);
  }
  return out;
}

HermitianEigenSystem tridiagonal_eig(const Matrix& m) {
  require_square(m, "tridiagonal_eig");
  if (!is_hermitian(m)) throw NotHermitian("tridiagonal_eig: input is not Hermitian");
  Eigen::SelfAdjointEigenSolver<Matrix> solver(0.5 * (m + m.adjoint()));
  if (solver.info() != Eigen::Success) throw NoConvergence("tridiagonal_eig: QL iteration failed");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

HermitianEigenSystem hermitian_eig(const Matrix& m) {
  return m.rows() <= kJacobiMaxDim ? jacobi_eig(m) : tridiagonal_eig(m);
}

RealVector hermitian_eigenvalues(const Matrix& m) { return hermitian_eig(m).values; }

double zero_threshold(const Matrix& m) {
  return tol::kZeroEigenvalue * std::max(1.0, m.norm());
}

HermitianParts hermitian_parts(const Matrix& m) {
  const auto eig = hermitian_eig(m);
  const double thr = zero_threshold(m);
  const Eigen::Index n = m.rows();
  HermitianParts parts{Matrix::Zero(n, n), Matrix::Zero(n, n)};
  for (Eigen::Index k = 0; k < n; ++k) {
    const double lambda = eig.values(k);
    if (lambda > thr) {
      parts.positive += lambda * outer(eig.vectors.col(k));
    } else if (lambda < -thr) {
      parts.negative += (-lambda) * outer(eig.vectors.col(k));
    }
  }
  return parts;
}

Matrix positive_part(const Matrix& m) { return hermitian_parts(m).positive; }

Matrix negative_part(const Matrix& m) { return hermitian_parts(m).negative; }

Matrix partial_transpose(const Matrix& m) {
  if (m.rows() != 4 || m.cols() != 4) {
    throw WrongDimension("partial_transpose: expected a 4x4 two-qubit operator");
  }
  Matrix out(4, 4);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int ap = 0; ap < 2; ++ap)
        for (int bp = 0; bp < 2; ++bp) out(2 * a + b, 2 * ap + bp) = m(2 * a + bp, 2 * ap + b);
  return out;
}

Matrix partial_transpose(const Matrix& m, std::span<const int> dims,
                         std::span<const bool> transpose_factor) {
  require_square(m, "partial_transpose");
  if (dims.size() != transpose_factor.size() || dims.empty()) {
    throw DimensionMismatch("partial_transpose: dims and mask differ in length");
  }
  const int total = std::accumulate(dims.begin(), dims.end(), 1, std::multiplies<>());
  if (total != m.rows()) {
    throw DimensionMismatch("partial_transpose: factor dimensions do not match matrix size");
  }

  const std::size_t nf = dims.size();
  std::vector<int> stride(nf, 1);
  for (std::size_t f = nf - 1; f-- > 0;) stride[f] = stride[f + 1] * dims[f + 1];

  Matrix out(total, total);
  for (int row = 0; row < total; ++row) {
    for (int col = 0; col < total; ++col) {
      int src_row = 0;
      int src_col = 0;
      for (std::size_t f = 0; f < nf; ++f) {
        const int rd = (row / stride[f]) % dims[f];
        const int cd = (col / stride[f]) % dims[f];
        if (transpose_factor[f]) {
          src_row += cd * stride[f];
          src_col += rd * stride[f];
        } else {
          src_row += rd * stride[f];
          src_col += cd * stride[f];
        }
      }
      out(row, col) = m(src_row, src_col);
    }
  }
  return out;
}

Matrix psd_sqrt(const Matrix& m) {
  const auto eig = hermitian_eig(m);
  const double thr = zero_threshold(m);
  const Eigen::Index n = m.rows();
  Matrix out = Matrix::Zero(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const double lambda = eig.values(k);
    if (lambda < -thr) throw NotPSD("psd_sqrt: matrix has a negative eigenvalue");
    if (lambda > 0.0) out += std::sqrt(lambda) * outer(eig.vectors.col(k));
  }
  return out;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Matrix dagger(const Matrix& m) { return m.adjoint(); }

Complex trace(const Matrix& m) { return m.trace(); }

double frobenius_distance(const Matrix& a, const Matrix& b) { return (a - b).norm(); }

Matrix outer(const Vector& v) { return v * v.adjoint(); }

}  // namespace bineg
