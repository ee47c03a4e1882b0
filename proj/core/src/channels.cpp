#include "bineg/channels.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "bineg/errors.hpp"

namespace bineg {

namespace {

constexpr double kTraceRenormSlack = 1e-9;
// Lower bound on the eigenvalues of J and J^Gamma after the interior mix.
constexpr double kInteriorMargin = 1e-13;

Matrix psd_projection(const Matrix& x) {
  const auto eig = hermitian_eig(0.5 * (x + x.adjoint()));
  const Eigen::Index n = x.rows();
  Matrix out = Matrix::Zero(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    if (eig.values(k) > 0.0) out += eig.values(k) * outer(eig.vectors.col(k));
  }
  return out;
}

double min_eigenvalue(const Matrix& x) { return hermitian_eigenvalues(x)(0); }

Matrix hermitize(const Matrix& x) { return 0.5 * (x + x.adjoint()); }

}  // namespace

KrausChannel::KrausChannel(std::vector<Matrix> ops, int dim_in, int dim_out)
    : ops_(std::move(ops)), dim_in_(dim_in), dim_out_(dim_out) {
  if (ops_.empty()) throw DimensionMismatch("KrausChannel: needs at least one operator");
  if (dim_in_ <= 0 || dim_out_ <= 0) throw DimensionMismatch("KrausChannel: dimensions must be positive");
  for (const auto& k : ops_) {
    if (k.rows() != dim_out_ || k.cols() != dim_in_) {
      throw DimensionMismatch("KrausChannel: operator shape differs from dim_out x dim_in");
    }
    if (!k.allFinite()) throw InvalidState("finite: Kraus operator contains NaN or Inf");
  }
  if (completeness_error() > tol::kStructural) {
    throw InvalidState("completeness: sum K^dagger K differs from identity");
  }
}

KrausChannel::KrausChannel(std::vector<Matrix> ops)
    : KrausChannel(ops, ops.empty() ? 0 : static_cast<int>(ops.front().cols()),
                   ops.empty() ? 0 : static_cast<int>(ops.front().rows())) {}

double KrausChannel::completeness_error() const {
  Matrix sum = Matrix::Zero(dim_in_, dim_in_);
  for (const auto& k : ops_) sum += k.adjoint() * k;
  return (sum - Matrix::Identity(dim_in_, dim_in_)).norm();
}

std::string_view to_string(ChannelKind kind) {
  switch (kind) {
    case ChannelKind::LocalUnitary:
      return "local_unitary";
    case ChannelKind::Local:
      return "local";
    case ChannelKind::OneWayLocc:
      return "one_way_locc";
    case ChannelKind::Ppt:
      return "ppt";
  }
  return "unknown";
}

ChannelKind parse_channel_kind(std::string_view name) {
  for (auto kind : {ChannelKind::LocalUnitary, ChannelKind::Local, ChannelKind::OneWayLocc,
                    ChannelKind::Ppt}) {
    if (name == to_string(kind)) return kind;
  }
  throw ParseError("unknown channel kind '" + std::string(name) + "'");
}

DensityMatrix apply(const KrausChannel& ch, const DensityMatrix& rho) {
  if (ch.dim_in() != 4 || ch.dim_out() != 4) {
    throw DimensionMismatch("apply: channel must map two qubits to two qubits");
  }
  Matrix out = Matrix::Zero(4, 4);
  for (const auto& k : ch.ops()) out += k * rho.matrix() * k.adjoint();
  out = hermitize(out);
  const double t = out.trace().real();
  if (std::abs(t - 1.0) > kTraceRenormSlack) {
    throw InvalidState("trace: channel output trace differs from 1");
  }
  return DensityMatrix(out / t);
}

KrausChannel identity_channel(int dim) { return KrausChannel({Matrix::Identity(dim, dim)}, dim, dim); }

KrausChannel unitary_channel(const Matrix& u) {
  return KrausChannel({u}, static_cast<int>(u.cols()), static_cast<int>(u.rows()));
}

KrausChannel depolarizing_channel() {
  std::vector<Matrix> ops;
  ops.reserve(16);
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      Matrix k = Matrix::Zero(4, 4);
      k(i, j) = 0.5;
      ops.push_back(std::move(k));
    }
  }
  return KrausChannel(std::move(ops), 4, 4);
}

KrausChannel random_local_unitary_pair(Rng& rng) {
  const Matrix ua = haar_unitary(2, rng);
  const Matrix ub = haar_unitary(2, rng);
  return unitary_channel(kron(ua, ub));
}

KrausChannel random_local_unitary_pair(std::uint64_t seed) {
  Rng rng(seed);
  return random_local_unitary_pair(rng);
}

KrausChannel local_channel_from_isometry(Side side, const Matrix& isometry) {
  if (isometry.cols() != 2 || isometry.rows() % 2 != 0) {
    throw DimensionMismatch("local channel: isometry must be 2d x 2");
  }
  const Eigen::Index env = isometry.rows() / 2;
  const Matrix id = Matrix::Identity(2, 2);
  std::vector<Matrix> ops;
  ops.reserve(static_cast<std::size_t>(env));
  for (Eigen::Index k = 0; k < env; ++k) {
    Matrix e(2, 2);
    for (Eigen::Index o = 0; o < 2; ++o)
      for (Eigen::Index i = 0; i < 2; ++i) e(o, i) = isometry(o * env + k, i);
    ops.push_back(side == Side::A ? kron(e, id) : kron(id, e));
  }
  return KrausChannel(std::move(ops), 4, 4);
}

KrausChannel random_local_channel(Side side, int env_dim, Rng& rng) {
  if (env_dim < 1) throw OutOfRange("random_local_channel: env_dim must be >= 1");
  return local_channel_from_isometry(side, haar_isometry(2 * env_dim, 2, rng));
}

KrausChannel one_way_locc_from(const Matrix& isometry, const std::vector<Matrix>& b_unitaries) {
  if (isometry.cols() != 2 || isometry.rows() % 2 != 0) {
    throw DimensionMismatch("one_way_locc: isometry must be 2m x 2");
  }
  const Eigen::Index m = isometry.rows() / 2;
  if (static_cast<Eigen::Index>(b_unitaries.size()) != m) {
    throw DimensionMismatch("one_way_locc: need one B unitary per outcome");
  }
  std::vector<Matrix> ops;
  ops.reserve(static_cast<std::size_t>(m));
  for (Eigen::Index k = 0; k < m; ++k) {
    Matrix measure(2, 2);
    for (Eigen::Index o = 0; o < 2; ++o)
      for (Eigen::Index i = 0; i < 2; ++i) measure(o, i) = isometry(o * m + k, i);
    ops.push_back(kron(measure, b_unitaries[static_cast<std::size_t>(k)]));
  }
  return KrausChannel(std::move(ops), 4, 4);
}

KrausChannel one_way_locc_channel(int n_outcomes, Rng& rng) {
  if (n_outcomes < 1) throw OutOfRange("one_way_locc_channel: need at least one outcome");
  const Matrix iso = haar_isometry(2 * n_outcomes, 2, rng);
  std::vector<Matrix> unitaries;
  for (int k = 0; k < n_outcomes; ++k) unitaries.push_back(haar_unitary(2, rng));
  return one_way_locc_from(iso, unitaries);
}

ChoiMatrix choi_from_kraus(const KrausChannel& ch) {
  const int din = ch.dim_in();
  const int dout = ch.dim_out();
  Matrix j = Matrix::Zero(din * dout, din * dout);
  Vector vec(din * dout);
  for (const auto& k : ch.ops()) {
    for (int i = 0; i < din; ++i)
      for (int o = 0; o < dout; ++o) vec(i * dout + o) = k(o, i);
    j += outer(vec);
  }
  return {j, din, dout};
}

KrausChannel kraus_from_choi(const ChoiMatrix& choi) {
  const int din = choi.dim_in;
  const int dout = choi.dim_out;
  if (choi.matrix.rows() != din * dout || choi.matrix.cols() != din * dout) {
    throw DimensionMismatch("kraus_from_choi: matrix size differs from dim_in * dim_out");
  }
  const auto eig = hermitian_eig(choi.matrix);
  if (eig.values(0) < -zero_threshold(choi.matrix)) {
    throw NotPSD("kraus_from_choi: Choi matrix is not positive semidefinite");
  }
  std::vector<Matrix> ops;
  for (Eigen::Index k = din * dout; k-- > 0;) {
    const double lambda = eig.values(k);
    if (lambda <= 0.0) break;
    Matrix op(dout, din);
    const double s = std::sqrt(lambda);
    for (int i = 0; i < din; ++i)
      for (int o = 0; o < dout; ++o) op(o, i) = s * eig.vectors(i * dout + o, k);
    ops.push_back(std::move(op));
  }
  if (ops.empty()) throw NotPSD("kraus_from_choi: Choi matrix is zero");
  return KrausChannel(std::move(ops), din, dout);
}

Matrix choi_partial_transpose(const Matrix& j) {
  static constexpr std::array<int, 4> dims{2, 2, 2, 2};
  static constexpr std::array<bool, 4> mask{false, true, false, true};
  return partial_transpose(j, dims, mask);
}

Matrix partial_trace_output(const Matrix& j, int dim_in, int dim_out) {
  if (j.rows() != dim_in * dim_out || j.cols() != dim_in * dim_out) {
    throw DimensionMismatch("partial_trace_output: size differs from dim_in * dim_out");
  }
  Matrix out = Matrix::Zero(dim_in, dim_in);
  for (int a = 0; a < dim_in; ++a)
    for (int b = 0; b < dim_in; ++b)
      for (int o = 0; o < dim_out; ++o) out(a, b) += j(a * dim_out + o, b * dim_out + o);
  return out;
}

ChoiCheck check_choi(const ChoiMatrix& choi) {
  if (choi.dim_in != 4 || choi.dim_out != 4) {
    throw DimensionMismatch("check_choi: expects a two-qubit to two-qubit channel");
  }
  ChoiCheck out;
  out.min_eigenvalue = min_eigenvalue(hermitize(choi.matrix));
  out.min_pt_eigenvalue = min_eigenvalue(hermitize(choi_partial_transpose(choi.matrix)));
  out.trace_preserving_error =
      (partial_trace_output(choi.matrix, 4, 4) - Matrix::Identity(4, 4)).norm();
  return out;
}

bool is_ppt_channel(const ChoiMatrix& choi, double tol) {
  const auto c = check_choi(choi);
  return c.min_eigenvalue >= -tol && c.min_pt_eigenvalue >= -tol && c.trace_preserving_error <= tol;
}

PptChannel project_to_ppt_channel(const Matrix& start, const PptProjectionOptions& opts) {
  constexpr int din = 4;
  constexpr int dout = 4;
  constexpr int n = din * dout;
  if (start.rows() != n || start.cols() != n) {
    throw DimensionMismatch("project_to_ppt_channel: start must be 16 x 16");
  }
  const Matrix eye_out = Matrix::Identity(dout, dout) / static_cast<double>(dout);
  auto tp_projection = [&](const Matrix& x) {
    const Matrix defect = partial_trace_output(x, din, dout) - Matrix::Identity(din, din);
    return Matrix(x - kron(defect, eye_out));
  };

  Matrix x = hermitize(start);
  Matrix inc_psd = Matrix::Zero(n, n);
  Matrix inc_ppt = Matrix::Zero(n, n);
  double residual = 0.0;
  int iter = 0;
  bool converged = false;
  for (iter = 1; iter <= opts.max_iter; ++iter) {
    Matrix y = psd_projection(x + inc_psd);
    inc_psd = x + inc_psd - y;
    x = y;

    y = choi_partial_transpose(psd_projection(choi_partial_transpose(x + inc_ppt)));
    inc_ppt = x + inc_ppt - y;
    x = hermitize(tp_projection(y));

    const double m1 = min_eigenvalue(x);
    const double m2 = min_eigenvalue(choi_partial_transpose(x));
    residual = std::max({0.0, -m1, -m2});
    if (residual <= opts.tol) {
      converged = true;
      break;
    }
  }
  if (!converged) {
    throw NoConvergence("random_ppt_channel: Dykstra projections did not reach tolerance in " +
                        std::to_string(opts.max_iter) + " iterations");
  }

  // Mix toward the completely depolarizing channel (Choi I/dout, an interior
  // point of both cones) so J and J^Gamma are strictly PSD.
  const double lo = std::min(min_eigenvalue(x), min_eigenvalue(choi_partial_transpose(x)));
  if (lo < kInteriorMargin) {
    const double interior = 1.0 / dout;
    const double eps = (kInteriorMargin - lo) / (interior - lo);
    x = (1.0 - eps) * x + eps * Matrix::Identity(n, n) * interior;
  }

  ChoiMatrix choi{x, din, dout};
  KrausChannel kraus = kraus_from_choi(choi);
  return PptChannel{std::move(choi), std::move(kraus), std::min(iter, opts.max_iter), residual};
}

PptChannel random_ppt_channel(Rng& rng, const PptProjectionOptions& opts) {
  const Matrix g = gaussian_matrix(16, 16, rng);
  Matrix start = g * g.adjoint();
  start *= 4.0 / start.trace().real();
  return project_to_ppt_channel(start, opts);
}

PptChannel random_ppt_channel(std::uint64_t seed, const PptProjectionOptions& opts) {
  Rng rng(seed);
  return random_ppt_channel(rng, opts);
}

KrausChannel sample_channel(ChannelKind kind, Rng& rng) {
  switch (kind) {
    case ChannelKind::LocalUnitary:
      return random_local_unitary_pair(rng);
    case ChannelKind::Local: {
      const Side side = rng.uniform_int(0, 1) == 0 ? Side::A : Side::B;
      const int env = rng.uniform_int(2, 4);
      return random_local_channel(side, env, rng);
    }
    case ChannelKind::OneWayLocc:
      return one_way_locc_channel(rng.uniform_int(2, 4), rng);
    case ChannelKind::Ppt:
      return random_ppt_channel(rng).kraus;
  }
  throw ParseError("sample_channel: unknown kind");
}

}  // namespace bineg
