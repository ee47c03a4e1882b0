#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "bineg/random.hpp"
#include "bineg/states.hpp"

namespace bineg {

// Completely positive trace-preserving map given by Kraus operators
// K_i : C^dim_in -> C^dim_out with sum_i K_i^dagger K_i = I.
class KrausChannel {
 public:
  // Throws DimensionMismatch on inconsistent shapes and InvalidState when the
  // completeness relation fails by more than kStructural.
  KrausChannel(std::vector<Matrix> ops, int dim_in, int dim_out);
  explicit KrausChannel(std::vector<Matrix> ops);

  const std::vector<Matrix>& ops() const { return ops_; }
  int dim_in() const { return dim_in_; }
  int dim_out() const { return dim_out_; }

  // max |sum K^dagger K - I|_F
  double completeness_error() const;

 private:
  std::vector<Matrix> ops_;
  int dim_in_;
  int dim_out_;
};

// J = sum_ij |i><j| (x) E(|i><j|), input factor first. Tr_out J = I_in.
struct ChoiMatrix {
  Matrix matrix;
  int dim_in = 4;
  int dim_out = 4;
};

enum class Side { A, B };
enum class ChannelKind { LocalUnitary, Local, OneWayLocc, Ppt };

std::string_view to_string(ChannelKind kind);
// Throws ParseError.
ChannelKind parse_channel_kind(std::string_view name);

// sum_i K_i rho K_i^dagger. The output trace is renormalized within the
// completeness tolerance. Throws DimensionMismatch unless the channel maps
// two qubits to two qubits.
DensityMatrix apply(const KrausChannel& ch, const DensityMatrix& rho);

KrausChannel identity_channel(int dim = 4);
KrausChannel unitary_channel(const Matrix& u);
// rho -> Tr(rho) I/4
KrausChannel depolarizing_channel();

// U_A (x) U_B with independent Haar unitaries.
KrausChannel random_local_unitary_pair(Rng& rng);
KrausChannel random_local_unitary_pair(std::uint64_t seed);

// A random qubit channel from a Haar isometry C^2 -> C^2 (x) C^env_dim acting
// on one side; env_dim Kraus operators. env_dim = 1 gives a local unitary.
KrausChannel random_local_channel(Side side, int env_dim, Rng& rng);
// Same construction from explicit isometry parameters (2 env_dim x 2).
KrausChannel local_channel_from_isometry(Side side, const Matrix& isometry);

// {M_i (x) V_i}: an m-outcome instrument on A followed by a unitary on B
// conditioned on the outcome.
KrausChannel one_way_locc_channel(int n_outcomes, Rng& rng);
KrausChannel one_way_locc_from(const Matrix& isometry, const std::vector<Matrix>& b_unitaries);

ChoiMatrix choi_from_kraus(const KrausChannel& ch);
// Eigendecomposition of J; eigenvalues within the zero threshold are
// dropped. Throws NotPSD or DimensionMismatch.
KrausChannel kraus_from_choi(const ChoiMatrix& choi);

// Transpose of the B factors of input and output of a two-qubit to
// two-qubit Choi matrix (factor order A_in, B_in, A_out, B_out).
Matrix choi_partial_transpose(const Matrix& j);

struct ChoiCheck {
  double min_eigenvalue = 0.0;       // of J
  double min_pt_eigenvalue = 0.0;    // of choi_partial_transpose(J)
  double trace_preserving_error = 0.0;  // |Tr_out J - I|_F
};

ChoiCheck check_choi(const ChoiMatrix& choi);
// Choi PSD, PPT and trace preserving, each to tol.
bool is_ppt_channel(const ChoiMatrix& choi, double tol = tol::kMeasure);

// Tr over the output factor of a dim_in*dim_out square operator.
Matrix partial_trace_output(const Matrix& j, int dim_in, int dim_out);

struct PptChannel {
  ChoiMatrix choi;
  KrausChannel kraus;
  int iterations = 0;
  double residual = 0.0;
};

struct PptProjectionOptions {
  int max_iter = 10000;
  double tol = tol::kMeasure;
};

// Dykstra alternating projections of a PSD starting point onto the
// intersection of the PSD cone, the PPT cone and the trace-preserving
// subspace. The converged point is mixed with the completely depolarizing
// channel by the smallest amount that makes it strictly feasible, so the
// recovered Kraus family is exactly complete. Throws NoConvergence.
PptChannel project_to_ppt_channel(const Matrix& start, const PptProjectionOptions& opts = {});
PptChannel random_ppt_channel(Rng& rng, const PptProjectionOptions& opts = {});
PptChannel random_ppt_channel(std::uint64_t seed, const PptProjectionOptions& opts = {});

// Draw a channel of the given kind with randomly chosen sub-parameters.
KrausChannel sample_channel(ChannelKind kind, Rng& rng);

}  // namespace bineg
