#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bineg/channels.hpp"
#include "bineg/measures.hpp"
#include "bineg/serialize.hpp"

namespace bineg {

enum class ViolationKind {
  // Proven properties; violations are hard failures.
  Ordering,
  Faithfulness,
  NegativeEigenCount,
  StructureIdentity,
  EqualityChain,
  LocalUnitaryInvariance,
  PureState,
  ClosedForm,
  Saturation,
  // Conjectures; violations are findings.
  NegativityRange,
  MemsLower,
  NegativityLower,
  Region,
  Monotonicity,
};

std::string_view to_string(ViolationKind kind);
bool is_conjecture(ViolationKind kind);

struct ViolationRecord {
  ViolationKind kind = ViolationKind::Ordering;
  Json state;                  // serialized DensityMatrix
  std::optional<Json> channel;  // serialized KrausChannel, when applicable
  double observed_gap = 0.0;
  std::uint64_t seed = 0;   // sweep seed
  std::uint64_t index = 0;  // substream of the sample within the sweep
  // Reference values the gap was measured against (family parameters or
  // expected measures), when the state alone does not determine it.
  Json params;
  std::string detail;
};

enum class Severity { Hard, Conjecture };

struct SweepReport {
  std::string name;
  Severity severity = Severity::Hard;
  std::uint64_t n_samples = 0;
  std::uint64_t n_violations = 0;
  // Largest signed gap seen over all checks; negative means every sample sat
  // strictly inside its bound.
  double max_gap = 0.0;
  double runtime_seconds = 0.0;
  std::uint64_t seed = 0;
  Json config = Json::object();
  std::vector<ViolationRecord> violations;
};

// 0 clean, 1 hard-invariant failure, 2 conjecture finding.
int exit_code(const SweepReport& report);
int exit_code(const std::vector<SweepReport>& reports);

// runtime_seconds is wall-clock and is left out unless asked for, so reports
// from identical runs are byte-identical.
Json report_to_json(const SweepReport& report, bool include_timing = false);
Json violation_to_json(const ViolationRecord& v);
ViolationRecord violation_from_json(const Json& j);

struct SweepOptions {
  std::uint64_t seed = 42;
  int threads = 1;
  // Replaces the default tolerance of the sweep when set.
  std::optional<double> tol;
};

// Sample i of a sweep draws from Rng(seed, i), so results do not depend on
// the thread count.
SweepReport verify_ordering(std::uint64_t n, int rank, const SweepOptions& opts = {});
// Ordering, faithfulness, single negative eigenvalue, structure identity,
// equality chain and local-unitary invariance; rank 1 adds the pure-state
// identities.
SweepReport verify_properties(std::uint64_t n, int rank, const SweepOptions& opts = {});
SweepReport verify_region(std::uint64_t n, int rank, const SweepOptions& opts = {});
// grid^3 lattice over [0,1]^3 plus 100 random (p, q, r).
SweepReport verify_closed_forms(int grid, const SweepOptions& opts = {});
// sigma_mems on c = 0.05k and the boundary family at p_min / p_max on
// n_pairs random feasible (c, nu) plus (1/2, 3/8).
SweepReport verify_saturation(int n_pairs, const SweepOptions& opts = {});

// Kind is empty for a round-robin mix of local, one-way LOCC and PPT.
SweepReport monotonicity_sweep(std::uint64_t n_pairs, std::optional<ChannelKind> kind, int rank,
                               const SweepOptions& opts = {});

// Recomputes N2(E(rho)) - N2(rho) or the relevant bound gap from a record.
double recompute_gap(const ViolationRecord& v);

struct SearchOptions {
  ChannelKind kind = ChannelKind::OneWayLocc;
  int restarts = 10;
  int steps = 100;
  double step_size = 0.05;
  int rank = 2;
  std::uint64_t seed = 42;
  int threads = 1;
};

struct SearchResult {
  SweepReport report;
  double best_gap = 0.0;
  int best_restart = -1;
  Json best_state;
  Json best_channel;
};

// Random-restart hill climbing on f = N2(E(rho)) - N2(rho) over a Ginibre
// factor for rho and the channel's isometry or Choi parameters.
SearchResult counterexample_search(const SearchOptions& opts);

// Gap function evaluated by the search, exposed for testing.
double monotonicity_gap(const KrausChannel& ch, const DensityMatrix& rho);

struct CsvTable {
  std::string name;  // file stem
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

// Header row, comma separated, 17 significant digits, LF endings.
std::string to_csv(const CsvTable& table);
void write_csv(const CsvTable& table, const std::string& path);

enum class Figure { Fig1, Fig2, Fig3 };
Figure parse_figure(std::string_view name);
std::string_view to_string(Figure f);

struct FigureOutput {
  std::vector<CsvTable> tables;
  // Membership of each scatter point in the figure's bound curves.
  SweepReport membership;
};

FigureOutput figure_data(Figure which, std::uint64_t n, int rank, const SweepOptions& opts = {});

}  // namespace bineg
