#include "bineg/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>

#include "bineg/errors.hpp"

namespace bineg {

namespace {

constexpr double kNoGap = -std::numeric_limits<double>::infinity();
constexpr double kChainMeasureTol = 1e-9;
constexpr double kChainMuTol = 1e-6;
constexpr int kRandomClosedFormTriples = 100;

struct Collector {
  std::vector<ViolationRecord> violations;
  double max_gap = kNoGap;
};

struct StateMetrics {
  DensityMatrix rho;
  PartialTransposeSpectrum pt;
  MeasureTriple m;
  bool ppt = true;
};

StateMetrics metrics_of(const DensityMatrix& rho) {
  StateMetrics s{rho, partial_transpose_spectrum(rho), {}, true};
  s.m.c = concurrence(rho);
  s.m.nu = 2.0 * s.pt.trace_negative;
  s.m.n2 = s.pt.trace_negative + 2.0 * s.pt.trace_negative_negative;
  s.ppt = is_ppt(rho);
  return s;
}

double triple_distance(const MeasureTriple& a, const MeasureTriple& b) {
  return std::max({std::abs(a.c - b.c), std::abs(a.nu - b.nu), std::abs(a.n2 - b.n2)});
}

double pure_state_gap(const StateMetrics& s) {
  const auto eig = hermitian_eig(s.rho.matrix());
  const double mu = schmidt(PureState::normalized(eig.vectors.col(3))).mu;
  const double ent = 2.0 * std::sqrt(mu * (1.0 - mu));
  return std::max({std::abs(s.m.c - s.m.nu), std::abs(s.m.nu - s.m.n2), std::abs(s.m.c - ent)});
}

double expected_gap(const StateMetrics& s, const Json& params) {
  double gap = 0.0;
  if (params.contains("c")) gap = std::max(gap, std::abs(s.m.c - params.at("c").get<double>()));
  if (params.contains("nu")) gap = std::max(gap, std::abs(s.m.nu - params.at("nu").get<double>()));
  if (params.contains("n2")) gap = std::max(gap, std::abs(s.m.n2 - params.at("n2").get<double>()));
  return gap;
}

// Signed gap of one check: positive means the property is violated by that
// much. Boolean checks return 0 (holds) or 1 (fails).
double gap_of(ViolationKind kind, const StateMetrics& s, const StateMetrics* image, const Json& params) {
  const auto& m = s.m;
  switch (kind) {
    case ViolationKind::Ordering:
      return std::max(m.n2 - m.nu, m.nu - m.c);
    case ViolationKind::Faithfulness:
      return ((m.n2 == 0.0) != s.ppt) ? 1.0 : 0.0;
    case ViolationKind::NegativeEigenCount:
      return s.ppt ? 0.0 : std::abs(s.pt.negative_count - 1.0);
    case ViolationKind::StructureIdentity: {
      if (!s.pt.mu) return 0.0;
      const double mu = *s.pt.mu;
      return std::abs(s.pt.trace_negative_negative - std::sqrt(mu * (1.0 - mu)) * s.pt.trace_negative);
    }
    case ViolationKind::EqualityChain: {
      if (!s.pt.mu) return 0.0;
      const bool a = std::abs(m.n2 - m.nu) <= kChainMeasureTol;
      const bool b = std::abs(m.nu - m.c) <= kChainMeasureTol;
      const bool d = std::abs(*s.pt.mu - 0.5) <= kChainMuTol;
      return (a == b && b == d) ? 0.0 : 1.0;
    }
    case ViolationKind::LocalUnitaryInvariance:
      if (!image) throw Error("local-unitary gap needs the transformed state");
      return triple_distance(m, image->m);
    case ViolationKind::PureState:
      return pure_state_gap(s);
    case ViolationKind::ClosedForm: {
      const FamilyParams p{params.at("p").get<double>(), params.at("q").get<double>(),
                           params.at("r").get<double>()};
      return triple_distance(closed_form_pqr(p).measures, m);
    }
    case ViolationKind::Saturation:
      return expected_gap(s, params);
    case ViolationKind::NegativityRange:
      return std::max(nu_of_c(std::min(m.c, 1.0)) - m.nu, m.nu - m.c);
    case ViolationKind::MemsLower:
      return bineg_mems(std::min(m.c, 1.0)) - m.n2;
    case ViolationKind::NegativityLower:
      return bineg_lower_given_nu(std::min(m.nu, 1.0)) - m.n2;
    case ViolationKind::Region:
      return std::max(region_lower_formula(m.c, m.nu) - m.n2, m.n2 - region_upper_formula(m.c, m.nu));
    case ViolationKind::Monotonicity:
      if (!image) throw Error("monotonicity gap needs the channel output");
      return image->m.n2 - m.n2;
  }
  return 0.0;
}

bool is_boolean(ViolationKind kind) {
  return kind == ViolationKind::Faithfulness || kind == ViolationKind::NegativeEigenCount ||
         kind == ViolationKind::EqualityChain;
}

class SampleChecker {
 public:
  SampleChecker(Collector& out, std::uint64_t seed, std::uint64_t index, std::optional<double> tol)
      : out_(out), seed_(seed), index_(index), tol_override_(tol) {}

  // Evaluates one check and records a violation when gap > tol.
  double check(ViolationKind kind, double tol, const StateMetrics& s, const StateMetrics* image = nullptr,
               const KrausChannel* channel = nullptr, const Json& params = nullptr) {
    const double gap = gap_of(kind, s, image, params);
    const double limit = is_boolean(kind) ? 0.5 : tol_override_.value_or(tol);
    if (!is_boolean(kind) || gap > limit) out_.max_gap = std::max(out_.max_gap, gap);
    if (gap > limit) {
      ViolationRecord v;
      v.kind = kind;
      v.state = state_to_json(s.rho);
      if (channel) v.channel = channel_to_json(*channel);
      v.observed_gap = gap;
      v.seed = seed_;
      v.index = index_;
      v.params = params;
      out_.violations.push_back(std::move(v));
    }
    return gap;
  }

 private:
  Collector& out_;
  std::uint64_t seed_;
  std::uint64_t index_;
  std::optional<double> tol_override_;
};

template <class Fn>
Collector run_samples(std::uint64_t n, int threads, Fn&& fn) {
  const auto workers =
      static_cast<std::uint64_t>(std::clamp<std::uint64_t>(static_cast<std::uint64_t>(std::max(threads, 1)), 1,
                                                           std::max<std::uint64_t>(n, 1)));
  std::vector<Collector> parts(workers);
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto work = [&](std::uint64_t w) {
    try {
      for (std::uint64_t i = w; i < n; i += workers) fn(i, parts[w]);
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::uint64_t w = 0; w < workers; ++w) pool.emplace_back(work, w);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  Collector merged;
  for (auto& part : parts) {
    merged.max_gap = std::max(merged.max_gap, part.max_gap);
    std::move(part.violations.begin(), part.violations.end(), std::back_inserter(merged.violations));
  }
  std::stable_sort(merged.violations.begin(), merged.violations.end(),
                   [](const ViolationRecord& a, const ViolationRecord& b) {
                     if (a.seed != b.seed) return a.seed < b.seed;
                     if (a.index != b.index) return a.index < b.index;
                     return static_cast<int>(a.kind) < static_cast<int>(b.kind);
                   });
  return merged;
}

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

SweepReport finish(std::string name, Severity severity, std::uint64_t n, const SweepOptions& opts,
                   Json config, Collector collected, const Stopwatch& clock) {
  SweepReport r;
  r.name = std::move(name);
  r.severity = severity;
  r.n_samples = n;
  r.seed = opts.seed;
  r.config = std::move(config);
  if (opts.tol) r.config["tol"] = *opts.tol;
  r.max_gap = collected.max_gap == kNoGap ? 0.0 : collected.max_gap;
  r.violations = std::move(collected.violations);
  r.n_violations = r.violations.size();
  r.runtime_seconds = clock.seconds();
  return r;
}

void require_rank(int rank) {
  if (rank < 1 || rank > 4) throw OutOfRange("rank must be 1..4");
}

DensityMatrix draw_state(int rank, Rng& rng) {
  if (rank == 1) return DensityMatrix(random_pure(rng));
  return random_mixed(rank, rng);
}

ChannelKind mixed_kind(std::uint64_t index) {
  static constexpr ChannelKind kinds[] = {ChannelKind::Local, ChannelKind::OneWayLocc, ChannelKind::Ppt};
  return kinds[index % 3];
}

// Retries on the same stream when the PPT projection fails to converge.
KrausChannel draw_channel(ChannelKind kind, Rng& rng) {
  constexpr int kAttempts = 5;
  for (int attempt = 1;; ++attempt) {
    try {
      return sample_channel(kind, rng);
    } catch (const NoConvergence&) {
      if (attempt == kAttempts) throw;
    }
  }
}

}  // namespace

std::string_view to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::Ordering:
      return "ordering";
    case ViolationKind::Faithfulness:
      return "faithfulness";
    case ViolationKind::NegativeEigenCount:
      return "negative_eigen_count";
    case ViolationKind::StructureIdentity:
      return "structure_identity";
    case ViolationKind::EqualityChain:
      return "equality_chain";
    case ViolationKind::LocalUnitaryInvariance:
      return "local_unitary_invariance";
    case ViolationKind::PureState:
      return "pure_state";
    case ViolationKind::ClosedForm:
      return "closed_form";
    case ViolationKind::Saturation:
      return "saturation";
    case ViolationKind::NegativityRange:
      return "negativity_range";
    case ViolationKind::MemsLower:
      return "mems_lower";
    case ViolationKind::NegativityLower:
      return "negativity_lower";
    case ViolationKind::Region:
      return "region";
    case ViolationKind::Monotonicity:
      return "monotonicity";
  }
  return "unknown";
}

bool is_conjecture(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::NegativityRange:
    case ViolationKind::MemsLower:
    case ViolationKind::NegativityLower:
    case ViolationKind::Region:
    case ViolationKind::Monotonicity:
      return true;
    default:
      return false;
  }
}

int exit_code(const SweepReport& report) {
  if (report.n_violations == 0) return 0;
  return report.severity == Severity::Hard ? 1 : 2;
}

int exit_code(const std::vector<SweepReport>& reports) {
  int code = 0;
  for (const auto& r : reports) {
    const int c = exit_code(r);
    if (c == 1) return 1;
    code = std::max(code, c);
  }
  return code;
}

Json violation_to_json(const ViolationRecord& v) {
  Json j{{"kind", std::string(to_string(v.kind))},
         {"state", v.state},
         {"observed_gap", v.observed_gap},
         {"seed", v.seed},
         {"index", v.index}};
  if (v.channel) j["channel"] = *v.channel;
  if (!v.params.is_null()) j["params"] = v.params;
  if (!v.detail.empty()) j["detail"] = v.detail;
  return j;
}

ViolationRecord violation_from_json(const Json& j) {
  ViolationRecord v;
  const auto kind = j.at("kind").get<std::string>();
  bool found = false;
  for (int k = 0; k <= static_cast<int>(ViolationKind::Monotonicity); ++k) {
    if (to_string(static_cast<ViolationKind>(k)) == kind) {
      v.kind = static_cast<ViolationKind>(k);
      found = true;
    }
  }
  if (!found) throw ParseError("unknown violation kind '" + kind + "'");
  v.state = j.at("state");
  if (j.contains("channel")) v.channel = j.at("channel");
  v.observed_gap = j.at("observed_gap").get<double>();
  v.seed = j.at("seed").get<std::uint64_t>();
  v.index = j.at("index").get<std::uint64_t>();
  if (j.contains("params")) v.params = j.at("params");
  if (j.contains("detail")) v.detail = j.at("detail").get<std::string>();
  return v;
}

Json report_to_json(const SweepReport& report, bool include_timing) {
  Json violations = Json::array();
  for (const auto& v : report.violations) violations.push_back(violation_to_json(v));
  Json j{{"name", report.name},
         {"severity", report.severity == Severity::Hard ? "hard" : "conjecture"},
         {"n_samples", report.n_samples},
         {"n_violations", report.n_violations},
         {"max_gap", report.max_gap},
         {"seed", report.seed},
         {"config", report.config},
         {"violations", std::move(violations)}};
  if (include_timing) j["runtime_seconds"] = report.runtime_seconds;
  return j;
}

double recompute_gap(const ViolationRecord& v) {
  const StateMetrics s = metrics_of(state_from_json(v.state));
  std::optional<StateMetrics> image;
  if (v.kind == ViolationKind::Monotonicity || v.kind == ViolationKind::LocalUnitaryInvariance) {
    if (!v.channel) throw ParseError("record of this kind needs a channel");
    image = metrics_of(apply(channel_from_json(*v.channel), s.rho));
  }
  return gap_of(v.kind, s, image ? &*image : nullptr, v.params);
}

double monotonicity_gap(const KrausChannel& ch, const DensityMatrix& rho) {
  return binegativity(apply(ch, rho)) - binegativity(rho);
}

SweepReport verify_ordering(std::uint64_t n, int rank, const SweepOptions& opts) {
  require_rank(rank);
  Stopwatch clock;
  auto collected = run_samples(n, opts.threads, [&](std::uint64_t i, Collector& out) {
    Rng rng(opts.seed, i);
    SampleChecker checker(out, opts.seed, i, opts.tol);
    checker.check(ViolationKind::Ordering, tol::kMeasure, metrics_of(draw_state(rank, rng)));
  });
  return finish("verify_ordering", Severity::Hard, n, opts, Json{{"samples", n}, {"rank", rank}},
                std::move(collected), clock);
}

SweepReport verify_properties(std::uint64_t n, int rank, const SweepOptions& opts) {
  require_rank(rank);
  Stopwatch clock;
  auto collected = run_samples(n, opts.threads, [&](std::uint64_t i, Collector& out) {
    Rng rng(opts.seed, i);
    SampleChecker checker(out, opts.seed, i, opts.tol);
    const StateMetrics s = metrics_of(draw_state(rank, rng));
    checker.check(ViolationKind::Ordering, tol::kStructural, s);
    checker.check(ViolationKind::Faithfulness, 0.0, s);
    checker.check(ViolationKind::NegativeEigenCount, 0.0, s);
    checker.check(ViolationKind::StructureIdentity, tol::kStructural, s);
    checker.check(ViolationKind::EqualityChain, 0.0, s);
    if (rank == 1) checker.check(ViolationKind::PureState, tol::kStructural, s);

    const KrausChannel lu = random_local_unitary_pair(rng);
    const StateMetrics rotated = metrics_of(apply(lu, s.rho));
    checker.check(ViolationKind::LocalUnitaryInvariance, tol::kStructural, s, &rotated, &lu);
  });
  return finish("verify_properties", Severity::Hard, n, opts, Json{{"samples", n}, {"rank", rank}},
                std::move(collected), clock);
}

SweepReport verify_region(std::uint64_t n, int rank, const SweepOptions& opts) {
  require_rank(rank);
  Stopwatch clock;
  auto collected = run_samples(n, opts.threads, [&](std::uint64_t i, Collector& out) {
    Rng rng(opts.seed, i);
    const StateMetrics s = metrics_of(draw_state(rank, rng));
    if (s.ppt) return;
    SampleChecker checker(out, opts.seed, i, opts.tol);
    checker.check(ViolationKind::NegativityRange, tol::kMeasure, s);
    checker.check(ViolationKind::MemsLower, tol::kMeasure, s);
    checker.check(ViolationKind::NegativityLower, tol::kMeasure, s);
    checker.check(ViolationKind::Region, tol::kMeasure, s);
  });
  return finish("verify_region", Severity::Conjecture, n, opts, Json{{"samples", n}, {"rank", rank}},
                std::move(collected), clock);
}

SweepReport verify_closed_forms(int grid, const SweepOptions& opts) {
  if (grid < 2) throw OutOfRange("verify_closed_forms: grid must be >= 2");
  Stopwatch clock;
  const auto g = static_cast<std::uint64_t>(grid);
  const std::uint64_t lattice = g * g * g;
  const std::uint64_t total = lattice + kRandomClosedFormTriples;
  auto collected = run_samples(total, opts.threads, [&](std::uint64_t i, Collector& out) {
    FamilyParams p;
    if (i < lattice) {
      const double step = 1.0 / static_cast<double>(grid - 1);
      p = {static_cast<double>(i / (g * g)) * step, static_cast<double>((i / g) % g) * step,
           static_cast<double>(i % g) * step};
    } else {
      Rng rng(opts.seed, i);
      p = {rng.uniform(), rng.uniform(), rng.uniform()};
    }
    SampleChecker checker(out, opts.seed, i, opts.tol);
    checker.check(ViolationKind::ClosedForm, tol::kMeasure, metrics_of(sigma_pqr(p)), nullptr, nullptr,
                  Json{{"p", p.p}, {"q", p.q}, {"r", p.r}});
  });
  return finish("verify_closed_forms", Severity::Hard, total, opts,
                Json{{"grid", grid}, {"random_triples", kRandomClosedFormTriples}}, std::move(collected), clock);
}

SweepReport verify_saturation(int n_pairs, const SweepOptions& opts) {
  if (n_pairs < 1) throw OutOfRange("verify_saturation: need at least one pair");
  Stopwatch clock;
  constexpr std::uint64_t kMemsPoints = 19;
  const std::uint64_t total = kMemsPoints + static_cast<std::uint64_t>(n_pairs);
  auto collected = run_samples(total, opts.threads, [&](std::uint64_t i, Collector& out) {
    SampleChecker checker(out, opts.seed, i, opts.tol);
    if (i < kMemsPoints) {
      const double c = 0.05 * static_cast<double>(i + 1);
      checker.check(ViolationKind::Saturation, tol::kStructural, metrics_of(sigma_mems(c)), nullptr, nullptr,
                    Json{{"family", "sigma_mems"}, {"c", c}, {"nu", nu_of_c(c)}, {"n2", bineg_mems(c)}});
      return;
    }
    const std::uint64_t pair = i - kMemsPoints;
    double c = 0.5;
    double nu = 0.375;
    if (pair > 0) {
      Rng rng(opts.seed, i);
      c = 0.05 + 0.95 * rng.uniform();
      const double lo = nu_of_c(c);
      nu = lo + (c - lo) * (0.02 + 0.96 * rng.uniform());
    }
    const auto range = boundary_p_range(c, nu);
    const auto bounds = region_bounds(c, nu);
    const auto add = [&](double p, double expected_n2, double tol) {
      checker.check(ViolationKind::Saturation, tol, metrics_of(boundary_family(c, nu, p)), nullptr, nullptr,
                    Json{{"family", "boundary"}, {"p", p}, {"c", c}, {"nu", nu}, {"n2", expected_n2}});
    };
    add(range.p_min, bounds.upper, tol::kMeasure);
    add(range.p_max, bounds.lower, tol::kMeasure);
    for (double t : {0.25, 0.5, 0.75}) {
      const double p = range.p_min + t * (range.p_max - range.p_min);
      add(p, boundary_bineg(c, nu, p), tol::kMeasure);
    }
    if (pair == 0) {
      add(range.p_min, 147.0 / 400.0, tol::kStructural);
      add(range.p_max, 77.0 / 216.0, tol::kStructural);
    }
  });
  return finish("verify_saturation", Severity::Hard, total, opts, Json{{"pairs", n_pairs}, {"mems_points", 19}},
                std::move(collected), clock);
}

SweepReport monotonicity_sweep(std::uint64_t n_pairs, std::optional<ChannelKind> kind, int rank,
                               const SweepOptions& opts) {
  require_rank(rank);
  Stopwatch clock;
  auto collected = run_samples(n_pairs, opts.threads, [&](std::uint64_t i, Collector& out) {
    Rng rng(opts.seed, i);
    const StateMetrics s = metrics_of(draw_state(rank, rng));
    const KrausChannel ch = draw_channel(kind.value_or(mixed_kind(i)), rng);
    const StateMetrics image = metrics_of(apply(ch, s.rho));
    SampleChecker checker(out, opts.seed, i, opts.tol);
    checker.check(ViolationKind::Monotonicity, tol::kMeasure, s, &image, &ch);
  });
  Json config{{"samples", n_pairs}, {"rank", rank}, {"kind", kind ? std::string(to_string(*kind)) : "mixed"}};
  return finish("monotonicity_sweep", Severity::Conjecture, n_pairs, opts, std::move(config),
                std::move(collected), clock);
}

namespace {

struct SearchPoint {
  Matrix factor;
  std::vector<Matrix> params;
  Side side = Side::A;
};

SearchPoint initial_point(ChannelKind kind, int rank, Rng& rng) {
  SearchPoint pt;
  pt.factor = gaussian_matrix(4, rank, rng);
  switch (kind) {
    case ChannelKind::LocalUnitary:
      pt.params = {gaussian_matrix(2, 2, rng), gaussian_matrix(2, 2, rng)};
      break;
    case ChannelKind::Local: {
      pt.side = rng.uniform_int(0, 1) == 0 ? Side::A : Side::B;
      const int env = rng.uniform_int(2, 4);
      pt.params = {gaussian_matrix(2 * env, 2, rng)};
      break;
    }
    case ChannelKind::OneWayLocc: {
      const int m = rng.uniform_int(2, 4);
      pt.params = {gaussian_matrix(2 * m, 2, rng)};
      for (int k = 0; k < m; ++k) pt.params.push_back(gaussian_matrix(2, 2, rng));
      break;
    }
    case ChannelKind::Ppt:
      pt.params = {gaussian_matrix(16, 16, rng)};
      break;
  }
  return pt;
}

KrausChannel build_channel(ChannelKind kind, const SearchPoint& pt) {
  switch (kind) {
    case ChannelKind::LocalUnitary:
      return unitary_channel(kron(isometry_from(pt.params[0]), isometry_from(pt.params[1])));
    case ChannelKind::Local:
      return local_channel_from_isometry(pt.side, isometry_from(pt.params[0]));
    case ChannelKind::OneWayLocc: {
      std::vector<Matrix> unitaries;
      for (std::size_t k = 1; k < pt.params.size(); ++k) unitaries.push_back(isometry_from(pt.params[k]));
      return one_way_locc_from(isometry_from(pt.params[0]), unitaries);
    }
    case ChannelKind::Ppt: {
      Matrix start = pt.params[0] * pt.params[0].adjoint();
      start *= 4.0 / start.trace().real();
      return project_to_ppt_channel(start).kraus;
    }
  }
  throw Error("build_channel: unknown kind");
}

SearchPoint perturb(const SearchPoint& pt, double step, Rng& rng) {
  SearchPoint next = pt;
  next.factor += step * gaussian_matrix(pt.factor.rows(), pt.factor.cols(), rng);
  for (auto& m : next.params) m += step * gaussian_matrix(m.rows(), m.cols(), rng);
  return next;
}

struct Evaluated {
  double gap = kNoGap;
  std::optional<DensityMatrix> state;
  std::optional<KrausChannel> channel;
};

Evaluated evaluate(ChannelKind kind, const SearchPoint& pt) {
  try {
    DensityMatrix rho = state_from_factor(pt.factor);
    KrausChannel ch = build_channel(kind, pt);
    const double gap = monotonicity_gap(ch, rho);
    return {gap, std::move(rho), std::move(ch)};
  } catch (const NoConvergence&) {
    return {};
  }
}

}  // namespace

SearchResult counterexample_search(const SearchOptions& opts) {
  if (opts.restarts < 1) throw OutOfRange("counterexample_search: restarts must be >= 1");
  if (opts.steps < 0) throw OutOfRange("counterexample_search: steps must be >= 0");
  require_rank(opts.rank);
  Stopwatch clock;

  struct RestartBest {
    Evaluated best;
    std::uint64_t restart = 0;
  };
  const auto restarts = static_cast<std::uint64_t>(opts.restarts);
  std::vector<RestartBest> per_restart(restarts);

  run_samples(restarts, opts.threads, [&](std::uint64_t r, Collector&) {
    Rng rng(opts.seed, r);
    SearchPoint current = initial_point(opts.kind, opts.rank, rng);
    Evaluated best = evaluate(opts.kind, current);
    for (int step = 0; step < opts.steps; ++step) {
      SearchPoint candidate = perturb(current, opts.step_size, rng);
      Evaluated e = evaluate(opts.kind, candidate);
      if (e.gap > best.gap) {
        best = std::move(e);
        current = std::move(candidate);
      }
    }
    per_restart[r] = {std::move(best), r};
  });

  SearchResult result;
  Collector collected;
  for (auto& rb : per_restart) {
    if (!rb.best.state) continue;
    if (rb.best.gap > result.best_gap || result.best_restart < 0) {
      result.best_gap = rb.best.gap;
      result.best_restart = static_cast<int>(rb.restart);
      result.best_state = state_to_json(*rb.best.state);
      result.best_channel = channel_to_json(*rb.best.channel);
    }
    collected.max_gap = std::max(collected.max_gap, rb.best.gap);
    if (rb.best.gap > tol::kOptimization) {
      ViolationRecord v;
      v.kind = ViolationKind::Monotonicity;
      v.state = state_to_json(*rb.best.state);
      v.channel = channel_to_json(*rb.best.channel);
      v.observed_gap = rb.best.gap;
      v.seed = opts.seed;
      v.index = rb.restart;
      v.detail = "hill-climbing optimum";
      collected.violations.push_back(std::move(v));
    }
  }

  SweepOptions sweep_opts;
  sweep_opts.seed = opts.seed;
  Json config{{"kind", std::string(to_string(opts.kind))},
              {"restarts", opts.restarts},
              {"steps", opts.steps},
              {"step_size", opts.step_size},
              {"rank", opts.rank}};
  result.report = finish("counterexample_search", Severity::Conjecture,
                         restarts * static_cast<std::uint64_t>(opts.steps + 1), sweep_opts, std::move(config),
                         std::move(collected), clock);
  return result;
}

}  // namespace bineg
