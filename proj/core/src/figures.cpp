#include <algorithm>
#include <chrono>
#include <fstream>
#include <limits>
#include <sstream>
#include <thread>

#include "bineg/bounds.hpp"
#include "bineg/errors.hpp"
#include "bineg/harness.hpp"

namespace bineg {

namespace {

constexpr int kCurvePoints = 200;
constexpr int kSurfaceGrid = 50;
constexpr int kSegmentPoints = 21;

struct ScatterPoint {
  MeasureTriple m;
};

DensityMatrix draw(int rank, std::uint64_t seed, std::uint64_t index) {
  Rng rng(seed, index);
  return rank == 1 ? DensityMatrix(random_pure(rng)) : random_mixed(rank, rng);
}

// States are redrawn from their substream so the scatter pass only keeps the
// measures.
ViolationRecord make_record(ViolationKind kind, double gap, int rank, std::uint64_t seed, std::uint64_t index) {
  ViolationRecord v;
  v.kind = kind;
  v.state = state_to_json(draw(rank, seed, index));
  v.observed_gap = gap;
  v.seed = seed;
  v.index = index;
  return v;
}

double kind_gap(ViolationKind kind, const MeasureTriple& m) {
  switch (kind) {
    case ViolationKind::Ordering:
      return std::max(m.n2 - m.nu, m.nu - m.c);
    case ViolationKind::MemsLower:
      return bineg_mems(std::min(m.c, 1.0)) - m.n2;
    case ViolationKind::NegativityLower:
      return bineg_lower_given_nu(std::min(m.nu, 1.0)) - m.n2;
    case ViolationKind::NegativityRange:
      return std::max(nu_of_c(std::min(m.c, 1.0)) - m.nu, m.nu - m.c);
    case ViolationKind::Region:
      return std::max(region_lower_formula(m.c, m.nu) - m.n2, m.n2 - region_upper_formula(m.c, m.nu));
    default:
      throw Error("figure membership: unsupported check");
  }
}

std::vector<ViolationKind> membership_kinds(Figure which) {
  switch (which) {
    case Figure::Fig1:
      return {ViolationKind::Ordering, ViolationKind::MemsLower};
    case Figure::Fig2:
      return {ViolationKind::Ordering, ViolationKind::NegativityLower};
    case Figure::Fig3:
      return {ViolationKind::Ordering, ViolationKind::NegativityRange, ViolationKind::Region};
  }
  return {};
}

std::vector<ScatterPoint> sample_scatter(std::uint64_t n, int rank, const SweepOptions& opts) {
  std::vector<ScatterPoint> points(n);
  const int workers = static_cast<int>(std::clamp<std::uint64_t>(static_cast<std::uint64_t>(std::max(opts.threads, 1)),
                                                                 1, std::max<std::uint64_t>(n, 1)));
  auto work = [&](int w) {
    for (std::uint64_t i = static_cast<std::uint64_t>(w); i < n; i += static_cast<std::uint64_t>(workers)) {
      points[i] = {measure_triple(draw(rank, opts.seed, i))};
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(work, w);
    for (auto& t : pool) t.join();
  }
  return points;
}

CsvTable segment_table() {
  const double c = 0.5;
  const double nu = 0.375;
  const auto range = boundary_p_range(c, nu);
  CsvTable t{"fig3_segment", {"p", "c", "c_minus_nu", "nu_minus_n2"}, {}};
  for (int k = 0; k < kSegmentPoints; ++k) {
    const double p = range.p_min + (range.p_max - range.p_min) * k / (kSegmentPoints - 1);
    const MeasureTriple m = measure_triple(boundary_family(c, nu, p));
    t.rows.push_back({p, m.c, m.c - m.nu, m.nu - m.n2});
  }
  return t;
}

}  // namespace

std::string to_csv(const CsvTable& table) {
  std::ostringstream out;
  for (std::size_t i = 0; i < table.header.size(); ++i) out << (i ? "," : "") << table.header[i];
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << format_double(row[i]);
    out << '\n';
  }
  return out.str();
}

void write_csv(const CsvTable& table, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open '" + path + "' for writing");
  out << to_csv(table);
  if (!out) throw Error("failed writing '" + path + "'");
}

Figure parse_figure(std::string_view name) {
  if (name == "fig1") return Figure::Fig1;
  if (name == "fig2") return Figure::Fig2;
  if (name == "fig3") return Figure::Fig3;
  throw ParseError("unknown figure '" + std::string(name) + "'");
}

std::string_view to_string(Figure f) {
  switch (f) {
    case Figure::Fig1:
      return "fig1";
    case Figure::Fig2:
      return "fig2";
    case Figure::Fig3:
      return "fig3";
  }
  return "unknown";
}

FigureOutput figure_data(Figure which, std::uint64_t n, int rank, const SweepOptions& opts) {
  if (rank < 1 || rank > 4) throw OutOfRange("figure_data: rank must be 1..4");
  const auto start = std::chrono::steady_clock::now();
  const std::string stem(to_string(which));
  const auto points = sample_scatter(n, rank, opts);

  FigureOutput out;
  CsvTable scatter{stem + "_scatter", {}, {}};
  switch (which) {
    case Figure::Fig1:
      scatter.header = {"c", "n2"};
      for (const auto& pt : points) scatter.rows.push_back({pt.m.c, pt.m.n2});
      break;
    case Figure::Fig2:
      scatter.header = {"nu", "n2"};
      for (const auto& pt : points) scatter.rows.push_back({pt.m.nu, pt.m.n2});
      break;
    case Figure::Fig3:
      scatter.header = {"c", "c_minus_nu", "nu_minus_n2"};
      for (const auto& pt : points) scatter.rows.push_back({pt.m.c, pt.m.c - pt.m.nu, pt.m.nu - pt.m.n2});
      break;
  }
  out.tables.push_back(std::move(scatter));

  if (which == Figure::Fig1 || which == Figure::Fig2) {
    CsvTable curves{stem + "_bounds", {}, {}};
    curves.header = which == Figure::Fig1 ? std::vector<std::string>{"c", "upper", "lower"}
                                          : std::vector<std::string>{"nu", "upper", "lower"};
    for (int k = 0; k <= kCurvePoints; ++k) {
      const double x = static_cast<double>(k) / kCurvePoints;
      const double lower = which == Figure::Fig1 ? bineg_mems(x) : bineg_lower_given_nu(x);
      curves.rows.push_back({x, x, lower});
    }
    out.tables.push_back(std::move(curves));
  } else {
    CsvTable surface{"fig3_surface", {"c", "nu", "c_minus_nu", "z_at_n2_upper", "z_at_n2_lower"}, {}};
    for (int i = 0; i < kSurfaceGrid; ++i) {
      const double c = (i + 0.5) / kSurfaceGrid;
      for (int k = 0; k < kSurfaceGrid; ++k) {
        const double nu = (k + 0.5) / kSurfaceGrid;
        if (nu <= nu_of_c(c) || nu >= c) continue;
        const auto b = region_bounds(c, nu);
        surface.rows.push_back({c, nu, c - nu, nu - b.upper, nu - b.lower});
      }
    }
    out.tables.push_back(std::move(surface));

    CsvTable mems{"fig3_mems", {"c", "c_minus_nu", "nu_minus_n2"}, {}};
    for (int k = 1; k <= kCurvePoints; ++k) {
      const double c = static_cast<double>(k) / kCurvePoints;
      const double nu = nu_of_c(c);
      mems.rows.push_back({c, c - nu, nu - bineg_mems(c)});
    }
    out.tables.push_back(std::move(mems));
    out.tables.push_back(segment_table());
  }

  SweepReport& r = out.membership;
  r.name = "figure_" + stem;
  r.severity = Severity::Conjecture;
  r.n_samples = n;
  r.seed = opts.seed;
  r.config = Json{{"figure", stem}, {"samples", n}, {"rank", rank}};
  if (opts.tol) r.config["tol"] = *opts.tol;
  const double tol = opts.tol.value_or(tol::kMeasure);
  double max_gap = -std::numeric_limits<double>::infinity();
  const auto kinds = membership_kinds(which);
  for (std::uint64_t i = 0; i < n; ++i) {
    for (ViolationKind kind : kinds) {
      const double gap = kind_gap(kind, points[i].m);
      max_gap = std::max(max_gap, gap);
      if (gap > tol) {
        r.violations.push_back(make_record(kind, gap, rank, opts.seed, i));
        if (!is_conjecture(kind)) r.severity = Severity::Hard;
      }
    }
  }
  r.max_gap = n == 0 ? 0.0 : max_gap;
  r.n_violations = r.violations.size();
  r.runtime_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

}  // namespace bineg
