#include "bineg_cli/cli.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>

#include "bineg/bineg.hpp"

namespace bineg::cli {

namespace {

struct Config {
  std::uint64_t seed = 42;
  std::string samples;
  int rank = 2;
  double tol = std::numeric_limits<double>::quiet_NaN();
  int grid = 20;
  int threads = 1;
  std::string format = "json";
  std::string out;
  std::string state;
  std::string kind;
  std::string target;
  int restarts = 10;
  int steps = 100;
  double step_size = 0.05;
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::uint64_t parse_count(const std::string& text, std::uint64_t fallback) {
  if (text.empty()) return fallback;
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || !(value >= 0.0) || value > 9007199254740992.0 ||
      value != std::floor(value)) {
    throw UsageError("--samples: expected a non-negative integer, got '" + text + "'");
  }
  return static_cast<std::uint64_t>(value);
}

SweepOptions sweep_options(const Config& cfg) {
  SweepOptions opts;
  opts.seed = cfg.seed;
  opts.threads = cfg.threads;
  if (!std::isnan(cfg.tol)) opts.tol = cfg.tol;
  return opts;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw UsageError("cannot open '" + path + "' for writing");
  f << text;
  f.close();
  if (!f) throw UsageError("failed writing '" + path + "'");
}

void emit(const Config& cfg, const std::string& text, std::ostream& out) {
  if (cfg.out.empty()) {
    out << text;
  } else {
    write_file(cfg.out, text);
  }
}

std::string report_text(const SweepReport& r, const std::string& format) {
  if (format == "csv") {
    CsvTable t{r.name, {"n_samples", "n_violations", "max_gap", "seed", "hard"}, {}};
    t.rows.push_back({static_cast<double>(r.n_samples), static_cast<double>(r.n_violations), r.max_gap,
                      static_cast<double>(r.seed), r.severity == Severity::Hard ? 1.0 : 0.0});
    return to_csv(t);
  }
  return dump_json(report_to_json(r)) + "\n";
}

void log_timing(std::ostream& err, const SweepReport& r) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3f", r.runtime_seconds);
  err << r.name << ": " << r.n_violations << " violation(s) in " << r.n_samples << " sample(s), max_gap "
      << format_double(r.max_gap) << ", " << buf << " s\n";
}

int finish_report(const Config& cfg, const SweepReport& r, std::ostream& out, std::ostream& err) {
  emit(cfg, report_text(r, cfg.format), out);
  log_timing(err, r);
  return exit_code(r);
}

int run_compute(const Config& cfg, std::ostream& out) {
  const StateSpec spec = load_state(cfg.state);
  const MeasureTriple m = measure_triple(spec.state);
  const auto pt = partial_transpose_spectrum(spec.state);
  const bool ppt = is_ppt(spec.state);
  if (cfg.format == "csv") {
    std::ostringstream s;
    s << "c,nu,n2,mu,is_ppt\n"
      << format_double(m.c) << ',' << format_double(m.nu) << ',' << format_double(m.n2) << ','
      << (pt.mu ? format_double(*pt.mu) : std::string()) << ',' << (ppt ? "true" : "false") << '\n';
    emit(cfg, s.str(), out);
    return 0;
  }
  Json j{{"c", m.c}, {"nu", m.nu}, {"n2", m.n2}, {"is_ppt", ppt}, {"state", spec.description}};
  j["mu"] = pt.mu ? Json(*pt.mu) : Json(nullptr);
  emit(cfg, dump_json(j) + "\n", out);
  return 0;
}

int run_verify(const Config& cfg, std::ostream& out, std::ostream& err) {
  const SweepOptions opts = sweep_options(cfg);
  SweepReport r;
  if (cfg.target == "ordering") {
    r = verify_ordering(parse_count(cfg.samples, 100000), cfg.rank, opts);
  } else if (cfg.target == "region") {
    r = verify_region(parse_count(cfg.samples, 100000), cfg.rank, opts);
  } else if (cfg.target == "properties") {
    r = verify_properties(parse_count(cfg.samples, 100000), cfg.rank, opts);
  } else if (cfg.target == "closed-forms") {
    r = verify_closed_forms(cfg.grid, opts);
  } else {
    r = verify_saturation(static_cast<int>(parse_count(cfg.samples, 100)), opts);
  }
  return finish_report(cfg, r, out, err);
}

int run_monotonic(const Config& cfg, std::ostream& out, std::ostream& err) {
  std::optional<ChannelKind> kind;
  if (cfg.kind != "mixed") kind = parse_channel_kind(cfg.kind);
  const auto r = monotonicity_sweep(parse_count(cfg.samples, 10000), kind, cfg.rank, sweep_options(cfg));
  return finish_report(cfg, r, out, err);
}

int run_search(const Config& cfg, std::ostream& out, std::ostream& err) {
  SearchOptions opts;
  opts.kind = parse_channel_kind(cfg.kind);
  opts.restarts = cfg.restarts;
  opts.steps = cfg.steps;
  opts.step_size = cfg.step_size;
  opts.rank = cfg.rank;
  opts.seed = cfg.seed;
  opts.threads = cfg.threads;
  const SearchResult res = counterexample_search(opts);
  if (cfg.format == "csv") return finish_report(cfg, res.report, out, err);

  Json j = report_to_json(res.report);
  j["best_gap"] = res.best_gap;
  j["best_restart"] = res.best_restart;
  j["best_state"] = res.best_state;
  j["best_channel"] = res.best_channel;
  emit(cfg, dump_json(j) + "\n", out);
  log_timing(err, res.report);
  return exit_code(res.report);
}

int run_figure(const Config& cfg, std::ostream& err) {
  const Figure which = parse_figure(cfg.target);
  const FigureOutput fig = figure_data(which, parse_count(cfg.samples, 100000), cfg.rank, sweep_options(cfg));
  const std::filesystem::path dir = cfg.out.empty() ? std::filesystem::path(".") : std::filesystem::path(cfg.out);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw UsageError("cannot create directory '" + dir.string() + "': " + ec.message());
  for (const auto& table : fig.tables) write_file((dir / (table.name + ".csv")).string(), to_csv(table));
  write_file((dir / (std::string(to_string(which)) + "_membership.json")).string(),
             dump_json(report_to_json(fig.membership)) + "\n");
  log_timing(err, fig.membership);
  return exit_code(fig.membership);
}

void add_seed(CLI::App* cmd, Config& cfg) {
  cmd->add_option("--seed", cfg.seed, "Master seed (falls back to $BINEG_SEED, then 42)")->envname("BINEG_SEED");
}

void add_sampling(CLI::App* cmd, Config& cfg, const std::string& samples_help) {
  add_seed(cmd, cfg);
  cmd->add_option("--samples", cfg.samples, samples_help);
  cmd->add_option("--rank", cfg.rank, "Rank of random mixed states (1 draws pure states)")
      ->check(CLI::Range(1, 4))
      ->capture_default_str();
  cmd->add_option("--threads", cfg.threads, "Worker threads")->check(CLI::PositiveNumber)->capture_default_str();
}

void add_tol(CLI::App* cmd, Config& cfg) {
  cmd->add_option("--tol", cfg.tol, "Override the tolerance of every check")->check(CLI::NonNegativeNumber);
}

void add_output(CLI::App* cmd, Config& cfg, const std::string& out_help) {
  cmd->add_option("--format", cfg.format, "Report format")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  cmd->add_option("--out", cfg.out, out_help);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Config cfg;
  CLI::App app{"Two-qubit entanglement measures: negativity, binegativity and concurrence", "bineg"};
  app.require_subcommand(1);

  auto* compute = app.add_subcommand("compute", "Concurrence, negativity and binegativity of one state");
  compute->add_option("--state", cfg.state, "JSON matrix file, family JSON file, or family spec such as "
                                            "sigma_pqr:0.5,0.3,0.7, mems:0.5, boundary:c,nu,p, rho1, rho2")
      ->required();
  add_output(compute, cfg, "Write the result to this file instead of stdout");

  auto* verify = app.add_subcommand("verify", "Run a verification sweep");
  verify->add_option("check", cfg.target, "Which sweep to run")
      ->required()
      ->check(CLI::IsMember({"ordering", "region", "closed-forms", "properties", "saturation"}));
  add_sampling(verify, cfg, "Random states (default 100000); random (c, nu) pairs for saturation (default 100)");
  add_tol(verify, cfg);
  verify->add_option("--grid", cfg.grid, "Points per axis of the closed-form (p, q, r) lattice")
      ->check(CLI::Range(2, 1000))
      ->capture_default_str();
  add_output(verify, cfg, "Write the report to this file instead of stdout");

  auto* monotonic = app.add_subcommand("monotonic", "Check that binegativity does not increase under channels");
  cfg.kind = "mixed";
  monotonic->add_option("--kind", cfg.kind, "Channel family; mixed cycles local, one_way_locc and ppt")
      ->check(CLI::IsMember({"mixed", "local_unitary", "local", "one_way_locc", "ppt"}))
      ->capture_default_str();
  add_sampling(monotonic, cfg, "(state, channel) pairs (default 10000)");
  add_tol(monotonic, cfg);
  add_output(monotonic, cfg, "Write the report to this file instead of stdout");

  auto* search = app.add_subcommand("search", "Hill-climbing search for a binegativity increase");
  std::string search_kind = "one_way_locc";
  search->add_option("--kind", search_kind, "Channel family")
      ->check(CLI::IsMember({"local_unitary", "local", "one_way_locc", "ppt"}))
      ->capture_default_str();
  add_seed(search, cfg);
  search->add_option("--rank", cfg.rank, "Rank of the state")->check(CLI::Range(1, 4))->capture_default_str();
  search->add_option("--restarts", cfg.restarts, "Independent restarts")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  search->add_option("--steps", cfg.steps, "Perturbation steps per restart")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  search->add_option("--step-size", cfg.step_size, "Standard deviation of each perturbation")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  search->add_option("--threads", cfg.threads, "Worker threads")->check(CLI::PositiveNumber)->capture_default_str();
  add_output(search, cfg, "Write the report to this file instead of stdout");

  auto* figure = app.add_subcommand("figure", "Emit scatter and bound-curve CSV files");
  figure->add_option("which", cfg.target, "Figure")->required()->check(CLI::IsMember({"fig1", "fig2", "fig3"}));
  add_sampling(figure, cfg, "Random states in the scatter (default 100000)");
  add_tol(figure, cfg);
  figure->add_option("--out", cfg.out, "Output directory (default: current directory)");

  std::vector<std::string> storage;
  storage.reserve(args.size() + 1);
  storage.emplace_back("bineg");
  storage.insert(storage.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& s : storage) argv.push_back(s.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : kUsageError;
  }

  try {
    if (compute->parsed()) return run_compute(cfg, out);
    if (verify->parsed()) return run_verify(cfg, out, err);
    if (monotonic->parsed()) return run_monotonic(cfg, out, err);
    if (search->parsed()) {
      cfg.kind = search_kind;
      return run_search(cfg, out, err);
    }
    return run_figure(cfg, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const NoConvergence& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  }
}

}  // namespace bineg::cli
