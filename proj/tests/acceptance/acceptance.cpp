// Acceptance gate. Prints one PASS/FAIL line per criterion.
//
//   bineg_acceptance [--criterion N] [--workdir DIR]
//
// Exit status: 0 all selected criteria pass, 1 a hard criterion failed,
// 2 only conjecture sweeps reported findings.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "bineg/bineg.hpp"
#include "bineg_cli/cli.hpp"

namespace {

namespace fs = std::filesystem;
using namespace bineg;

enum class Outcome { Pass, Fail, Finding };

struct Result {
  Outcome outcome;
  std::string detail;
};

struct Criterion {
  int id;
  std::string title;
  std::function<Result()> run;
};

fs::path g_workdir = fs::temp_directory_path() / "bineg_acceptance";

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

Result pass_if(bool ok, std::string detail) { return {ok ? Outcome::Pass : Outcome::Fail, std::move(detail)}; }

int cli(const std::vector<std::string>& args, std::string* out = nullptr) {
  std::ostringstream o, e;
  const int code = cli::run(args, o, e);
  if (out) *out = o.str();
  return code;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(f), {});
}

Result exact_states() {
  struct Expect {
    const char* spec;
    double c, nu, n2;
  };
  const Expect cases[] = {{"rho1", 0.5, 0.375, 147.0 / 400.0}, {"rho2", 0.5, 0.375, 77.0 / 216.0}};
  double worst = 0.0;
  for (const auto& e : cases) {
    std::string text;
    if (cli({"compute", "--state", e.spec}, &text) != 0) return {Outcome::Fail, std::string("compute failed on ") + e.spec};
    const Json j = Json::parse(text);
    worst = std::max({worst, std::abs(j.at("c").get<double>() - e.c), std::abs(j.at("nu").get<double>() - e.nu),
                      std::abs(j.at("n2").get<double>() - e.n2)});
  }
  return pass_if(worst <= 1e-10, "max deviation " + num(worst) + " (tol 1e-10)");
}

Result closed_forms() {
  const auto r = verify_closed_forms(20);
  int le = 0, gt = 0;
  for (int i = 0; i < 20; ++i)
    for (int j = 0; j < 20; ++j)
      for (int k = 0; k < 20; ++k) {
        const auto d = closed_form_pqr({i / 19.0, j / 19.0, k / 19.0}).derived;
        (d.alpha <= d.beta ? le : gt)++;
      }
  return pass_if(r.n_violations == 0 && r.max_gap <= 1e-9 && le > 0 && gt > 0,
                 std::to_string(r.n_samples) + " states, max gap " + num(r.max_gap) + ", alpha<=beta on " +
                     std::to_string(le) + ", alpha>beta on " + std::to_string(gt));
}

Result proven_properties() {
  std::string detail;
  bool ok = true;
  for (int rank : {2, 3, 4}) {
    const auto r = verify_properties(100000, rank);
    ok = ok && r.n_violations == 0;
    detail += "rank " + std::to_string(rank) + ": " + std::to_string(r.n_violations) + " violations; ";
  }
  const auto pure = verify_properties(10000, 1);
  ok = ok && pure.n_violations == 0;
  detail += "pure: " + std::to_string(pure.n_violations) + " violations (max gap " + num(pure.max_gap) + ")";
  return pass_if(ok, detail);
}

Result saturation() {
  const auto r = verify_saturation(100);
  const auto range = boundary_p_range(0.5, 0.375);
  const double up = binegativity(boundary_family(0.5, 0.375, range.p_min));
  const double lo = binegativity(boundary_family(0.5, 0.375, range.p_max));
  const double dev = std::max(std::abs(up - 147.0 / 400.0), std::abs(lo - 77.0 / 216.0));
  return pass_if(r.n_violations == 0 && dev <= 1e-10,
                 std::to_string(r.n_samples) + " checks, max gap " + num(r.max_gap) +
                     "; (1/2, 3/8) endpoints off by " + num(dev));
}

Result conjecture_sweeps() {
  std::string detail;
  std::uint64_t findings = 0;
  const auto region = verify_region(100000, 2);
  findings += region.n_violations;
  int above_upper = 0;
  for (const auto& v : region.violations) {
    const auto m = measure_triple(state_from_json(v.state));
    above_upper += m.n2 > region_upper_formula(m.c, m.nu);
  }
  detail += "bound sweep: " + std::to_string(region.n_violations) + " of 100000 states outside (" +
            std::to_string(above_upper) + " above the region's upper surface, max gap " + num(region.max_gap) + ")";
  for (auto kind : {ChannelKind::LocalUnitary, ChannelKind::Local, ChannelKind::OneWayLocc, ChannelKind::Ppt}) {
    const auto r = monotonicity_sweep(10000, kind, 2);
    findings += r.n_violations;
    detail += "; monotone " + std::string(to_string(kind)) + ": " + std::to_string(r.n_violations);
  }
  for (Figure f : {Figure::Fig1, Figure::Fig2, Figure::Fig3}) {
    const auto fig = figure_data(f, 100000, 2);
    findings += fig.membership.n_violations;
    detail += "; " + std::string(to_string(f)) + " points outside: " + std::to_string(fig.membership.n_violations);
  }
  return {findings == 0 ? Outcome::Pass : Outcome::Finding, detail};
}

Result structural() {
  double inverse = 0.0;
  for (int k = 0; k < 1000; ++k) {
    const double nu = k / 999.0;
    inverse = std::max(inverse, std::abs(nu_of_c(c_of_nu(nu)) - nu));
  }

  bool monotone = true;
  for (int i = 1; i < 20; ++i) {
    const double c = 0.05 * i;
    for (int k = 1; k < 20; ++k) {
      const double nu = nu_of_c(c) + (c - nu_of_c(c)) * k / 20.0;
      const auto range = boundary_p_range(c, nu);
      double prev = boundary_bineg(c, nu, range.p_min);
      for (int s = 1; s <= 100; ++s) {
        const double v = boundary_bineg(c, nu, range.p_min + (range.p_max - range.p_min) * s / 100.0);
        monotone = monotone && v <= prev + 1e-15;
        prev = v;
      }
    }
  }

  double recon = 0.0;
  for (std::uint64_t i = 0; i < 10000; ++i) {
    Rng rng(2024, i);
    const Matrix g = gaussian_matrix(4, 4, rng);
    const Matrix a = 0.5 * (g + g.adjoint());
    const auto eig = hermitian_eig(a);
    const Matrix back = eig.vectors * eig.values.asDiagonal() * eig.vectors.adjoint();
    recon = std::max(recon, (back - a).norm() / std::max(1.0, a.norm()));
  }
  return pass_if(inverse <= 1e-12 && monotone && recon <= 1e-12,
                 "inverse " + num(inverse) + ", boundary_bineg monotone: " + (monotone ? "yes" : "no") +
                     ", eig reconstruction " + num(recon));
}

Result reproducibility() {
  const std::vector<std::vector<std::string>> commands = {
      {"compute", "--state", "rho2"},
      {"verify", "ordering", "--samples", "2000"},
      {"verify", "region", "--samples", "5000"},
      {"verify", "saturation"},
      {"monotonic", "--samples", "300"},
      {"search", "--restarts", "2", "--steps", "20"},
  };
  int compared = 0;
  for (std::size_t i = 0; i < commands.size(); ++i) {
    std::string texts[2];
    for (int rep = 0; rep < 2; ++rep) {
      const fs::path out = g_workdir / ("repro_" + std::to_string(i) + "_" + std::to_string(rep) + ".json");
      auto args = commands[i];
      args.insert(args.end(), {"--out", out.string()});
      cli(args);
      texts[rep] = slurp(out);
    }
    if (texts[0].empty() || texts[0] != texts[1]) return {Outcome::Fail, "differs: " + commands[i][0]};
    ++compared;
  }
  for (const char* fig : {"fig1", "fig2", "fig3"}) {
    const fs::path a = g_workdir / (std::string(fig) + "_a");
    const fs::path b = g_workdir / (std::string(fig) + "_b");
    cli({"figure", fig, "--samples", "1000", "--seed", "7", "--out", a.string()});
    cli({"figure", fig, "--samples", "1000", "--seed", "7", "--out", b.string()});
    for (const auto& entry : fs::directory_iterator(a)) {
      if (slurp(entry.path()) != slurp(b / entry.path().filename())) {
        return {Outcome::Fail, "differs: " + entry.path().filename().string()};
      }
      ++compared;
    }
  }
  return pass_if(true, std::to_string(compared) + " output files byte-identical across reruns");
}

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--criterion" && i + 1 < argc) {
      only = std::atoi(argv[++i]);
    } else if (arg == "--workdir" && i + 1 < argc) {
      g_workdir = argv[++i];
    } else {
      std::cerr << "usage: bineg_acceptance [--criterion N] [--workdir DIR]\n";
      return 64;
    }
  }
  fs::create_directories(g_workdir);

  const std::vector<Criterion> criteria = {
      {1, "exact rho1/rho2 measures", exact_states},
      {2, "closed-form equivalence on 20^3 grid", closed_forms},
      {3, "proven properties on random states", proven_properties},
      {4, "bound saturation", saturation},
      {5, "conjecture sweeps", conjecture_sweeps},
      {6, "inverse and structural checks", structural},
      {7, "reproducibility", reproducibility},
  };

  int status = 0;
  for (const auto& c : criteria) {
    if (only != 0 && c.id != only) continue;
    const auto start = std::chrono::steady_clock::now();
    Result r;
    try {
      r = c.run();
    } catch (const std::exception& e) {
      r = {Outcome::Fail, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const char* tag = r.outcome == Outcome::Pass ? "PASS" : (r.outcome == Outcome::Fail ? "FAIL" : "FAIL (finding)");
    char line[2048];
    std::snprintf(line, sizeof line, "%s criterion %d: %s -- %s [%.1f s]\n", tag, c.id, c.title.c_str(),
                  r.detail.c_str(), secs);
    std::fputs(line, stdout);
    std::fflush(stdout);
    std::ofstream(g_workdir / ("criterion_" + std::to_string(c.id) + ".txt"), std::ios::binary) << line;
    if (r.outcome == Outcome::Fail) status = 1;
    if (r.outcome == Outcome::Finding && status == 0) status = 2;
  }
  return status;
}
