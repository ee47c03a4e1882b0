#include "bineg/serialize.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include "bineg/errors.hpp"

namespace bineg {

namespace {

bool is_scalar(const Json& j) { return !j.is_array() && !j.is_object(); }

void write_json(std::ostringstream& out, const Json& j, int indent, int depth) {
  const auto newline = [&](int d) {
    if (indent < 0) return;
    out << '\n' << std::string(static_cast<std::size_t>(indent * d), ' ');
  };
  switch (j.type()) {
    case Json::value_t::number_float:
      out << format_double(j.get<double>());
      return;
    case Json::value_t::array: {
      if (j.empty()) {
        out << "[]";
        return;
      }
      const bool flat = std::all_of(j.begin(), j.end(), is_scalar);
      out << '[';
      bool first = true;
      for (const auto& el : j) {
        if (!first) out << (flat && indent >= 0 ? ", " : ",");
        first = false;
        if (!flat) newline(depth + 1);
        write_json(out, el, indent, depth + 1);
      }
      if (!flat) newline(depth);
      out << ']';
      return;
    }
    case Json::value_t::object: {
      if (j.empty()) {
        out << "{}";
        return;
      }
      out << '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out << ',';
        first = false;
        newline(depth + 1);
        out << Json(it.key()).dump() << (indent >= 0 ? ": " : ":");
        write_json(out, it.value(), indent, depth + 1);
      }
      newline(depth);
      out << '}';
      return;
    }
    default:
      out << j.dump();
      return;
  }
}

double parse_number(std::string_view text) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  double value = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end || text.empty()) {
    throw ParseError("cannot parse number '" + std::string(text) + "'");
  }
  return value;
}

std::vector<double> parse_args(std::string_view text) {
  std::vector<double> out;
  while (true) {
    const auto comma = text.find(',');
    out.push_back(parse_number(text.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return out;
}

double number_field(const Json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number()) {
    throw ParseError(std::string("family object needs numeric field '") + key + "'");
  }
  return j.at(key).get<double>();
}

void expect_args(const std::vector<double>& args, std::size_t n, std::string_view name) {
  if (args.size() != n) {
    throw ParseError("family '" + std::string(name) + "' takes " + std::to_string(n) +
                     " argument(s)");
  }
}

}  // namespace

std::string format_double(double x) {
  if (!std::isfinite(x)) return "null";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string dump_json(const Json& j, int indent) {
  std::ostringstream out;
  write_json(out, j, indent, 0);
  return out.str();
}

Json matrix_to_json(const Matrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(Json::array({m(i, k).real(), m(i, k).imag()}));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) throw ParseError("matrix must be a non-empty array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  if (!j.front().is_array() || j.front().empty()) throw ParseError("matrix rows must be arrays");
  const auto cols = static_cast<Eigen::Index>(j.front().size());
  Matrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const Json& row = j.at(static_cast<std::size_t>(i));
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
      throw ParseError("matrix rows must all have the same length");
    }
    for (Eigen::Index k = 0; k < cols; ++k) {
      const Json& entry = row.at(static_cast<std::size_t>(k));
      if (!entry.is_array() || entry.size() != 2 || !entry[0].is_number() || !entry[1].is_number()) {
        throw ParseError("matrix entries must be [re, im] pairs");
      }
      m(i, k) = Complex(entry[0].get<double>(), entry[1].get<double>());
    }
  }
  return m;
}

Json state_to_json(const DensityMatrix& rho) { return matrix_to_json(rho.matrix()); }

DensityMatrix state_from_json(const Json& j) { return DensityMatrix(matrix_from_json(j)); }

Json channel_to_json(const KrausChannel& ch) {
  Json ops = Json::array();
  for (const auto& k : ch.ops()) ops.push_back(matrix_to_json(k));
  return ops;
}

KrausChannel channel_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) throw ParseError("channel must be a non-empty list of Kraus operators");
  std::vector<Matrix> ops;
  for (const auto& op : j) ops.push_back(matrix_from_json(op));
  return KrausChannel(std::move(ops));
}

Json measures_to_json(const MeasureTriple& m) { return Json{{"c", m.c}, {"nu", m.nu}, {"n2", m.n2}}; }

StateSpec family_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("family") || !j.at("family").is_string()) {
    throw ParseError("family object needs a string field 'family'");
  }
  const auto name = j.at("family").get<std::string>();
  if (name == "sigma_pqr") {
    FamilyParams p{number_field(j, "p"), number_field(j, "q"), number_field(j, "r")};
    return {sigma_pqr(p), Json{{"family", name}, {"p", p.p}, {"q", p.q}, {"r", p.r}}};
  }
  if (name == "sigma_mems") {
    const double c = number_field(j, "c");
    return {sigma_mems(c), Json{{"family", name}, {"c", c}}};
  }
  if (name == "boundary") {
    const double c = number_field(j, "c");
    const double nu = number_field(j, "nu");
    const double p = number_field(j, "p");
    return {boundary_family(c, nu, p), Json{{"family", name}, {"c", c}, {"nu", nu}, {"p", p}}};
  }
  throw ParseError("unknown family '" + name + "'");
}

StateSpec parse_family_spec(std::string_view spec) {
  const auto colon = spec.find(':');
  const std::string name(spec.substr(0, colon));
  const std::vector<double> args =
      colon == std::string_view::npos ? std::vector<double>{} : parse_args(spec.substr(colon + 1));

  if (name == "sigma_pqr") {
    expect_args(args, 3, name);
    return family_from_json(Json{{"family", "sigma_pqr"}, {"p", args[0]}, {"q", args[1]}, {"r", args[2]}});
  }
  if (name == "mems" || name == "sigma_mems") {
    expect_args(args, 1, name);
    return family_from_json(Json{{"family", "sigma_mems"}, {"c", args[0]}});
  }
  if (name == "boundary") {
    expect_args(args, 3, name);
    return family_from_json(Json{{"family", "boundary"}, {"c", args[0]}, {"nu", args[1]}, {"p", args[2]}});
  }
  if (name == "rho1" || name == "rho2") {
    expect_args(args, 0, name);
    const FamilyParams p = name == "rho1" ? rho1_params() : rho2_params();
    return {sigma_pqr(p), Json{{"family", "sigma_pqr"}, {"name", name}, {"p", p.p}, {"q", p.q}, {"r", p.r}}};
  }
  if (name == "phi_plus") {
    expect_args(args, 0, name);
    return {DensityMatrix(phi_plus()), Json{{"family", name}}};
  }
  if (name == "psi_minus") {
    expect_args(args, 0, name);
    return {DensityMatrix(psi_minus_0011()), Json{{"family", name}}};
  }
  if (name == "phi_q") {
    expect_args(args, 1, name);
    return {DensityMatrix(phi_q(args[0])), Json{{"family", name}, {"q", args[0]}}};
  }
  if (name == "psi_r") {
    expect_args(args, 1, name);
    return {DensityMatrix(psi_r(args[0])), Json{{"family", name}, {"r", args[0]}}};
  }
  if (name == "basis") {
    expect_args(args, 1, name);
    const double idx = args[0];
    if (idx != std::floor(idx)) throw ParseError("basis index must be an integer");
    return {DensityMatrix(basis_state(static_cast<int>(idx))), Json{{"family", name}, {"index", static_cast<int>(idx)}}};
  }
  throw ParseError("unknown state spec '" + std::string(spec) + "'");
}

StateSpec load_state(std::string_view spec_or_path) {
  const std::string path(spec_or_path);
  std::ifstream in(path);
  if (!in) return parse_family_spec(spec_or_path);

  Json j;
  try {
    in >> j;
  } catch (const Json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
  if (j.is_object()) return family_from_json(j);
  return {state_from_json(j), Json{{"family", "matrix"}, {"path", path}}};
}

}  // namespace bineg
