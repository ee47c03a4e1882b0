#pragma once

#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "bineg/channels.hpp"
#include "bineg/measures.hpp"
#include "bineg/states.hpp"

namespace bineg {

using Json = nlohmann::json;

// printf("%.17g"); non-finite values print as null.
std::string format_double(double x);

// Serializes like Json::dump but writes every floating-point number with 17
// significant digits, so files diff meaningfully across implementations.
std::string dump_json(const Json& j, int indent = 2);

// Nested rows x cols array of [re, im] pairs.
Json matrix_to_json(const Matrix& m);
// Throws ParseError.
Matrix matrix_from_json(const Json& j);

Json state_to_json(const DensityMatrix& rho);
// Throws ParseError or InvalidState.
DensityMatrix state_from_json(const Json& j);

// Kraus channels serialize as a list of operators.
Json channel_to_json(const KrausChannel& ch);
KrausChannel channel_from_json(const Json& j);

Json measures_to_json(const MeasureTriple& m);

// A parsed state together with the family description it came from.
struct StateSpec {
  DensityMatrix state;
  Json description;
};

// {"family": "sigma_pqr", "p":, "q":, "r":}, {"family": "sigma_mems", "c":},
// {"family": "boundary", "c":, "nu":, "p":}.
StateSpec family_from_json(const Json& j);

// Mini-grammar name[:v1,v2,...]:
//   sigma_pqr:p,q,r  mems:c (or sigma_mems:c)  boundary:c,nu,p
//   rho1  rho2  phi_plus  psi_minus  phi_q:q  psi_r:r  basis:i
// Throws ParseError.
StateSpec parse_family_spec(std::string_view spec);

// Family spec, or a path to a JSON file holding a matrix or family object.
StateSpec load_state(std::string_view spec_or_path);

}  // namespace bineg
