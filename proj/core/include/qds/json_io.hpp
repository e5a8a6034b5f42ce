// json_io.hpp — Channel / state JSON interchange format and digests

#pragma once

#include "qds/channel.hpp"
#include "qds/density.hpp"
#include "qds/errors.hpp"

#include <json.hpp>

#include <string>
#include <string_view>

namespace qds::io {

using nlohmann::json;

// Matrices serialize as row-major arrays of [re, im] pairs.
json matrix_to_json(const Matrix& m);
// Rejects wrong lengths and non-finite entries; `where` names the field in
// error messages.
Matrix matrix_from_json(const json& j, Index rows, Index cols, const std::string& where);

// Channel JSON:
//   {"dim": N, "time": "discrete"|"continuous",
//    "repr": "kraus"|"superop"|"choi"|"lindblad",
//    "matrices": [...], "hamiltonian": [...], "jumps": [...]}
json system_to_json(const System& s);
System system_from_json(const json& j);

// State JSON: {"dim": N, "matrix": [...]}.
json state_to_json(const DensityMatrix& rho);
DensityMatrix state_from_json(const json& j, const ToleranceSet& tol = ToleranceSet::defaults());

// Parses a file; ParseError carries the position for syntax errors.
System load_system(const std::string& path);
System load_system(const std::string& path, std::string* digest_out);
DensityMatrix load_state(const std::string& path, const ToleranceSet& tol = ToleranceSet::defaults());

std::string read_file(const std::string& path);

// FNV-1a 64-bit content hash, "fnv1a64:<16 hex digits>".
std::string content_digest(std::string_view bytes);

}  // namespace qds::io
