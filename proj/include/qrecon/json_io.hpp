#pragma once

// Matrix JSON: {"rows": n, "cols": m, "data": [[re, im], ...]} in row-major
// order. Doubles are written in shortest round-trip form, so a file that is
// written and read back reproduces every bit.

#include "qrecon/matrix.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace qrecon {

using json = nlohmann::json;

json matrix_to_json(const Matrix& m);
// Throws InvalidInput on malformed documents.
Matrix matrix_from_json(const json& j);
std::vector<Matrix> matrices_from_json(const json& j);

json load_json_file(const std::string& path);
void write_json_file(const std::string& path, const json& j);

}  // namespace qrecon
