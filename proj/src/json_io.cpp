#include "qrecon/json_io.hpp"

#include "qrecon/errors.hpp"

#include <fstream>
#include <sstream>

namespace qrecon {

json matrix_to_json(const Matrix& m) {
  json data = json::array();
  for (const auto& z : m.data()) data.push_back(json::array({z.real(), z.imag()}));
  return json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

Matrix matrix_from_json(const json& j) {
  if (!j.is_object() || !j.contains("rows") || !j.contains("cols") || !j.contains("data")) {
    throw Error(ErrorCode::InvalidInput, "matrix JSON needs \"rows\", \"cols\" and \"data\"");
  }
  auto count = [](const json& v) { return v.is_number_integer() && v.get<long long>() >= 0; };
  if (!count(j["rows"]) || !count(j["cols"]) || !j["data"].is_array()) {
    throw Error(ErrorCode::InvalidInput, "matrix JSON: rows/cols must be non-negative integers, data an array");
  }
  const auto rows = j["rows"].get<std::size_t>();
  const auto cols = j["cols"].get<std::size_t>();
  const auto& data = j["data"];
  if (data.size() != rows * cols) {
    throw Error(ErrorCode::InvalidInput, "matrix JSON: data holds " + std::to_string(data.size()) +
                                             " entries, expected " + std::to_string(rows * cols));
  }
  std::vector<cplx> entries;
  entries.reserve(data.size());
  for (const auto& e : data) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
      throw Error(ErrorCode::InvalidInput, "matrix JSON: every entry must be [re, im]");
    }
    entries.emplace_back(e[0].get<double>(), e[1].get<double>());
  }
  Matrix m(rows, cols, std::move(entries));
  if (!m.all_finite()) throw Error(ErrorCode::InvalidInput, "matrix JSON: non-finite entry");
  return m;
}

std::vector<Matrix> matrices_from_json(const json& j) {
  if (!j.is_array()) throw Error(ErrorCode::InvalidInput, "expected a JSON array of matrices");
  std::vector<Matrix> out;
  for (const auto& e : j) out.push_back(matrix_from_json(e));
  return out;
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidInput, "cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return json::parse(buf.str());
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::InvalidInput, path + ": " + e.what());
  }
}

void write_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::InvalidInput, "cannot write " + path);
  out << j.dump(2) << '\n';
}

}  // namespace qrecon
