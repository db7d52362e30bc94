#pragma once

// Command-line frontend. Every subcommand emits one JSON report on `out`
// and a short human summary on `err`.
//
// Exit codes: 0 all checks pass, 1 a check failed (or a built-in
// verification failed), 2 malformed input or refused request.

#include "qrecon/json_io.hpp"

#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace qrecon::cli {

enum class Compare { AtMost, Above, IsTrue };

struct Check {
  std::string name;
  bool pass = false;
  json value;
  std::optional<double> tolerance;
  Compare compare = Compare::IsTrue;
  std::string detail;
};

class Report {
 public:
  explicit Report(std::string command) : command_(std::move(command)) {}

  void add_input(const std::string& path, const std::string& digest);
  void add_output(const std::string& path, const std::string& digest);
  // value <= tolerance
  void check_at_most(std::string name, double value, double tolerance, std::string detail = {});
  // value > threshold
  void check_above(std::string name, double value, double threshold, std::string detail = {});
  void check_true(std::string name, bool value, std::string detail = {});
  void set_error(std::string code, std::string message, int exit_code);

  json& result() { return result_; }
  const std::vector<Check>& checks() const { return checks_; }
  int exit_code() const;
  json to_json() const;
  std::string summary() const;

 private:
  std::string command_;
  json inputs_ = json::array();
  json outputs_ = json::array();
  std::vector<Check> checks_;
  json result_ = json::object();
  std::optional<json> error_;
  int error_exit_ = 0;
};

std::string sha256_hex(std::string_view bytes);

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qrecon::cli
