#pragma once

// Command-line front end. The executable is a thin wrapper over run(); tests
// drive run() in-process.

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

namespace lagprop::cli {

enum ExitCode : int { kPass = 0, kCheckFailure = 1, kConfigError = 2, kStrictFailure = 3 };

/// Raised for unreadable or schema-violating configs; maps to exit 2.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// One entry of a verification suite. `value` is compared with `bound`:
/// max_error and mismatches pass when value <= bound, min_ratio when
/// value > bound, max_ratio when value < bound. A --tol override replaces
/// the bound of max_error checks only.
struct Check {
  enum class Kind { max_error, mismatches, min_ratio, max_ratio };
  std::string suite;
  std::string name;
  Kind kind = Kind::max_error;
  double value = 0.0;
  double bound = 0.0;
  bool pass = false;
};

const std::vector<std::string>& suite_names();

/// Runs one suite (or "all") and evaluates every check, applying `tol` to
/// max_error checks when it is positive. Throws ConfigError on an unknown name.
std::vector<Check> run_suite(const std::string& suite, double tol = 0.0);

nlohmann::json report_json(const std::string& suite, double tol, const std::vector<Check>& checks);

/// Shortest decimal that round-trips to the same double.
std::string format_double(double v);

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lagprop::cli
