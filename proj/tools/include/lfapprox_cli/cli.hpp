#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "lfapprox/eigenform/coefficients.hpp"

namespace lfapprox::cli {

enum ExitCode : int {
  kOk = 0,
  kCheckFailed = 1,
  kUsage = 2,
  kNumeric = 3,
  kIo = 4,
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Options shared by every subcommand. Precedence: command line, then the
// LFAPPROX_CACHE_DIR environment variable (cache dir only), then --config,
// then these defaults.
struct RunConfig {
  std::string form = "delta";
  std::string coeff_file;
  std::optional<int> weight;
  std::optional<long> level;
  std::optional<int> sign;
  int bits = 160;
  int N = 3;
  std::string target_error = "1e-20";
  std::string out = "-";
  std::string format = "csv";
  std::string cache_dir;

  nlohmann::json to_json() const;
};

// Spec from --form or --coeff-file plus the weight/level/sign overrides.
EigenformSpec resolve_spec(const RunConfig& cfg);

// Supplies coefficient tables for the resolved form. Builtin forms are
// cached under cache_dir as "<form>.txt"; a cached file is reused when its
// header matches the spec and holds at least the requested count.
class CoefficientSource {
 public:
  CoefficientSource(const RunConfig& cfg, std::ostream& warnings);

  const EigenformSpec& spec() const { return spec_; }
  // A file source returns the whole file when n_max is 0 or larger than it.
  CoefficientTable obtain(long n_max);
  bool last_was_cache_hit() const { return last_hit_; }
  std::string cache_path() const;

 private:
  RunConfig cfg_;
  EigenformSpec spec_;
  std::ostream& warnings_;
  bool last_hit_ = false;
};

struct Table {
  nlohmann::json meta;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};

// csv: "# key=value" meta lines, a header row and decimal-string cells.
// json: {"meta", "columns", "rows"} with every cell a string.
void write_table(const Table& table, const std::string& format, std::ostream& out);

// Significant decimal digits that carry a value of the given precision.
int decimal_digits(int bits);

// A coefficient list from a downloaded body: either "n a_n" lines or a JSON
// array of a_n (a leading a_0 = 0 is dropped).
CoefficientTable parse_fetched_coefficients(const std::string& body);

int exit_code_for(const std::exception& e);

// Runs one command line (args excludes the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lfapprox::cli
