#ifndef CYCLEWALK_EXPERIMENT_H_
#define CYCLEWALK_EXPERIMENT_H_

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace cyclewalk {

inline constexpr std::string_view kToolkitVersion = "cyclewalk 1.0.0";

enum class OutputFormat { kCsv, kCsvSvg };

struct ExperimentParams {
  std::optional<std::uint32_t> n;
  std::optional<double> c;
  std::vector<double> c_grid;  // empty: experiment default
  std::optional<std::uint64_t> reps;
  std::optional<double> a;
};

struct ExperimentSpec {
  std::string name;
  ExperimentParams params;
  std::uint64_t seed = 1;
  std::string out_dir = ".";
  OutputFormat format = OutputFormat::kCsv;
  unsigned threads = 0;  // does not affect results
};

// Rows are stored pre-formatted so that writing is byte-stable.
struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  void add_row(std::vector<std::string> row);
};

struct Check {
  std::string name;
  double value = 0.0;
  std::string criterion;  // human-readable threshold
  bool pass = false;
};

struct ExperimentResult {
  std::string name;
  ExperimentSpec spec;  // with defaults filled in
  std::vector<Table> tables;
  std::map<std::string, double> summary;
  std::vector<Check> checks;

  bool all_pass() const;
  double metric(const std::string& key) const;
};

// 12 significant digits.
std::string format_number(double v);

const std::vector<std::string>& experiment_names();

// Fills experiment-specific defaults and validates ranges; throws
// std::invalid_argument on unknown names or bad parameters.
ExperimentSpec resolve(const ExperimentSpec& spec);

ExperimentResult run_experiment(const ExperimentSpec& spec);

void write_table_csv(std::ostream& out, const Table& table);

// key=value lines.
void write_manifest(std::ostream& out, const ExperimentSpec& spec, double wall_seconds);
ExperimentSpec parse_manifest(std::istream& in);

// Minimal line plot of every numeric column against the first one.
void write_table_svg(std::ostream& out, const Table& table);

// Writes <name>.csv (first table), <name>_<table>.csv (others),
// <name>_summary.csv, <name>.manifest and, for kCsvSvg, <name>.svg into
// spec.out_dir. Returns the paths written.
std::vector<std::string> write_result(const ExperimentResult& result, double wall_seconds);

}  // namespace cyclewalk

#endif  // CYCLEWALK_EXPERIMENT_H_
