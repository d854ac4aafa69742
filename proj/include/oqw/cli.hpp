#pragma once

#include "oqw/metrics.hpp"
#include "oqw/walk.hpp"

#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace oqw::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 2,
  kBadGraph = 3,
  kBadParameter = 4,
  kIoFailure = 5,
  kVerifyFailed = 6,
};

class CliError : public std::runtime_error {
 public:
  CliError(ExitCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ExitCode code() const { return code_; }

 private:
  ExitCode code_;
};

enum class OutputFormat { kCsv, kJson };

struct SweepSpec {
  std::string parameter;
  double min = 0.0;
  double max = 0.0;
  std::size_t count = 1;

  std::vector<double> values() const;
};

struct CliConfig {
  std::string graph_spec;
  RunConfig run;
  OutputFormat format = OutputFormat::kCsv;
  std::string out = "-";  // "-" writes a single run to stdout
  std::optional<SweepSpec> sweep;
  bool verify = false;
};

/// Parses a graph spec such as "path:5", "bipartite:2,3" or "file:g.txt".
Graph parse_graph_spec(const std::string& spec);

SweepSpec parse_sweep_spec(const std::string& spec);

/// Returns the validated config; throws CliError on bad input. --help
/// surfaces as CliError with code kOk and the help text as message.
CliConfig parse_args(int argc, const char* const* argv);

/// Returns a copy of cfg with the named channel parameter set to value.
RunConfig with_parameter(const RunConfig& cfg, const std::string& parameter, double value);

struct VerifyReport {
  double completeness_residual = 0.0;  // per-vertex, worst over all steps
  double superop_residual = 0.0;       // global n^2-dimensional completeness
  std::optional<double> oracle_residual;  // absent when n is too large
  bool passed = false;
};

VerifyReport verify_run(const RunConfig& cfg, const std::vector<WalkerState>& snapshots);

void write_csv(std::ostream& out, const MetricSeries& series);
void write_json(std::ostream& out, const CliConfig& cfg, const RunConfig& run,
                const MetricSeries& series, const std::optional<VerifyReport>& verify);

/// Runs the configured job; returns the process exit code.
int execute(const CliConfig& cfg, std::ostream& stdout_stream, std::ostream& stderr_stream);

/// parse_args + execute with error-to-exit-code mapping.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace oqw::cli
