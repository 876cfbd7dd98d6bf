#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "specabs/hierarchy.hpp"

namespace specabs::cli {

struct RunConfig {
  std::string command;
  std::filesystem::path input;
  /// Main report path; empty writes the report to stdout and skips companion
  /// files.
  std::filesystem::path output;
  /// Observed FC matrix (fit-fc) or linearity mask (jacobian-graph).
  std::filesystem::path observed;
  std::filesystem::path mask;
  std::uint64_t seed = 0;
  std::size_t k = 2;
  double p = 1.2;
  std::size_t continuation_steps = 5;
  std::string metric = "euclidean";
  double q = 0.5;
  std::optional<std::size_t> dims;
  double beta = 1.0;
  double scale = 1.0;
  double offset = 0.0;
  double threshold = 0.0;
  std::vector<std::string> levels;
  std::optional<std::string> laplacian;
  bool dot = false;
};

/// Parses argv into a RunConfig. Throws Error(InvalidArgument) on usage
/// errors; returns nullopt when help was requested (text already printed to
/// `out`).
std::optional<RunConfig> parse_args(int argc, const char* const* argv, std::ostream& out);

/// "k=4,method=kway-embedding,dims=3,metric=manhattan". Keys: k (required),
/// method (recursive-linear | recursive-p | kway-embedding), p, steps, dims,
/// metric, q, seed.
LevelSpec parse_level_spec(const std::string& text, std::uint64_t default_seed);

DistanceMetric parse_metric(const std::string& name, double q);

/// Sibling of the report path: "out/report.json" + ".scree.csv" gives
/// "out/report.scree.csv".
std::filesystem::path companion_path(const std::filesystem::path& output, const std::string& suffix);

/// Executes one command. Returns the process exit status; on failure an
/// {error, detail} JSON object is written to `err` and no output file is left
/// behind.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// parse_args + run with error reporting, for main().
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace specabs::cli
