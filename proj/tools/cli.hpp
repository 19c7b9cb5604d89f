#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "pdwg/mesh.hpp"

namespace pdwg::cli {

enum ExitCode { kSuccess = 0, kCheckFailure = 1, kUsageError = 2, kSolverFailure = 3 };

struct RunConfig {
  std::string command;
  std::string problem = "sinsin";
  std::string case_name = "case1";
  std::vector<BoundarySegmentSpec> segments;  // overrides case_name when non-empty
  int n = 8;
  std::vector<int> n_list = {1, 2, 4, 8, 16, 32};
  std::vector<double> amplitudes = {0.0, 0.005, 0.01, 0.05};
  std::uint64_t seed = 20240229;
  std::string out = ".";
  int quad_degree = 6;
  int edge_points = 4;
  bool diagnostics = false;
};

nlohmann::json to_json(const RunConfig& config);

/// Reads the keys of a JSON object into config. Throws std::invalid_argument
/// on unknown keys or ill-typed values.
void apply_json(const nlohmann::json& j, RunConfig& config);

/// "side[:begin:end]:flags" with flags a non-empty combination of D and N,
/// e.g. "bottom:0:0.5:DN" or "left:D".
BoundarySegmentSpec parse_segment(const std::string& text);
std::string format_segment(const BoundarySegmentSpec& s);

/// Entry point of the pdwg tool. Output goes to the given streams so tests can
/// capture it.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace pdwg::cli
