#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "flatmod/matrix_core.hpp"

namespace flatmod::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 1;
inline constexpr int kExitVerdictFailure = 2;

struct RunConfig {
  std::string command;
  /// JSON input from a file, or inline; neither means an empty object.
  std::optional<std::string> input_path;
  std::optional<std::string> inline_json;
  std::uint64_t seed = 7;
  int trials = 100;
  /// Flag overrides, applied on top of an input "tolerance" object.
  std::optional<double> tol_rank;
  std::optional<double> tol_match;
  std::optional<double> tol_unit;
  /// Report destination; stdout when empty.
  std::optional<std::string> output_path;
  std::string format = "json";
};

const std::vector<std::string>& command_names();

/// Runs one subcommand and writes its JSON report (or an error object) to
/// the output path or `out`. Returns kExitOk, kExitVerdictFailure when a
/// checked claim fails, or kExitInputError for malformed input and library
/// errors.
int run(const RunConfig& config, std::ostream& out);

}  // namespace flatmod::cli
