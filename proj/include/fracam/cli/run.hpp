#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fracam/algebra/expr.hpp"
#include "fracam/model/model.hpp"

namespace fracam::cli {

using algebra::Param;
using model::ModelParams;

inline constexpr int kExitOk = 0;
inline constexpr int kExitIo = 1;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitConvergence = 3;

enum class Command { spectrum, brackets, fractional_j, kinetic_j, duality, phases };
enum class Format { csv, json };

std::string_view command_name(Command c);
/// Throws model::ValidationError for an unknown name.
Command command_from_name(std::string_view name);
Format format_from_name(std::string_view name);

/// Inclusive integer range "a..b" or a single integer. Empty when first > last.
struct SectorRange {
  int first = 0;
  int last = 3;

  bool empty() const { return first > last; }
  std::vector<int> values() const;
};

SectorRange parse_sector_range(std::string_view text);
/// Comma-separated positive reals.
std::vector<double> parse_k_ladder(std::string_view text);

struct RunConfig {
  Command command = Command::spectrum;
  std::optional<std::filesystem::path> params_file;
  /// Flag values; applied over the file in parameter order.
  std::map<Param, std::string> overrides;
  std::optional<bool> include_divergence_term;
  SectorRange sectors;
  int levels = 4;
  double tol = 1e-8;
  std::filesystem::path out_dir = ".";
  Format format = Format::json;
  /// Trap stiffness ladder in units of m Omega^2.
  std::vector<double> k_ladder;
};

/// File first, then flags. brackets without a file starts from unbound symbols,
/// every other command from ModelParams::natural().
ModelParams resolve_params(const RunConfig& config);

struct Artifact {
  std::string name;
  std::string content;
};

struct RunResult {
  int exit_code = kExitOk;
  std::string message;
  std::vector<Artifact> artifacts;
  std::vector<std::filesystem::path> written;
};

/// Computes every artifact in memory; nothing is returned on failure.
RunResult render(const RunConfig& config);

/// render() followed by writing the artifacts into out_dir in order.
RunResult run(const RunConfig& config);

/// "fracam 0.1.0"
std::string tool_version();

/// Shortest round-trip decimal form.
std::string format_number(double x);

}  // namespace fracam::cli
