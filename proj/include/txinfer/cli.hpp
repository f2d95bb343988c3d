// txinfer/cli.hpp - batch driver behind the tx-infer executable
#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace txinfer {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUntypable = 1;
inline constexpr int kExitFrontEnd = 2;

/// Emit targets; the first four are written to `<name>.<suffix>`.
inline const std::vector<std::string> kEmitTargets = {
    "typed-source", "signatures", "descriptors", "funifaces", "constraints", "unifiers", "generics"};

struct RunConfig {
  std::vector<std::string> inputs;
  std::set<std::string> emit;
  std::optional<std::string> table_path;  // else TXINFER_TABLE, else bundled
  std::optional<std::string> out_dir;     // file targets go to stdout when unset
  std::size_t max_solutions = SIZE_MAX;
};

/// File name suffix of a file target, empty for stdout-only targets.
std::string output_suffix(const std::string& target);

/// Runs the pipeline on every input; returns the highest exit status.
int run_pipeline(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses the command line, then runs. Usage errors exit with status 2.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace txinfer
