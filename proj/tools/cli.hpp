// Copyright 2026 The qwalk5 Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#ifndef QWALK5_TOOLS_CLI_HPP_
#define QWALK5_TOOLS_CLI_HPP_

#include <cstdint>
#include <exception>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qwalk5/types.hpp"

namespace qwalk5::cli {

enum class Subcommand { kEvolve, kSpectrum, kLimit, kTimeavg, kDecay, kVerdict };
enum class OutputFormat { kCsv, kJson, kPgm };

struct RunConfig {
  Subcommand subcommand = Subcommand::kEvolve;
  /// Step count for evolve; averaging horizon T for timeavg and verdict.
  int steps = 0;
  int kgrid = 256;
  int radius = 0;
  Spinor init = Spinor::Unit(0);
  Site site{};
  std::vector<int> times;
  /// Standard output when empty.
  std::optional<std::filesystem::path> out;
  OutputFormat format = OutputFormat::kCsv;
  std::uint64_t seed = 42;
};

/// Thrown by parse_args for --help; what() is the help text.
class HelpRequested : public std::exception {
 public:
  explicit HelpRequested(std::string text) : text_(std::move(text)) {}
  const char* what() const noexcept override { return text_.c_str(); }

 private:
  std::string text_;
};

/// Parses arguments (without the program name). Throws UsageError with a
/// one-line reason for anything malformed or missing.
RunConfig parse_args(std::span<const std::string> args);

/// Executes the configured subcommand, writing to config.out or to `out`.
void run(const RunConfig& config, std::ostream& out);

/// Full command-line entry point: 0 on success, 2 on usage errors, 1 on
/// computational errors. Diagnostics go to `err` only.
int main_entry(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace qwalk5::cli

#endif  // QWALK5_TOOLS_CLI_HPP_
