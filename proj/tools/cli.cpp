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
#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>
#include <string_view>

#include <CLI11.hpp>

#include "qwalk5/errors.hpp"
#include "qwalk5/io.hpp"
#include "qwalk5/localization.hpp"
#include "qwalk5/reconstruction.hpp"
#include "qwalk5/spectral.hpp"
#include "qwalk5/walk.hpp"

namespace qwalk5::cli {

namespace {

constexpr int kDefaultLimitRadius = 10;

std::vector<std::string_view> split_commas(std::string_view text) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto comma = text.find(',', start);
    parts.push_back(text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return parts;
}

long long to_integer(std::string_view text, std::string_view flag) {
  long long v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
    throw UsageError(std::string(flag) + ": expected an integer, got '" + std::string(text) + "'");
  }
  return v;
}

int to_int(std::string_view text, std::string_view flag) {
  const long long v = to_integer(text, flag);
  if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max()) {
    throw UsageError(std::string(flag) + ": value out of range");
  }
  return static_cast<int>(v);
}

double to_real(std::string_view text, std::string_view flag) {
  const std::string s(text);
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size() || !std::isfinite(v)) {
    throw UsageError(std::string(flag) + ": expected a real number, got '" + s + "'");
  }
  return v;
}

Spinor parse_init(const std::string& text) {
  const auto parts = split_commas(text);
  if (parts.size() != 2 * kNumChiralities) {
    throw UsageError("--init: expected 10 comma-separated reals re1,im1,...,re5,im5");
  }
  Spinor s;
  for (int c = 0; c < kNumChiralities; ++c) {
    s(c) = Complex(to_real(parts[static_cast<std::size_t>(2 * c)], "--init"),
                   to_real(parts[static_cast<std::size_t>(2 * c + 1)], "--init"));
  }
  const double norm2 = s.squaredNorm();
  if (!(std::abs(norm2 - 1.0) <= kInitialNormTolerance)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "--init: squared norm is " << norm2 << ", expected 1";
    throw UsageError(msg.str());
  }
  return s;
}

Site parse_site(const std::string& text) {
  const auto parts = split_commas(text);
  if (parts.size() != 2) throw UsageError("--site: expected n1,n2");
  return {to_int(parts[0], "--site"), to_int(parts[1], "--site")};
}

std::vector<int> parse_times(const std::string& text) {
  std::vector<int> times;
  for (auto part : split_commas(text)) times.push_back(to_int(part, "--times"));
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (times[i] < 0 || (i > 0 && times[i] <= times[i - 1])) {
      throw UsageError("--times: expected strictly ascending non-negative integers");
    }
  }
  return times;
}

OutputFormat parse_format(const std::string& text) {
  if (text == "csv") return OutputFormat::kCsv;
  if (text == "json") return OutputFormat::kJson;
  if (text == "pgm") return OutputFormat::kPgm;
  throw UsageError("--format: expected csv, json or pgm, got '" + text + "'");
}

std::string one_line(std::string text) {
  std::replace(text.begin(), text.end(), '\n', ' ');
  while (!text.empty() && text.back() == ' ') text.pop_back();
  return text;
}

// Raw flag values; which ones a subcommand accepts is decided at
// registration time.
struct RawFlags {
  std::string steps, kgrid, radius, init, site, times, out, format, seed;
};

enum Flag : unsigned {
  kSteps = 1u << 0,
  kKgrid = 1u << 1,
  kRadius = 1u << 2,
  kInit = 1u << 3,
  kSite = 1u << 4,
  kTimes = 1u << 5,
};

struct SubcommandSpec {
  const char* name;
  const char* description;
  Subcommand id;
  unsigned accepted;
  unsigned required;
};

constexpr SubcommandSpec kSubcommands[] = {
    {"evolve", "Direct lattice evolution; writes the probability grid", Subcommand::kEvolve,
     kSteps | kRadius | kInit, kSteps | kInit},
    {"spectrum", "Eigenphase table over a uniform k grid", Subcommand::kSpectrum, kKgrid, 0},
    {"limit", "Flat-band limiting distribution", Subcommand::kLimit, kKgrid | kRadius | kInit, kInit},
    {"timeavg", "Time-averaged probability over [0, T)", Subcommand::kTimeavg, kSteps | kRadius | kInit,
     kSteps | kInit},
    {"decay", "Dispersive-band magnitude at one site over time", Subcommand::kDecay,
     kKgrid | kSite | kInit | kTimes, kInit | kTimes},
    {"verdict", "Localisation report as JSON", Subcommand::kVerdict, kKgrid | kSteps | kInit, kInit | kSteps},
};

}  // namespace

RunConfig parse_args(std::span<const std::string> args) {
  CLI::App app{"Five-state Grover quantum walk on the square lattice", "qwalk5"};
  app.require_subcommand(1, 1);
  app.set_help_flag("-h,--help", "Print this help message and exit");

  RawFlags raw;
  std::map<const CLI::App*, const SubcommandSpec*> specs;
  for (const auto& spec : kSubcommands) {
    CLI::App* sub = app.add_subcommand(spec.name, spec.description);
    specs[sub] = &spec;
    if (spec.accepted & kSteps) sub->add_option("--steps,--horizon", raw.steps, "Step count, or averaging horizon T");
    if (spec.accepted & kKgrid) sub->add_option("--kgrid", raw.kgrid, "Momentum grid points per axis (default 256)");
    if (spec.accepted & kRadius) sub->add_option("--radius", raw.radius, "Half-width of the output square");
    if (spec.accepted & kInit) sub->add_option("--init", raw.init, "Initial coin state re1,im1,...,re5,im5");
    if (spec.accepted & kSite) sub->add_option("--site", raw.site, "Probe site n1,n2 (default 0,0)");
    if (spec.accepted & kTimes) sub->add_option("--times", raw.times, "Ascending probe times t1,t2,...");
    sub->add_option("--out", raw.out, "Output path (default: standard output)");
    sub->add_option("--format", raw.format, "csv, json or pgm (default csv)");
    sub->add_option("--seed", raw.seed, "Random seed (default 42)");
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    throw HelpRequested(app.help());
  } catch (const CLI::ParseError& e) {
    throw UsageError(one_line(e.what()));
  }

  const auto chosen = app.get_subcommands();
  const SubcommandSpec& spec = *specs.at(chosen.front());
  const std::pair<unsigned, const char*> required_flags[] = {
      {kSteps, "--steps"}, {kInit, "--init"}, {kTimes, "--times"}};
  const std::map<unsigned, const std::string*> values = {
      {kSteps, &raw.steps}, {kInit, &raw.init}, {kTimes, &raw.times}};
  for (const auto& [flag, name] : required_flags) {
    if ((spec.required & flag) && values.at(flag)->empty()) {
      throw UsageError(std::string(spec.name) + ": missing required flag " + name);
    }
  }

  RunConfig config;
  config.subcommand = spec.id;
  if (!raw.steps.empty()) config.steps = to_int(raw.steps, "--steps");
  if (config.steps < 0) throw UsageError("--steps: must be non-negative");
  if ((spec.id == Subcommand::kTimeavg || spec.id == Subcommand::kVerdict) && config.steps < 1) {
    throw UsageError("--steps: the averaging horizon must be at least 1");
  }
  if (!raw.kgrid.empty()) config.kgrid = to_int(raw.kgrid, "--kgrid");
  if (config.kgrid < 2) throw UsageError("--kgrid: must be at least 2");
  if (spec.id != Subcommand::kSpectrum && config.kgrid % 2 != 0) {
    throw UsageError("--kgrid: quadrature grids must have an even number of points");
  }
  config.radius = spec.id == Subcommand::kLimit ? kDefaultLimitRadius : config.steps;
  if (!raw.radius.empty()) config.radius = to_int(raw.radius, "--radius");
  if (config.radius < 0) throw UsageError("--radius: must be non-negative");
  if (!raw.init.empty()) config.init = parse_init(raw.init);
  if (!raw.site.empty()) config.site = parse_site(raw.site);
  if (!raw.times.empty()) config.times = parse_times(raw.times);
  if (!raw.out.empty()) config.out = raw.out;
  if (!raw.seed.empty()) {
    const long long seed = to_integer(raw.seed, "--seed");
    if (seed < 0) throw UsageError("--seed: must be non-negative");
    config.seed = static_cast<std::uint64_t>(seed);
  }

  if (spec.id == Subcommand::kVerdict) {
    config.format = OutputFormat::kJson;
    if (!raw.format.empty() && parse_format(raw.format) != OutputFormat::kJson) {
      throw UsageError("verdict: output is always json");
    }
  } else if (!raw.format.empty()) {
    config.format = parse_format(raw.format);
  }
  const bool grid_output = spec.id == Subcommand::kEvolve || spec.id == Subcommand::kLimit ||
                           spec.id == Subcommand::kTimeavg;
  if (config.format == OutputFormat::kPgm && !grid_output) {
    throw UsageError(std::string(spec.name) + ": pgm output is only available for probability grids");
  }
  return config;
}

namespace {

void emit_grid(const ProbabilityGrid& grid, OutputFormat format, std::ostream& out) {
  switch (format) {
    case OutputFormat::kCsv:
      write_grid_csv(grid, out);
      break;
    case OutputFormat::kJson:
      write_grid_json(grid, out);
      break;
    case OutputFormat::kPgm:
      write_heatmap_pgm(grid, out);
      break;
  }
}

void execute(const RunConfig& config, std::ostream& out) {
  switch (config.subcommand) {
    case Subcommand::kEvolve: {
      const auto state = evolve(initial_state(config.init, config.radius), config.steps);
      emit_grid(probability_grid(state).cropped(config.radius), config.format, out);
      break;
    }
    case Subcommand::kSpectrum: {
      const auto surface = band_surface(config.kgrid);
      if (config.format == OutputFormat::kJson) {
        write_bands_json(surface, out);
      } else {
        write_bands_csv(surface, out);
      }
      break;
    }
    case Subcommand::kLimit:
      emit_grid(limiting_distribution(config.init, QuadratureGrid(config.kgrid), config.radius), config.format,
                out);
      break;
    case Subcommand::kTimeavg:
      emit_grid(time_averaged_probability(config.init, config.steps, config.radius), config.format, out);
      break;
    case Subcommand::kDecay: {
      const auto series = decay_probe(config.init, config.site, config.times, QuadratureGrid(config.kgrid));
      if (config.format == OutputFormat::kJson) {
        write_decay_json(series, out);
      } else {
        write_decay_csv(series, out);
      }
      break;
    }
    case Subcommand::kVerdict:
      write_report_json(localization_decision(config.init, QuadratureGrid(config.kgrid), config.steps), out);
      break;
  }
}

}  // namespace

void run(const RunConfig& config, std::ostream& out) {
  if (!config.out) {
    execute(config, out);
    out.flush();
    return;
  }
  // Render fully before touching the file so a failed run leaves no partial output.
  std::ostringstream buffer(std::ios::out | std::ios::binary);
  execute(config, buffer);
  std::ofstream file(*config.out, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError("cannot open " + config.out->string() + " for writing");
  const std::string bytes = buffer.str();
  file.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!file) throw IoError("failed writing " + config.out->string());
}

int main_entry(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  RunConfig config;
  try {
    config = parse_args(args);
  } catch (const HelpRequested& help) {
    out << help.what();
    return 0;
  } catch (const UsageError& e) {
    err << "qwalk5: usage error: " << e.what() << '\n';
    return 2;
  }
  try {
    run(config, out);
  } catch (const std::exception& e) {
    err << "qwalk5: error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace qwalk5::cli
