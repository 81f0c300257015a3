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
#include "qwalk5/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <map>
#include <ostream>
#include <string_view>
#include <utility>

#include <json.hpp>

#include "qwalk5/errors.hpp"

namespace qwalk5 {

namespace {

template <class Writer>
void write_file(const std::filesystem::path& path, Writer&& writer) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  writer(out);
  out.flush();
  if (!out) throw IoError("failed writing " + path.string());
}

double parse_real(std::string_view field) {
  const std::string text(field);
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (text.empty() || end != text.c_str() + text.size()) throw IoError("malformed number '" + text + "'");
  return v;
}

int parse_int(std::string_view field) {
  int v = 0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec != std::errc() || ptr != field.data() + field.size()) {
    throw IoError("malformed integer '" + std::string(field) + "'");
  }
  return v;
}

}  // namespace

std::string format_real(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::scientific, 16);
  std::string_view text(buf, static_cast<std::size_t>(res.ptr - buf));
  const auto e = text.find('e');
  if (e == std::string_view::npos) return std::string(text);  // inf / nan
  const int exponent = parse_int(text.substr(e + 1 + (text[e + 1] == '+' ? 1 : 0)));
  return std::string(text.substr(0, e + 1)) + std::to_string(exponent);
}

void write_grid_csv(const ProbabilityGrid& grid, std::ostream& out) {
  out << "n1,n2,p\n";
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const Site s = grid.site_of(i);
    out << s.n1 << ',' << s.n2 << ',' << format_real(grid.values()[i]) << '\n';
  }
}

void write_grid_csv(const ProbabilityGrid& grid, const std::filesystem::path& path) {
  write_file(path, [&](std::ostream& out) { write_grid_csv(grid, out); });
}

ProbabilityGrid read_grid_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != "n1,n2,p") throw IoError("grid CSV: missing 'n1,n2,p' header");
  std::map<std::pair<int, int>, double> rows;
  int reach = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto c1 = line.find(',');
    const auto c2 = line.find(',', c1 == std::string::npos ? c1 : c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos) throw IoError("grid CSV: malformed row '" + line + "'");
    const std::string_view view(line);
    const int n1 = parse_int(view.substr(0, c1));
    const int n2 = parse_int(view.substr(c1 + 1, c2 - c1 - 1));
    rows[{n1, n2}] = parse_real(view.substr(c2 + 1));
    reach = std::max({reach, std::abs(n1), std::abs(n2)});
  }
  ProbabilityGrid grid(reach);
  if (rows.size() != grid.size()) throw IoError("grid CSV: rows do not fill a centred square");
  for (const auto& [site, p] : rows) grid[{site.first, site.second}] = p;
  return grid;
}

ProbabilityGrid read_grid_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  return read_grid_csv(in);
}

void write_grid_json(const ProbabilityGrid& grid, std::ostream& out) {
  nlohmann::json j;
  j["radius"] = grid.radius();
  j["mass"] = grid.mass();
  auto& sites = j["sites"] = nlohmann::json::array();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const Site s = grid.site_of(i);
    sites.push_back({{"n1", s.n1}, {"n2", s.n2}, {"p", grid.values()[i]}});
  }
  out << j.dump(2) << '\n';
}

void write_bands_csv(std::span<const BandRow> surface, std::ostream& out) {
  out << "k1,k2,theta1,theta2,theta3,theta4,theta5\n";
  for (const auto& row : surface) {
    out << format_real(row.k.k1()) << ',' << format_real(row.k.k2());
    for (double theta : row.phases) out << ',' << format_real(theta);
    out << '\n';
  }
}

void write_bands_csv(std::span<const BandRow> surface, const std::filesystem::path& path) {
  write_file(path, [&](std::ostream& out) { write_bands_csv(surface, out); });
}

void write_bands_json(std::span<const BandRow> surface, std::ostream& out) {
  nlohmann::json j;
  auto& rows = j["rows"] = nlohmann::json::array();
  for (const auto& row : surface) {
    rows.push_back({{"k1", row.k.k1()}, {"k2", row.k.k2()}, {"phases", row.phases}});
  }
  out << j.dump(2) << '\n';
}

void write_heatmap_pgm(const ProbabilityGrid& grid, std::ostream& out) {
  const double peak = grid.max_value();
  if (!(peak > 0.0)) throw DegenerateError("heatmap: grid has no positive value");
  const int side = grid.side();
  const int r = grid.radius();
  out << "P5\n" << side << ' ' << side << "\n65535\n";
  for (int n2 = r; n2 >= -r; --n2) {
    for (int n1 = -r; n1 <= r; ++n1) {
      const auto level = static_cast<std::uint16_t>(std::lround(65535.0 * grid.at({n1, n2}) / peak));
      const char bytes[2] = {static_cast<char>(level >> 8), static_cast<char>(level & 0xFF)};
      out.write(bytes, 2);
    }
  }
}

void write_heatmap_pgm(const ProbabilityGrid& grid, const std::filesystem::path& path) {
  write_file(path, [&](std::ostream& out) { write_heatmap_pgm(grid, out); });
}

void write_decay_csv(const DecaySeries& series, std::ostream& out) {
  out << "t,magnitude\n";
  for (std::size_t i = 0; i < series.times.size(); ++i) {
    out << series.times[i] << ',' << format_real(series.magnitudes[i]) << '\n';
  }
}

void write_decay_json(const DecaySeries& series, std::ostream& out) {
  nlohmann::json j;
  j["site"] = {series.site.n1, series.site.n2};
  j["times"] = series.times;
  j["magnitudes"] = series.magnitudes;
  out << j.dump(2) << '\n';
}

void write_report_json(const LocalizationReport& report, std::ostream& out) {
  nlohmann::ordered_json j;
  j["limit_mass_at_origin"] = report.limit_mass_at_origin;
  j["time_avg_mass_at_origin"] = report.time_avg_mass_at_origin;
  j["relative_gap"] = report.relative_gap;
  j["verdict"] = report.verdict;
  j["grid_refinement_delta"] = report.grid_refinement_delta;
  out << j.dump(2) << '\n';
}

}  // namespace qwalk5
