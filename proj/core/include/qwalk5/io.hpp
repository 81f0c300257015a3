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
#ifndef QWALK5_IO_HPP_
#define QWALK5_IO_HPP_

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>

#include "qwalk5/grid.hpp"
#include "qwalk5/localization.hpp"
#include "qwalk5/spectral.hpp"

namespace qwalk5 {

/// Fixed scientific notation with 17 significant digits and a bare
/// exponent: 1 -> "1.0000000000000000e0", 0.0016 -> "1.6000000000000000e-3".
/// Parsing the result with strtod returns the same double.
std::string format_real(double value);

/// CSV with header "n1,n2,p", one row per stored site in ascending
/// (n1, n2) order, zeros included. LF line endings.
void write_grid_csv(const ProbabilityGrid& grid, std::ostream& out);
void write_grid_csv(const ProbabilityGrid& grid, const std::filesystem::path& path);

/// Inverse of write_grid_csv. Throws IoError on malformed input.
ProbabilityGrid read_grid_csv(std::istream& in);
ProbabilityGrid read_grid_csv(const std::filesystem::path& path);

/// {"radius": R, "mass": m, "sites": [{"n1": .., "n2": .., "p": ..}, ...]}
void write_grid_json(const ProbabilityGrid& grid, std::ostream& out);

/// Header "k1,k2,theta1,...,theta5", phases ascending within each row.
void write_bands_csv(std::span<const BandRow> surface, std::ostream& out);
void write_bands_csv(std::span<const BandRow> surface, const std::filesystem::path& path);

/// {"rows": [{"k1": .., "k2": .., "phases": [..5..]}, ...]}
void write_bands_json(std::span<const BandRow> surface, std::ostream& out);

/// Binary PGM (P5), maxval 65535, big-endian samples. Pixel value is
/// round(65535 p / max p); the top image row is n2 = +radius and columns run
/// n1 = -radius .. +radius. Throws DegenerateError when every value is 0.
void write_heatmap_pgm(const ProbabilityGrid& grid, std::ostream& out);
void write_heatmap_pgm(const ProbabilityGrid& grid, const std::filesystem::path& path);

/// Header "t,magnitude".
void write_decay_csv(const DecaySeries& series, std::ostream& out);

/// {"site": [n1, n2], "times": [...], "magnitudes": [...]}
void write_decay_json(const DecaySeries& series, std::ostream& out);

/// Flat object keyed by the LocalizationReport field names.
void write_report_json(const LocalizationReport& report, std::ostream& out);

}  // namespace qwalk5

#endif  // QWALK5_IO_HPP_
