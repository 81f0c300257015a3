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

#ifndef QWALK5_TYPES_HPP_
#define QWALK5_TYPES_HPP_

#include <array>
#include <complex>
#include <string_view>

#include <Eigen/Core>

namespace qwalk5 {

using Complex = std::complex<double>;

inline constexpr int kNumChiralities = 5;

/// Internal coin state. Storage index is the enumerator value (0..4); the
/// one-based ordinal (1..5) is what users see in tables and reports.
enum class Chirality : int { L = 0, R = 1, O = 2, D = 3, U = 4 };

inline constexpr std::array<Chirality, kNumChiralities> kAllChiralities = {
    Chirality::L, Chirality::R, Chirality::O, Chirality::D, Chirality::U};

constexpr int index_of(Chirality c) { return static_cast<int>(c); }
constexpr int ordinal_of(Chirality c) { return static_cast<int>(c) + 1; }

constexpr std::string_view label_of(Chirality c) {
  constexpr std::array<std::string_view, kNumChiralities> kLabels = {"L", "R", "O", "D", "U"};
  return kLabels[static_cast<int>(c)];
}

/// Five amplitudes in (L, R, O, D, U) order.
using Spinor = Eigen::Matrix<Complex, kNumChiralities, 1>;

/// Dense 5x5 complex matrix acting on chirality.
using CoinOperator = Eigen::Matrix<Complex, kNumChiralities, kNumChiralities>;

/// A lattice site (n1, n2).
struct Site {
  int n1 = 0;
  int n2 = 0;

  friend constexpr bool operator==(const Site&, const Site&) = default;
};

}  // namespace qwalk5

#endif  // QWALK5_TYPES_HPP_
