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
#ifndef QWALK5_LOCALIZATION_HPP_
#define QWALK5_LOCALIZATION_HPP_

#include <cstdint>
#include <span>
#include <vector>

#include "qwalk5/grid.hpp"
#include "qwalk5/reconstruction.hpp"
#include "qwalk5/types.hpp"

namespace qwalk5 {

/// P_inf(n) = sum_l |Psi_1(n; l)|^2, the site probabilities carried by the
/// flat band alone. Time-independent, so this is the t -> infinity limit of
/// P(n, t) once the dispersive bands have decayed.
ProbabilityGrid limiting_distribution(const Spinor& initial, const BrillouinZoneSpectrum& spectrum, int radius);
ProbabilityGrid limiting_distribution(const Spinor& initial, const QuadratureGrid& grid, int radius);

/// (1/T) sum_{t < T} P(n, t) from direct evolution, cropped to radius.
ProbabilityGrid time_averaged_probability(const Spinor& initial, int horizon, int radius);

/// Several horizons from a single evolution. horizons must be ascending and
/// at least 1; entry i averages over [0, horizons[i]).
std::vector<ProbabilityGrid> time_averaged_probabilities(const Spinor& initial, std::span<const int> horizons,
                                                         int radius);

/// Size of the dispersive (bands 2..5) part of the wave function at one site.
struct DecaySeries {
  Site site;
  std::vector<int> times;
  /// Euclidean norm of the band-restricted spinor at each time.
  std::vector<double> magnitudes;
};

DecaySeries decay_probe(const Spinor& initial, Site site, std::span<const int> times,
                        const BrillouinZoneSpectrum& spectrum);
DecaySeries decay_probe(const Spinor& initial, Site site, std::span<const int> times, const QuadratureGrid& grid);

/// Variant for a momentum-dependent initial condition Psi~(k, 0), one spinor
/// per quadrature node.
DecaySeries decay_probe(std::span<const Spinor> initial_momentum, Site site, std::span<const int> times,
                        const BrillouinZoneSpectrum& spectrum);

struct LocalizationReport {
  double limit_mass_at_origin = 0.0;
  double time_avg_mass_at_origin = 0.0;
  double relative_gap = 0.0;
  bool verdict = false;
  double grid_refinement_delta = 0.0;
};

/// Localisation is declared when P_inf(0,0) exceeds this multiple of the
/// grid-refinement delta ...
inline constexpr double kVerdictErrorMultiple = 10.0;
/// ... and the time average at the origin is within this relative gap.
inline constexpr double kVerdictMaxRelativeGap = 0.1;

/// Compares P_inf(0,0) on grid and on the grid with half as many points per
/// axis (rounded down to even) against the time average over [0, horizon).
LocalizationReport localization_decision(const Spinor& initial, const QuadratureGrid& grid, int horizon);

/// Per-site 5x5 matrices A(n) with Psi_1(n) = A(n) Psi(0,0,0), for
/// square_sites(radius).
std::vector<CoinOperator> flat_band_kernel(const BrillouinZoneSpectrum& spectrum, int radius);

/// G = sum_n A(n)^dagger A(n), so the flat-band mass within radius of a
/// walker started from psi is psi^dagger G psi.
CoinOperator limit_mass_form(const BrillouinZoneSpectrum& spectrum, int radius);

struct LimitMassSearchResult {
  Spinor spinor;
  double mass = 0.0;
};

inline constexpr std::uint64_t kDefaultSeed = 42;
inline constexpr int kSearchRadius = 10;

/// Minimises sum_{|n1|,|n2| <= 10} P_inf(n) over the five basis states, the
/// uniform state and `samples` spinors drawn uniformly from the unit sphere
/// in C^5.
LimitMassSearchResult min_limit_mass_search(int samples, const BrillouinZoneSpectrum& spectrum,
                                            std::uint64_t seed = kDefaultSeed);
LimitMassSearchResult min_limit_mass_search(int samples, const QuadratureGrid& grid,
                                            std::uint64_t seed = kDefaultSeed);

}  // namespace qwalk5

#endif  // QWALK5_LOCALIZATION_HPP_
