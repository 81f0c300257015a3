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
#include "qwalk5/localization.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "qwalk5/walk.hpp"

namespace qwalk5 {

ProbabilityGrid limiting_distribution(const Spinor& initial, const BrillouinZoneSpectrum& spectrum, int radius) {
  if (radius < 0) throw std::invalid_argument("limiting_distribution: negative radius");
  const auto sites = square_sites(radius);
  const auto field = component_field(spectrum, BandSelection::flat(), initial, 0, sites);
  ProbabilityGrid grid(radius);
  for (std::size_t s = 0; s < sites.size(); ++s) grid[sites[s]] = field[s].squaredNorm();
  return grid;
}

ProbabilityGrid limiting_distribution(const Spinor& initial, const QuadratureGrid& grid, int radius) {
  return limiting_distribution(initial, BrillouinZoneSpectrum(grid), radius);
}

std::vector<ProbabilityGrid> time_averaged_probabilities(const Spinor& initial, std::span<const int> horizons,
                                                         int radius) {
  if (radius < 0) throw std::invalid_argument("time_averaged_probabilities: negative radius");
  if (horizons.empty()) return {};
  for (std::size_t i = 0; i < horizons.size(); ++i) {
    if (horizons[i] < 1 || (i > 0 && horizons[i] <= horizons[i - 1])) {
      throw std::invalid_argument("time_averaged_probabilities: horizons must be ascending and at least 1");
    }
  }

  const int last = horizons.back();
  const int reach = last - 1;
  ProbabilityGrid sum(reach);
  std::vector<ProbabilityGrid> out;
  out.reserve(horizons.size());

  Propagator prop(initial_state(initial), grover_coin(), reach);
  std::size_t next = 0;
  for (int t = 0; t < last; ++t) {
    if (t > 0) prop.step();
    const LatticeState& state = prop.state();
    for (int n1 = -t; n1 <= t; ++n1) {
      const int span = t - std::abs(n1);
      for (int n2 = -span; n2 <= span; ++n2) sum[{n1, n2}] += state.at({n1, n2}).squaredNorm();
    }
    if (t + 1 == horizons[next]) {
      ProbabilityGrid avg = sum.cropped(radius);
      const double inv = 1.0 / static_cast<double>(t + 1);
      for (int n1 = -radius; n1 <= radius; ++n1) {
        for (int n2 = -radius; n2 <= radius; ++n2) avg[{n1, n2}] *= inv;
      }
      out.push_back(std::move(avg));
      ++next;
    }
  }
  return out;
}

ProbabilityGrid time_averaged_probability(const Spinor& initial, int horizon, int radius) {
  if (horizon < 1) throw std::invalid_argument("time_averaged_probability: horizon must be at least 1");
  const int horizons[] = {horizon};
  return std::move(time_averaged_probabilities(initial, horizons, radius).front());
}

namespace {

void check_times(std::span<const int> times) {
  if (times.empty()) throw std::invalid_argument("decay_probe: no times given");
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (times[i] < 0 || (i > 0 && times[i] <= times[i - 1])) {
      throw std::invalid_argument("decay_probe: times must be non-negative and strictly ascending");
    }
  }
}

template <class Initial>
DecaySeries probe(const Initial& initial, Site site, std::span<const int> times,
                  const BrillouinZoneSpectrum& spectrum) {
  check_times(times);
  DecaySeries series{site, {times.begin(), times.end()}, {}};
  series.magnitudes.reserve(times.size());
  const Site one[] = {site};
  for (int t : times) {
    const auto psi = component_field(spectrum, BandSelection::dispersive(), initial, t, one).front();
    series.magnitudes.push_back(psi.norm());
  }
  return series;
}

}  // namespace

DecaySeries decay_probe(const Spinor& initial, Site site, std::span<const int> times,
                        const BrillouinZoneSpectrum& spectrum) {
  return probe(initial, site, times, spectrum);
}

DecaySeries decay_probe(const Spinor& initial, Site site, std::span<const int> times, const QuadratureGrid& grid) {
  return decay_probe(initial, site, times, BrillouinZoneSpectrum(grid));
}

DecaySeries decay_probe(std::span<const Spinor> initial_momentum, Site site, std::span<const int> times,
                        const BrillouinZoneSpectrum& spectrum) {
  return probe(initial_momentum, site, times, spectrum);
}

LocalizationReport localization_decision(const Spinor& initial, const QuadratureGrid& grid, int horizon) {
  const int half = grid.n() / 2;
  const QuadratureGrid coarse(std::max(2, half - half % 2));

  const double limit = limiting_distribution(initial, grid, 0).at({0, 0});
  const double limit_coarse = limiting_distribution(initial, coarse, 0).at({0, 0});
  const double average = time_averaged_probability(initial, horizon, 0).at({0, 0});

  LocalizationReport report;
  report.limit_mass_at_origin = limit;
  report.time_avg_mass_at_origin = average;
  report.grid_refinement_delta = std::abs(limit - limit_coarse);
  report.relative_gap = std::abs(limit - average) / std::max(limit, std::numeric_limits<double>::min());
  report.verdict = limit > kVerdictErrorMultiple * report.grid_refinement_delta &&
                   report.relative_gap < kVerdictMaxRelativeGap;
  return report;
}

std::vector<CoinOperator> flat_band_kernel(const BrillouinZoneSpectrum& spectrum, int radius) {
  if (radius < 0) throw std::invalid_argument("flat_band_kernel: negative radius");
  const auto sites = square_sites(radius);
  std::vector<CoinOperator> kernel(sites.size(), CoinOperator::Zero());
  for (int c = 0; c < kNumChiralities; ++c) {
    const Spinor basis = Spinor::Unit(c);
    const auto column = component_field(spectrum, BandSelection::flat(), basis, 0, sites);
    for (std::size_t s = 0; s < sites.size(); ++s) kernel[s].col(c) = column[s];
  }
  return kernel;
}

CoinOperator limit_mass_form(const BrillouinZoneSpectrum& spectrum, int radius) {
  CoinOperator form = CoinOperator::Zero();
  for (const auto& a : flat_band_kernel(spectrum, radius)) form += a.adjoint() * a;
  return form;
}

LimitMassSearchResult min_limit_mass_search(int samples, const BrillouinZoneSpectrum& spectrum,
                                            std::uint64_t seed) {
  if (samples < 1) throw std::invalid_argument("min_limit_mass_search: samples must be at least 1");
  const CoinOperator form = limit_mass_form(spectrum, kSearchRadius);
  const auto mass_of = [&](const Spinor& psi) { return (psi.adjoint() * form * psi).value().real(); };

  std::vector<Spinor> candidates;
  for (int c = 0; c < kNumChiralities; ++c) candidates.push_back(Spinor::Unit(c));
  candidates.push_back(Spinor::Constant(Complex(1.0 / std::sqrt(5.0), 0.0)));

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (int i = 0; i < samples; ++i) {
    Spinor psi;
    for (int c = 0; c < kNumChiralities; ++c) {
      const double re = normal(rng);
      const double im = normal(rng);
      psi(c) = Complex(re, im);
    }
    candidates.push_back(psi / psi.norm());
  }

  LimitMassSearchResult best{candidates.front(), mass_of(candidates.front())};
  for (const auto& psi : candidates) {
    const double m = mass_of(psi);
    if (m < best.mass) best = {psi, m};
  }
  return best;
}

LimitMassSearchResult min_limit_mass_search(int samples, const QuadratureGrid& grid, std::uint64_t seed) {
  return min_limit_mass_search(samples, BrillouinZoneSpectrum(grid), seed);
}

}  // namespace qwalk5
