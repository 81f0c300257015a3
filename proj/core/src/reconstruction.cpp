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
#include "qwalk5/reconstruction.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "parallel.hpp"
#include "qwalk5/errors.hpp"
#include "qwalk5/walk.hpp"

namespace qwalk5 {

namespace {

// Neumaier-compensated running sum of spinors, kept per real component so
// the rounding of a long quadrature sum does not grow with the node count.
class CompensatedSpinor {
 public:
  void add(const Spinor& x) {
    const auto* v = reinterpret_cast<const double*>(x.data());
    for (int i = 0; i < 2 * kNumChiralities; ++i) {
      const double s = sum_[i] + v[i];
      comp_[i] += std::abs(sum_[i]) >= std::abs(v[i]) ? (sum_[i] - s) + v[i] : (v[i] - s) + sum_[i];
      sum_[i] = s;
    }
  }

  Spinor value() const {
    Spinor out;
    for (int x = 0; x < kNumChiralities; ++x) out(x) = Complex(sum_[2 * x] + comp_[2 * x], sum_[2 * x + 1] + comp_[2 * x + 1]);
    return out;
  }

 private:
  std::array<double, 2 * kNumChiralities> sum_{};
  std::array<double, 2 * kNumChiralities> comp_{};
};

constexpr double kPi = std::numbers::pi;

// Partial sums are accumulated per block of k1 rows and reduced in block
// order; the block layout depends only on n.
constexpr int kReductionBlocks = 32;

// Below this the flat-band phase is rounding noise and the band is treated
// as exactly stationary.
constexpr double kFlatPhaseSnap = 1e-10;

template <class InitialAt>
std::vector<Spinor> evaluate_field(const BrillouinZoneSpectrum& spectrum, const BandSelection& bands,
                                   InitialAt&& initial_at, int t, std::span<const Site> sites) {
  if (t < 0) throw std::invalid_argument("reconstruction: negative time");
  const QuadratureGrid& grid = spectrum.grid();
  const int n = grid.n();

  const bool needs_flat_split = !bands.is_all();
  std::size_t excluded = 0;
  if (needs_flat_split) {
    excluded = spectrum.degenerate_count();
    if (static_cast<double>(excluded) >= kMaxDegenerateFraction * static_cast<double>(grid.size())) {
      std::ostringstream msg;
      msg << excluded << " of " << grid.size() << " quadrature nodes have a degenerate flat band";
      throw QuadratureError(msg.str());
    }
  }

  int reach = 0;
  for (const Site& s : sites) reach = std::max({reach, std::abs(s.n1), std::abs(s.n2)});
  const int width = 2 * reach + 1;

  // e^{i k2_j n2} for every column j and |n2| <= reach.
  std::vector<Complex> column_phase(static_cast<std::size_t>(n) * static_cast<std::size_t>(width));
  for (int j = 0; j < n; ++j) {
    for (int m = -reach; m <= reach; ++m) {
      column_phase[static_cast<std::size_t>(j) * static_cast<std::size_t>(width) + static_cast<std::size_t>(m + reach)] =
          std::polar(1.0, grid.axis(j) * m);
    }
  }

  const int blocks = std::min(n, kReductionBlocks);
  std::vector<std::vector<CompensatedSpinor>> partial(static_cast<std::size_t>(blocks),
                                                      std::vector<CompensatedSpinor>(sites.size()));

  detail::parallel_for(0, blocks, [&](int block) {
    const int row_begin = static_cast<int>(static_cast<long long>(n) * block / blocks);
    const int row_end = static_cast<int>(static_cast<long long>(n) * (block + 1) / blocks);
    auto& acc = partial[static_cast<std::size_t>(block)];
    std::vector<Complex> row_phase(static_cast<std::size_t>(width));
    for (int i = row_begin; i < row_end; ++i) {
      for (int m = -reach; m <= reach; ++m) {
        row_phase[static_cast<std::size_t>(m + reach)] = std::polar(1.0, grid.axis(i) * m);
      }
      for (int j = 0; j < n; ++j) {
        const std::size_t node = grid.index(i, j);
        if (needs_flat_split && !spectrum.flat_simple(node)) continue;
        const SpectralDecomposition& sd = spectrum.at(node);
        const auto& order = spectrum.order(node);
        const Spinor psi0 = initial_at(node);

        Spinor psi_k = Spinor::Zero();
        for (int band = 1; band <= kNumChiralities; ++band) {
          if (!bands.contains(band)) continue;
          const int col = order[static_cast<std::size_t>(band - 1)];
          const double theta = sd.phases[static_cast<std::size_t>(col)];
          const Complex evolution =
              (band == 1 && std::abs(theta) <= kFlatPhaseSnap) ? Complex(1.0, 0.0) : std::polar(1.0, theta * t);
          const auto v = sd.vectors.col(col);
          psi_k += (evolution * v.dot(psi0)) * v;  // dot conjugates v
        }

        const Complex* col_phase = &column_phase[static_cast<std::size_t>(j) * static_cast<std::size_t>(width)];
        for (std::size_t s = 0; s < sites.size(); ++s) {
          const Complex phase = row_phase[static_cast<std::size_t>(sites[s].n1 + reach)] *
                                col_phase[static_cast<std::size_t>(sites[s].n2 + reach)];
          acc[s].add(phase * psi_k);
        }
      }
    }
  });

  const double used = static_cast<double>(grid.size() - excluded);
  const double scale = grid.weight() / (4.0 * kPi * kPi) * static_cast<double>(grid.size()) / used;
  std::vector<Spinor> out(sites.size());
  for (std::size_t s = 0; s < sites.size(); ++s) {
    CompensatedSpinor total;
    for (const auto& acc : partial) total.add(acc[s].value());
    out[s] = total.value() * scale;
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// QuadratureGrid

QuadratureGrid::QuadratureGrid(int n) : n_(n) {
  if (n < 2 || n % 2 != 0) {
    throw std::invalid_argument("QuadratureGrid: n must be a positive even number");
  }
}

double QuadratureGrid::weight() const {
  const double h = 2.0 * kPi / n_;
  return h * h;
}

double QuadratureGrid::axis(int i) const { return -kPi + (i + 0.5) * (2.0 * kPi / n_); }

// ---------------------------------------------------------------------------
// BandSelection

BandSelection::BandSelection(std::initializer_list<int> bands)
    : BandSelection(std::span<const int>(bands.begin(), bands.size())) {}

BandSelection::BandSelection(std::span<const int> bands) {
  for (int b : bands) {
    if (b < 1 || b > kNumChiralities) throw std::invalid_argument("BandSelection: band outside 1..5");
    mask_ |= 1u << (b - 1);
  }
  if (mask_ == 0) throw std::invalid_argument("BandSelection: empty selection");
}

// ---------------------------------------------------------------------------
// BrillouinZoneSpectrum

BrillouinZoneSpectrum::BrillouinZoneSpectrum(const QuadratureGrid& grid)
    : BrillouinZoneSpectrum(grid, grover_coin()) {}

BrillouinZoneSpectrum::BrillouinZoneSpectrum(const QuadratureGrid& grid, const CoinOperator& coin)
    : grid_(grid), nodes_(grid.size()), orders_(grid.size()), flat_simple_(grid.size(), 0) {
  const int n = grid.n();
  detail::parallel_for(0, n, [&](int i) {
    for (int j = 0; j < n; ++j) {
      const std::size_t node = grid_.index(i, j);
      nodes_[node] = eigendecompose(fourier_step_operator(grid_.node(i, j), coin));
      orders_[node] = band_order(nodes_[node]);
      flat_simple_[node] = flat_band_is_simple(nodes_[node]) ? 1 : 0;
    }
  });
}

std::size_t BrillouinZoneSpectrum::degenerate_count() const {
  return static_cast<std::size_t>(std::count(flat_simple_.begin(), flat_simple_.end(), 0));
}

// ---------------------------------------------------------------------------
// Reconstruction

std::vector<Spinor> component_field(const BrillouinZoneSpectrum& spectrum, const BandSelection& bands,
                                    std::span<const Spinor> initial_momentum, int t, std::span<const Site> sites) {
  if (initial_momentum.size() != spectrum.size()) {
    throw std::invalid_argument("component_field: one initial spinor per quadrature node is required");
  }
  return evaluate_field(
      spectrum, bands, [&](std::size_t node) -> const Spinor& { return initial_momentum[node]; }, t, sites);
}

std::vector<Spinor> component_field(const BrillouinZoneSpectrum& spectrum, const BandSelection& bands,
                                    const Spinor& initial, int t, std::span<const Site> sites) {
  return evaluate_field(
      spectrum, bands, [&](std::size_t) -> const Spinor& { return initial; }, t, sites);
}

Spinor component_wavefunction(const BandSelection& bands, const Spinor& initial, Site site, int t,
                              const BrillouinZoneSpectrum& spectrum) {
  const Site one[] = {site};
  return component_field(spectrum, bands, initial, t, one).front();
}

Spinor component_wavefunction(const BandSelection& bands, const Spinor& initial, Site site, int t,
                              const QuadratureGrid& grid) {
  return component_wavefunction(bands, initial, site, t, BrillouinZoneSpectrum(grid));
}

Spinor spectral_wavefunction(const Spinor& initial, Site site, int t, const BrillouinZoneSpectrum& spectrum) {
  return component_wavefunction(BandSelection::all(), initial, site, t, spectrum);
}

Spinor spectral_wavefunction(const Spinor& initial, Site site, int t, const QuadratureGrid& grid) {
  return spectral_wavefunction(initial, site, t, BrillouinZoneSpectrum(grid));
}

std::vector<Site> diamond_sites(int radius) {
  std::vector<Site> sites;
  for (int n1 = -radius; n1 <= radius; ++n1) {
    const int span = radius - std::abs(n1);
    for (int n2 = -span; n2 <= span; ++n2) sites.push_back({n1, n2});
  }
  return sites;
}

std::vector<Site> square_sites(int radius) {
  std::vector<Site> sites;
  for (int n1 = -radius; n1 <= radius; ++n1) {
    for (int n2 = -radius; n2 <= radius; ++n2) sites.push_back({n1, n2});
  }
  return sites;
}

double reconstruction_error(const Spinor& initial, int t, int radius, const BrillouinZoneSpectrum& spectrum) {
  if (radius < t) throw std::invalid_argument("reconstruction_error: radius must be at least t");
  const LatticeState direct = evolve(initial_state(initial), t);
  const auto sites = diamond_sites(radius);
  const auto spectral = component_field(spectrum, BandSelection::all(), initial, t, sites);
  double worst = 0.0;
  for (std::size_t s = 0; s < sites.size(); ++s) {
    worst = std::max(worst, (spectral[s] - direct.at(sites[s])).cwiseAbs().maxCoeff());
  }
  return worst;
}

double reconstruction_error(const Spinor& initial, int t, int radius, const QuadratureGrid& grid) {
  return reconstruction_error(initial, t, radius, BrillouinZoneSpectrum(grid));
}

}  // namespace qwalk5
