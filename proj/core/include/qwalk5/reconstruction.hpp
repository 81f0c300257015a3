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
#ifndef QWALK5_RECONSTRUCTION_HPP_
#define QWALK5_RECONSTRUCTION_HPP_

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

#include "qwalk5/spectral.hpp"
#include "qwalk5/types.hpp"

namespace qwalk5 {

/// Midpoint rule on an n x n grid over (-pi, pi]^2.
///
/// Node (i, j) sits at k = (-pi + (i + 1/2) h, -pi + (j + 1/2) h) with
/// h = 2 pi / n and carries weight h^2. n must be even and positive, which
/// keeps every node off the symmetry points k1, k2 in {0, pi}.
class QuadratureGrid {
 public:
  explicit QuadratureGrid(int n);

  int n() const { return n_; }
  std::size_t size() const { return static_cast<std::size_t>(n_) * static_cast<std::size_t>(n_); }
  double weight() const;
  double total_weight() const { return weight() * static_cast<double>(size()); }

  double axis(int i) const;
  MomentumPoint node(int i, int j) const { return {axis(i), axis(j)}; }

  /// Flattened node index, row-major in (i, j).
  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(i) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(j);
  }

 private:
  int n_;
};

/// Subset of the five bands. Bands are numbered 1..5: band 1 is the flat
/// band (theta = 0), bands 2..5 follow band_order().
class BandSelection {
 public:
  /// Throws std::invalid_argument for an empty list or a band outside 1..5.
  BandSelection(std::initializer_list<int> bands);
  explicit BandSelection(std::span<const int> bands);

  static BandSelection all() { return {1, 2, 3, 4, 5}; }
  static BandSelection flat() { return {1}; }
  static BandSelection dispersive() { return {2, 3, 4, 5}; }

  bool contains(int band) const { return band >= 1 && band <= kNumChiralities && (mask_ >> (band - 1)) & 1u; }
  bool is_all() const { return mask_ == 0x1Fu; }
  bool includes_flat() const { return contains(1); }

 private:
  std::uint32_t mask_ = 0;
};

/// Eigendecompositions of the momentum-space step operator at every node of
/// a quadrature grid, computed once and shared by all reconstructions.
class BrillouinZoneSpectrum {
 public:
  explicit BrillouinZoneSpectrum(const QuadratureGrid& grid);
  BrillouinZoneSpectrum(const QuadratureGrid& grid, const CoinOperator& coin);

  const QuadratureGrid& grid() const { return grid_; }
  std::size_t size() const { return nodes_.size(); }

  const SpectralDecomposition& at(std::size_t node) const { return nodes_[node]; }
  const std::array<int, kNumChiralities>& order(std::size_t node) const { return orders_[node]; }
  bool flat_simple(std::size_t node) const { return flat_simple_[node] != 0; }

  /// Number of nodes where eigenvalue 1 is not simple.
  std::size_t degenerate_count() const;

 private:
  QuadratureGrid grid_;
  std::vector<SpectralDecomposition> nodes_;
  std::vector<std::array<int, kNumChiralities>> orders_;
  std::vector<unsigned char> flat_simple_;
};

/// Largest fraction of nodes that may be dropped as degenerate before a
/// band-restricted reconstruction fails with QuadratureError.
inline constexpr double kMaxDegenerateFraction = 1e-3;

/// Band-restricted wave function at many sites,
///   Psi_S(n, t) = (1 / 4 pi^2) sum_nodes w sum_{j in S} e^{i theta_j t}
///                 |v_j><v_j| Psi~(k, 0) e^{i k.n}.
///
/// initial_momentum holds Psi~(k, 0) per node (size() entries, flattened as
/// QuadratureGrid::index). The reduction order is fixed, so results do not
/// depend on the thread count.
std::vector<Spinor> component_field(const BrillouinZoneSpectrum& spectrum, const BandSelection& bands,
                                    std::span<const Spinor> initial_momentum, int t, std::span<const Site> sites);

/// Same with a walker localised at the origin, so Psi~(k, 0) is constant.
std::vector<Spinor> component_field(const BrillouinZoneSpectrum& spectrum, const BandSelection& bands,
                                    const Spinor& initial, int t, std::span<const Site> sites);

Spinor component_wavefunction(const BandSelection& bands, const Spinor& initial, Site site, int t,
                              const BrillouinZoneSpectrum& spectrum);
Spinor component_wavefunction(const BandSelection& bands, const Spinor& initial, Site site, int t,
                              const QuadratureGrid& grid);

/// All five bands.
Spinor spectral_wavefunction(const Spinor& initial, Site site, int t, const BrillouinZoneSpectrum& spectrum);
Spinor spectral_wavefunction(const Spinor& initial, Site site, int t, const QuadratureGrid& grid);

/// Sites with |n1| + |n2| <= radius, ascending in (n1, n2).
std::vector<Site> diamond_sites(int radius);

/// Sites with |n1|, |n2| <= radius, ascending in (n1, n2).
std::vector<Site> square_sites(int radius);

/// max over the diamond |n1| + |n2| <= radius and all components of
/// |spectral - direct evolution|. Requires radius >= t.
double reconstruction_error(const Spinor& initial, int t, int radius, const BrillouinZoneSpectrum& spectrum);
double reconstruction_error(const Spinor& initial, int t, int radius, const QuadratureGrid& grid);

}  // namespace qwalk5

#endif  // QWALK5_RECONSTRUCTION_HPP_
