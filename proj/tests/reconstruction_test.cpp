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

#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "qwalk5/errors.hpp"
#include "qwalk5/walk.hpp"
#include "support.hpp"

namespace qwalk5 {
namespace {

using testing::basis;

constexpr double kPi = std::numbers::pi;

double max_diff(const Spinor& a, const Spinor& b) { return (a - b).cwiseAbs().maxCoeff(); }

TEST(QuadratureGrid, WeightsAndNodes) {
  for (int n : {2, 8, 64, 256}) {
    const QuadratureGrid grid(n);
    EXPECT_NEAR(grid.total_weight(), 4 * kPi * kPi, 1e-9);
    for (int i = 0; i < n; ++i) {
      EXPECT_GT(std::abs(grid.axis(i)), 1e-3 / n);
      EXPECT_LT(std::abs(grid.axis(i)), kPi);
    }
  }
  EXPECT_THROW(QuadratureGrid(0), std::invalid_argument);
  EXPECT_THROW(QuadratureGrid(7), std::invalid_argument);
}

TEST(BandSelection, Validation) {
  EXPECT_THROW(BandSelection({}), std::invalid_argument);
  EXPECT_THROW(BandSelection({0}), std::invalid_argument);
  EXPECT_THROW(BandSelection({6}), std::invalid_argument);
  EXPECT_TRUE(BandSelection::all().is_all());
  EXPECT_TRUE(BandSelection({1, 3}).contains(3));
  EXPECT_FALSE(BandSelection::dispersive().includes_flat());
}

class SharedSpectrum : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    n64_ = new BrillouinZoneSpectrum(QuadratureGrid(64));
    n128_ = new BrillouinZoneSpectrum(QuadratureGrid(128));
  }
  static void TearDownTestSuite() {
    delete n64_;
    delete n128_;
  }
  static const BrillouinZoneSpectrum* n64_;
  static const BrillouinZoneSpectrum* n128_;
};

const BrillouinZoneSpectrum* SharedSpectrum::n64_ = nullptr;
const BrillouinZoneSpectrum* SharedSpectrum::n128_ = nullptr;

TEST(SpectralWavefunction, InitialStateAtTimeZero) {
  std::mt19937_64 rng(3);
  const Spinor psi = testing::random_spinor(rng);
  for (int n : {4, 8, 32}) {
    EXPECT_LT(max_diff(spectral_wavefunction(psi, {0, 0}, 0, QuadratureGrid(n)), psi), 1e-12) << n;
  }
}

TEST_F(SharedSpectrum, OneStepLeftNeighbour) {
  const Spinor psi = spectral_wavefunction(basis(0), {-1, 0}, 1, *n128_);
  EXPECT_NEAR(psi(0).real(), -0.6, 1e-6);
  EXPECT_NEAR(psi(0).imag(), 0.0, 1e-6);
  for (int c = 1; c < 5; ++c) EXPECT_LT(std::abs(psi(c)), 1e-6);
}

TEST_F(SharedSpectrum, AgreesWithMatrixPowerQuadrature) {
  // Same quadrature, but U(k)^t by repeated multiplication instead of the
  // eigendecomposition.
  std::mt19937_64 rng(5);
  const auto psi0 = oracle::random_unit(rng);
  const int n = n64_->grid().n();
  for (const Site s : {Site{0, 0}, Site{2, -1}, Site{-3, 0}}) {
    const Spinor expected = testing::to_spinor(oracle::matrix_power_wavefunction(psi0, s.n1, s.n2, 5, n));
    EXPECT_LT(max_diff(spectral_wavefunction(testing::to_spinor(psi0), s, 5, *n64_), expected), 1e-12);
  }
}

TEST(SpectralWavefunction, MatchesDirectEvolutionAtTimeEight) {
  const BrillouinZoneSpectrum spectrum(QuadratureGrid(256));
  const auto direct = evolve(initial_state(basis(0)), 8);
  const auto sites = diamond_sites(8);
  const auto field = component_field(spectrum, BandSelection::all(), basis(0), 8, sites);
  double worst = 0.0;
  for (std::size_t s = 0; s < sites.size(); ++s) worst = std::max(worst, max_diff(field[s], direct.at(sites[s])));
  EXPECT_LT(worst, 1e-3);
}

TEST_F(SharedSpectrum, AllBandsIsExactlyTheSpectralSum) {
  std::mt19937_64 rng(8);
  const Spinor psi = testing::random_spinor(rng);
  EXPECT_EQ(component_wavefunction(BandSelection::all(), psi, {1, -2}, 6, *n64_),
            spectral_wavefunction(psi, {1, -2}, 6, *n64_));
}

TEST_F(SharedSpectrum, SingletonBandsPartitionTheWavefunction) {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 3; ++trial) {
    const Spinor psi = testing::random_spinor(rng);
    const Site site{trial - 1, 2};
    const int t = 3 + 4 * trial;
    Spinor sum = Spinor::Zero();
    for (int b = 1; b <= 5; ++b) sum += component_wavefunction(BandSelection({b}), psi, site, t, *n64_);
    EXPECT_LT(max_diff(sum, spectral_wavefunction(psi, site, t, *n64_)), 1e-12);
  }
}

TEST_F(SharedSpectrum, FlatBandIsStationary) {
  std::mt19937_64 rng(10);
  const Spinor psi = testing::random_spinor(rng);
  const Spinor at_t = component_wavefunction(BandSelection::flat(), psi, {1, 1}, 4, *n64_);
  for (int t : {0, 11, 250}) EXPECT_EQ(component_wavefunction(BandSelection::flat(), psi, {1, 1}, t, *n64_), at_t);
}

TEST(ComponentWavefunction, DispersiveBandsDecay) {
  const BrillouinZoneSpectrum spectrum(QuadratureGrid(256));
  const double early = component_wavefunction(BandSelection::dispersive(), basis(0), {0, 0}, 25, spectrum).norm();
  const double late = component_wavefunction(BandSelection::dispersive(), basis(0), {0, 0}, 400, spectrum).norm();
  EXPECT_LT(late, early);
}

TEST(Parseval, UnitMassAtTimeZero) {
  std::mt19937_64 rng(12);
  const Spinor psi = testing::random_spinor(rng);
  for (int n : {64, 128}) {
    const BrillouinZoneSpectrum spectrum{QuadratureGrid(n)};
    const auto sites = diamond_sites(2);
    double mass = 0.0;
    for (const auto& v : component_field(spectrum, BandSelection::all(), psi, 0, sites)) mass += v.squaredNorm();
    EXPECT_NEAR(mass, 1.0, 1e-8);
  }
}

TEST(ReconstructionError, TimeZero) {
  EXPECT_LT(reconstruction_error(basis(0), 0, 0, QuadratureGrid(8)), 1e-10);
  EXPECT_THROW(reconstruction_error(basis(0), 3, 2, QuadratureGrid(8)), std::invalid_argument);
}

// e^{ik.n} U(k)^t has degree at most 2t in each momentum component on the
// sites |n_i| <= t, and an n-point midpoint rule integrates e^{imk} exactly
// for |m| < n. So the error drops to rounding once n > 2t, and not before.
TEST(ReconstructionError, ExactOnceGridResolvesTheDegree) {
  for (int t : {2, 5, 8}) {
    const int first_exact = 2 * t + 2;
    for (int n : {first_exact, first_exact + 2, 64}) {
      EXPECT_LT(reconstruction_error(basis(1), t, t, QuadratureGrid(n)), 1e-12) << "t = " << t << ", n = " << n;
    }
    EXPECT_GT(reconstruction_error(basis(1), t, t, QuadratureGrid(2 * (t / 2))), 1e-3) << "t = " << t;
  }
}

TEST(DegenerateNodes, SwapCoinHasNoIsolatedFlatBand) {
  // L<->R and D<->U swaps with O fixed: eigenvalue 1 is triple at every k.
  CoinOperator swap = CoinOperator::Zero();
  swap(0, 1) = swap(1, 0) = swap(2, 2) = swap(3, 4) = swap(4, 3) = 1.0;
  const BrillouinZoneSpectrum spectrum(QuadratureGrid(16), swap);
  EXPECT_EQ(spectrum.degenerate_count(), spectrum.size());
  EXPECT_THROW(component_wavefunction(BandSelection::flat(), basis(0), {0, 0}, 0, spectrum), QuadratureError);

  // The full propagator is still exact: compare with direct evolution.
  const auto direct = evolve(initial_state(basis(0)), 3, swap);
  const auto sites = diamond_sites(3);
  const auto field = component_field(spectrum, BandSelection::all(), basis(0), 3, sites);
  for (std::size_t s = 0; s < sites.size(); ++s) EXPECT_LT(max_diff(field[s], direct.at(sites[s])), 1e-12);
}

TEST_F(SharedSpectrum, MomentumInitialConditionMatchesConstant) {
  std::vector<Spinor> per_node(n64_->size(), basis(3));
  const Site sites[] = {{0, 0}, {1, -1}};
  const auto a = component_field(*n64_, BandSelection({2, 4}), per_node, 7, sites);
  const auto b = component_field(*n64_, BandSelection({2, 4}), basis(3), 7, sites);
  for (int s = 0; s < 2; ++s) EXPECT_EQ(a[static_cast<std::size_t>(s)], b[static_cast<std::size_t>(s)]);
  per_node.pop_back();
  EXPECT_THROW(component_field(*n64_, BandSelection::all(), per_node, 0, sites), std::invalid_argument);
}

}  // namespace
}  // namespace qwalk5
