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
#ifndef QWALK5_WALK_HPP_
#define QWALK5_WALK_HPP_

#include <array>
#include <cstddef>
#include <vector>

#include "qwalk5/grid.hpp"
#include "qwalk5/types.hpp"

namespace qwalk5 {

/// Grover diffusion coin of dimension Dim: diagonal (2 - Dim)/Dim,
/// off-diagonal 2/Dim. Entries are formed from the exact rationals so the
/// only rounding is the single division.
template <int Dim>
Eigen::Matrix<Complex, Dim, Dim> grover_coin_of_dimension() {
  constexpr double kDiag = static_cast<double>(2 - Dim) / static_cast<double>(Dim);
  constexpr double kOff = 2.0 / static_cast<double>(Dim);
  Eigen::Matrix<Complex, Dim, Dim> c;
  for (int i = 0; i < Dim; ++i) {
    for (int j = 0; j < Dim; ++j) c(i, j) = Complex(i == j ? kDiag : kOff, 0.0);
  }
  return c;
}

/// The five-state Grover coin: -3/5 on the diagonal, 2/5 elsewhere.
CoinOperator grover_coin();

/// The partial step matrices (U_L, U_R, U_O, U_D, U_U): U_X keeps row X of
/// the coin and zeroes the rest, so the five sum to the coin.
std::array<CoinOperator, kNumChiralities> shift_partition(const CoinOperator& coin);

/// max_{ij} |(C^dagger C - I)_{ij}|
double unitarity_defect(const CoinOperator& coin);

/// Wave function on an origin-centred square of spinors.
///
/// The square always contains the light cone |n1| + |n2| <= time; sites
/// outside it hold exact zeros. Each chirality is stored as its own plane in
/// a frame that moves with it: the L amplitude at site n lives at n + t e1,
/// R at n - t e1, D at n + t e2, U at n - t e2, O at n. In these frames the
/// shift part of a step is free and the update is a local, in-place coin
/// application at every site.
class LatticeState {
 public:
  int radius() const { return radius_; }
  int time() const { return time_; }
  int side() const { return 2 * radius_ + 1; }

  bool contains(Site s) const {
    return s.n1 >= -radius_ && s.n1 <= radius_ && s.n2 >= -radius_ && s.n2 <= radius_;
  }

  /// Zero spinor outside the light cone.
  Spinor at(Site s) const;

  /// Sum of |psi|^2 over the light cone (everything else is zero).
  double total_probability() const;

 private:
  friend LatticeState initial_state(const Spinor&, int);
  friend class Propagator;

  LatticeState(int radius, int time);

  /// Copy with a larger radius.
  LatticeState widened(int radius) const;

  std::ptrdiff_t width() const { return 2 * radius_ + 1; }

  /// Element n2 = 0 of physical row n1 of chirality x at time tau.
  Complex* row(int x, int n1, int tau);
  const Complex* row(int x, int n1, int tau) const { return const_cast<LatticeState*>(this)->row(x, n1, tau); }

  int radius_ = 0;
  int time_ = 0;
  std::vector<Complex> planes_;
};

/// Tolerance on |amplitudes|^2 - 1 accepted by initial_state.
inline constexpr double kInitialNormTolerance = 1e-9;

/// Walker at the origin with the given coin amplitudes at t = 0.
/// Throws NormError unless the squared norm is 1 within 1e-9.
LatticeState initial_state(const Spinor& amplitudes, int radius = 0);

/// In-place evolution of a single state. Each pass applies up to
/// kSweepDepth steps as a wavefront over rows, so a row's data is reused
/// from cache for several time levels; every amplitude is updated exactly
/// as a single step would, so results do not depend on the pass depth.
/// Storage is sized for `capacity` steps up front and regrown when exceeded.
class Propagator {
 public:
  static constexpr int kSweepDepth = 8;

  Propagator(const LatticeState& start, const CoinOperator& coin, int capacity = 0);

  void step();

  /// Advances `steps` steps and returns the total probability after each
  /// one, summed from the amplitudes as they are written.
  std::vector<double> advance(int steps);

  const LatticeState& state() const { return state_; }

 private:
  void reserve(int radius);

  CoinOperator coin_;
  bool grover_;
  LatticeState state_;
};

/// One step of
///   Psi(n, t+1) = U_L Psi(n1+1, n2) + U_R Psi(n1-1, n2) + U_O Psi(n)
///               + U_D Psi(n1, n2+1) + U_U Psi(n1, n2-1),
/// growing the square so that radius >= t + 1.
LatticeState evolve_step(const LatticeState& state, const CoinOperator& coin);
LatticeState evolve_step(const LatticeState& state);

/// Applies evolve_step `steps` times. Throws std::invalid_argument for
/// negative steps.
LatticeState evolve(const LatticeState& state, int steps, const CoinOperator& coin);
LatticeState evolve(const LatticeState& state, int steps);

/// P(n) = sum_l |psi_l(n)|^2 over the state's square.
ProbabilityGrid probability_grid(const LatticeState& state);

}  // namespace qwalk5

#endif  // QWALK5_WALK_HPP_
