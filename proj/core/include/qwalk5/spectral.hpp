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
#ifndef QWALK5_SPECTRAL_HPP_
#define QWALK5_SPECTRAL_HPP_

#include <array>
#include <numbers>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "qwalk5/types.hpp"
#include "qwalk5/walk.hpp"

namespace qwalk5 {

/// Maps any angle onto the branch (-pi, pi]. Values within 1e-12 of -pi are
/// reported as +pi so eigenvalue -1 has a single representative.
double wrap_phase(double theta);

/// Quasi-momentum (k1, k2) on the torus (-pi, pi]^2. Components are wrapped
/// on construction.
class MomentumPoint {
 public:
  MomentumPoint() = default;
  MomentumPoint(double k1, double k2) : k1_(wrap_phase(k1)), k2_(wrap_phase(k2)) {}

  double k1() const { return k1_; }
  double k2() const { return k2_; }

  MomentumPoint operator-() const { return {-k1_, -k2_}; }

 private:
  double k1_ = 0.0;
  double k2_ = 0.0;
};

/// Single-step propagator in momentum space,
///   diag(e^{ik1}, e^{-ik1}, 1, e^{ik2}, e^{-ik2}) * coin.
struct MomentumOperator {
  MomentumPoint k;
  CoinOperator entries;
};

MomentumOperator fourier_step_operator(MomentumPoint k, const CoinOperator& coin);
MomentumOperator fourier_step_operator(MomentumPoint k);

/// How each eigenvector's free phase is fixed.
enum class PhaseConvention {
  /// The first entry of largest modulus is made real and non-negative.
  kLargestModulusReal,
  /// The first entry with modulus above 1e-8 is made real and non-negative.
  kFirstNonzeroReal,
};

inline constexpr double kClusterTolerance = 1e-8;
inline constexpr double kDecompositionTolerance = 1e-8;
inline constexpr double kFlatSimplicityTolerance = 1e-6;

/// Eigenphases and orthonormal eigenvectors of a unitary matrix.
///
/// phases are sorted ascending on (-pi, pi]; column j of vectors belongs to
/// phases[j]. normalization[j] is the squared normalisation constant applied
/// to column j; after orthonormalisation it is 1 up to rounding.
template <int Dim>
struct Eigensystem {
  using Matrix = Eigen::Matrix<Complex, Dim, Dim>;
  using Vector = Eigen::Matrix<Complex, Dim, 1>;

  std::array<double, Dim> phases{};
  Matrix vectors;
  std::array<double, Dim> normalization{};

  /// sum_j e^{i theta_j} |v_j><v_j|
  Matrix reconstruct() const;

  /// max |V^dagger V - I|
  double gram_defect() const;

  /// Column whose eigenvalue is closest to 1.
  int flat_index() const;

  /// |e^{i theta_j} - 1| for column j.
  double distance_from_one(int j) const;
};

/// Eigendecomposition of a unitary matrix via complex Schur form. Eigenphase
/// clusters tighter than kClusterTolerance are re-orthonormalised with
/// gram_schmidt. Throws DecompositionError if the reconstruction residual
/// exceeds kDecompositionTolerance.
template <int Dim>
Eigensystem<Dim> unitary_eigensystem(const Eigen::Matrix<Complex, Dim, Dim>& u,
                                     PhaseConvention convention = PhaseConvention::kLargestModulusReal);

struct SpectralDecomposition : Eigensystem<kNumChiralities> {
  MomentumPoint k;
};

SpectralDecomposition eigendecompose(const MomentumOperator& op,
                                     PhaseConvention convention = PhaseConvention::kLargestModulusReal);

/// Classical Gram-Schmidt with one re-orthogonalisation pass. Throws
/// RankError when a vector's post-projection norm is at most tol.
std::vector<Eigen::VectorXcd> gram_schmidt(std::span<const Eigen::VectorXcd> vectors, double tol = 1e-10);

/// The trigonometric aggregates A, B, C, D, evaluated term by term as
/// printed. D is the termwise negation of C.
struct BandFunctions {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double d = 0.0;
};

BandFunctions band_functions(MomentumPoint k);

/// min_j |e^{i theta_j(k)} - 1|
double flat_band_residual(MomentumPoint k);

/// True when exactly one eigenvalue lies within kFlatSimplicityTolerance of 1.
bool flat_band_is_simple(const SpectralDecomposition& spectrum);

/// |v_1><v_1| for the eigenvalue-1 eigenvector. Throws DegeneracyError when
/// that eigenspace is not one-dimensional.
CoinOperator flat_band_projector(const SpectralDecomposition& spectrum);
CoinOperator flat_band_projector(MomentumPoint k);

/// Band numbering used by band selections: band 0 is the flat band, bands
/// 1..4 are the remaining columns sorted by |theta| and then by sign
/// (negative first). Entry b is the column of band b.
std::array<int, kNumChiralities> band_order(const SpectralDecomposition& spectrum);

/// Grid points -pi + 2 pi (i + 1) / n for i = 0..n-1, i.e. a uniform grid on
/// (-pi, pi] that contains pi.
std::vector<double> periodic_axis(int n);

struct BandRow {
  MomentumPoint k;
  std::array<double, kNumChiralities> phases{};
};

/// Eigenphases over the periodic_axis grid squared, rows ordered by (k1, k2).
/// Throws std::invalid_argument for grid_size < 2.
std::vector<BandRow> band_surface(int grid_size);

// Three-state reference walk on a line.

using ThreeStateMatrix = Eigen::Matrix<Complex, 3, 3>;

/// diag(e^{ik}, 1, e^{-ik}) times the 3x3 Grover coin.
ThreeStateMatrix three_state_operator(double k);

struct ThreeStateResiduals {
  /// max |cos theta - (-(2 + cos k) / 3)| over the two dispersive phases
  double cos_residual = 0.0;
  /// max ||sin theta| - sqrt((5 + cos k)(1 - cos k)) / 3|
  double sin_residual = 0.0;
  /// max |theta_flat|
  double flat_residual = 0.0;
};

/// Compares the numerical three-state spectrum with its closed form at
/// k = -pi + 2 pi (i + 1/2) / samples. Throws std::invalid_argument for
/// samples < 1.
ThreeStateResiduals three_state_phase_check(int samples);

}  // namespace qwalk5

#endif  // QWALK5_SPECTRAL_HPP_
