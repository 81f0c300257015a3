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
#include "qwalk5/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "parallel.hpp"
#include "qwalk5/errors.hpp"

namespace qwalk5 {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kPiTie = 1e-12;

template <int Dim>
void apply_phase_convention(Eigen::Matrix<Complex, Dim, 1>& v, PhaseConvention convention) {
  int pivot = 0;
  if (convention == PhaseConvention::kLargestModulusReal) {
    double best = -1.0;
    for (int i = 0; i < Dim; ++i) {
      if (std::abs(v(i)) > best) {
        best = std::abs(v(i));
        pivot = i;
      }
    }
  } else {
    for (int i = 0; i < Dim; ++i) {
      if (std::abs(v(i)) > 1e-8) {
        pivot = i;
        break;
      }
    }
  }
  const double mag = std::abs(v(pivot));
  if (mag > 0.0) v *= std::conj(v(pivot)) / mag;
  v(pivot) = Complex(std::abs(v(pivot)), 0.0);
}

}  // namespace

double wrap_phase(double theta) {
  double w = std::remainder(theta, 2.0 * kPi);  // [-pi, pi]
  if (w <= -kPi + kPiTie) w = kPi;
  return w;
}

MomentumOperator fourier_step_operator(MomentumPoint k, const CoinOperator& coin) {
  const std::array<Complex, kNumChiralities> shift = {
      std::polar(1.0, k.k1()), std::polar(1.0, -k.k1()), Complex(1.0, 0.0),
      std::polar(1.0, k.k2()), std::polar(1.0, -k.k2())};
  MomentumOperator op{k, coin};
  for (int row = 0; row < kNumChiralities; ++row) op.entries.row(row) *= shift[static_cast<std::size_t>(row)];
  return op;
}

MomentumOperator fourier_step_operator(MomentumPoint k) { return fourier_step_operator(k, grover_coin()); }

// ---------------------------------------------------------------------------
// Eigensystem

template <int Dim>
typename Eigensystem<Dim>::Matrix Eigensystem<Dim>::reconstruct() const {
  Matrix m = Matrix::Zero();
  for (int j = 0; j < Dim; ++j) {
    m += std::polar(1.0, phases[static_cast<std::size_t>(j)]) * vectors.col(j) * vectors.col(j).adjoint();
  }
  return m;
}

template <int Dim>
double Eigensystem<Dim>::gram_defect() const {
  return (vectors.adjoint() * vectors - Matrix::Identity()).cwiseAbs().maxCoeff();
}

template <int Dim>
double Eigensystem<Dim>::distance_from_one(int j) const {
  return std::abs(std::polar(1.0, phases[static_cast<std::size_t>(j)]) - 1.0);
}

template <int Dim>
int Eigensystem<Dim>::flat_index() const {
  int best = 0;
  for (int j = 1; j < Dim; ++j) {
    if (distance_from_one(j) < distance_from_one(best)) best = j;
  }
  return best;
}

template <int Dim>
Eigensystem<Dim> unitary_eigensystem(const Eigen::Matrix<Complex, Dim, Dim>& u, PhaseConvention convention) {
  using Matrix = Eigen::Matrix<Complex, Dim, Dim>;
  Eigen::ComplexSchur<Matrix> schur(u, /*computeU=*/true);
  if (schur.info() != Eigen::Success) throw DecompositionError("complex Schur iteration did not converge");

  // For a normal matrix the Schur vectors are eigenvectors.
  const Matrix& t = schur.matrixT();
  const Matrix& q = schur.matrixU();

  std::array<double, Dim> raw{};
  for (int j = 0; j < Dim; ++j) raw[static_cast<std::size_t>(j)] = wrap_phase(std::arg(t(j, j)));

  std::array<int, Dim> order{};
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return raw[static_cast<std::size_t>(a)] < raw[static_cast<std::size_t>(b)];
  });

  Eigensystem<Dim> out;
  for (int j = 0; j < Dim; ++j) {
    out.phases[static_cast<std::size_t>(j)] = raw[static_cast<std::size_t>(order[static_cast<std::size_t>(j)])];
    out.vectors.col(j) = q.col(order[static_cast<std::size_t>(j)]);
  }

  // Clusters of consecutive sorted phases, with the last cluster joined to
  // the first when they meet across the branch cut.
  std::array<int, Dim> cluster{};
  int num_clusters = 0;
  for (int j = 0; j < Dim; ++j) {
    if (j > 0 && out.phases[static_cast<std::size_t>(j)] - out.phases[static_cast<std::size_t>(j - 1)] >= kClusterTolerance) {
      ++num_clusters;
    }
    cluster[static_cast<std::size_t>(j)] = num_clusters;
  }
  ++num_clusters;
  if (num_clusters > 1 && out.phases[0] + 2.0 * kPi - out.phases[Dim - 1] < kClusterTolerance) {
    const int last = cluster[Dim - 1];
    for (auto& c : cluster) {
      if (c == last) c = 0;
    }
  }

  for (int c = 0; c < num_clusters; ++c) {
    std::vector<int> members;
    for (int j = 0; j < Dim; ++j) {
      if (cluster[static_cast<std::size_t>(j)] == c) members.push_back(j);
    }
    if (members.size() < 2) continue;
    std::vector<Eigen::VectorXcd> span_vectors;
    for (int j : members) span_vectors.emplace_back(out.vectors.col(j));
    const auto orthonormal = gram_schmidt(span_vectors, 1e-6);
    for (std::size_t i = 0; i < members.size(); ++i) out.vectors.col(members[i]) = orthonormal[i];
  }

  for (int j = 0; j < Dim; ++j) {
    typename Eigensystem<Dim>::Vector v = out.vectors.col(j);
    const double norm2 = v.squaredNorm();
    out.normalization[static_cast<std::size_t>(j)] = 1.0 / norm2;
    v /= std::sqrt(norm2);
    apply_phase_convention<Dim>(v, convention);
    out.vectors.col(j) = v;
  }

  const double residual = (out.reconstruct() - u).cwiseAbs().maxCoeff();
  if (!(residual <= kDecompositionTolerance)) {
    std::ostringstream msg;
    msg << "eigendecomposition residual " << residual << " exceeds " << kDecompositionTolerance;
    throw DecompositionError(msg.str());
  }
  return out;
}

template struct Eigensystem<3>;
template struct Eigensystem<kNumChiralities>;
template Eigensystem<3> unitary_eigensystem<3>(const Eigen::Matrix<Complex, 3, 3>&, PhaseConvention);
template Eigensystem<kNumChiralities> unitary_eigensystem<kNumChiralities>(
    const Eigen::Matrix<Complex, kNumChiralities, kNumChiralities>&, PhaseConvention);

SpectralDecomposition eigendecompose(const MomentumOperator& op, PhaseConvention convention) {
  SpectralDecomposition out;
  static_cast<Eigensystem<kNumChiralities>&>(out) = unitary_eigensystem<kNumChiralities>(op.entries, convention);
  out.k = op.k;
  return out;
}

std::vector<Eigen::VectorXcd> gram_schmidt(std::span<const Eigen::VectorXcd> vectors, double tol) {
  std::vector<Eigen::VectorXcd> basis;
  basis.reserve(vectors.size());
  for (std::size_t j = 0; j < vectors.size(); ++j) {
    Eigen::VectorXcd w = vectors[j];
    for (int pass = 0; pass < 2; ++pass) {
      Eigen::VectorXcd projection = Eigen::VectorXcd::Zero(w.size());
      for (const auto& q : basis) projection += q.dot(w) * q;  // dot conjugates q
      w -= projection;
    }
    const double norm = w.norm();
    if (!(norm > tol)) {
      std::ostringstream msg;
      msg << "vector " << j << " is linearly dependent on its predecessors (residual norm " << norm << ")";
      throw RankError(msg.str());
    }
    basis.emplace_back(w / norm);
  }
  return basis;
}

BandFunctions band_functions(MomentumPoint k) {
  const double k1 = k.k1();
  const double k2 = k.k2();
  BandFunctions f;
  f.a = 3.0 * std::cos(k1) + 3.0 * std::cos(k2) + 4.0;
  f.b = std::cos(k1 - k2) + std::cos(k1 + k2) + 4.0 * std::cos(k1) + 4.0 * std::cos(k2) + 5.0;
  f.c = 2.0 * std::cos(k1 - k2) + 2.0 * std::cos(k1 + k2) + 32.0 * std::cos(k1) - 9.0 * std::cos(2.0 * k1) +
        32.0 * std::cos(k2) - 9.0 * std::cos(2.0 * k2) - 50.0;
  f.d = -2.0 * std::cos(k1 - k2) - 2.0 * std::cos(k1 + k2) - 32.0 * std::cos(k1) + 9.0 * std::cos(2.0 * k1) -
        32.0 * std::cos(k2) + 9.0 * std::cos(2.0 * k2) + 50.0;
  return f;
}

double flat_band_residual(MomentumPoint k) {
  const auto spectrum = eigendecompose(fourier_step_operator(k));
  return spectrum.distance_from_one(spectrum.flat_index());
}

bool flat_band_is_simple(const SpectralDecomposition& spectrum) {
  int near_one = 0;
  for (int j = 0; j < kNumChiralities; ++j) {
    if (spectrum.distance_from_one(j) <= kFlatSimplicityTolerance) ++near_one;
  }
  return near_one == 1;
}

CoinOperator flat_band_projector(const SpectralDecomposition& spectrum) {
  if (!flat_band_is_simple(spectrum)) {
    std::ostringstream msg;
    msg << "eigenvalue 1 is not simple at k = (" << spectrum.k.k1() << ", " << spectrum.k.k2() << ")";
    throw DegeneracyError(msg.str());
  }
  const auto v = spectrum.vectors.col(spectrum.flat_index());
  return v * v.adjoint();
}

CoinOperator flat_band_projector(MomentumPoint k) {
  return flat_band_projector(eigendecompose(fourier_step_operator(k)));
}

std::array<int, kNumChiralities> band_order(const SpectralDecomposition& spectrum) {
  const int flat = spectrum.flat_index();
  std::array<int, kNumChiralities> order{};
  order[0] = flat;
  int next = 1;
  for (int j = 0; j < kNumChiralities; ++j) {
    if (j != flat) order[static_cast<std::size_t>(next++)] = j;
  }
  std::stable_sort(order.begin() + 1, order.end(), [&](int a, int b) {
    const double pa = spectrum.phases[static_cast<std::size_t>(a)];
    const double pb = spectrum.phases[static_cast<std::size_t>(b)];
    if (std::abs(pa) != std::abs(pb)) return std::abs(pa) < std::abs(pb);
    return pa < pb;
  });
  return order;
}

std::vector<double> periodic_axis(int n) {
  std::vector<double> axis(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) axis[static_cast<std::size_t>(i)] = -kPi + 2.0 * kPi * (i + 1) / n;
  return axis;
}

std::vector<BandRow> band_surface(int grid_size) {
  if (grid_size < 2) throw std::invalid_argument("band_surface: grid_size must be at least 2");
  const auto axis = periodic_axis(grid_size);
  std::vector<BandRow> rows(static_cast<std::size_t>(grid_size) * static_cast<std::size_t>(grid_size));
  detail::parallel_for(0, grid_size, [&](int i) {
    for (int j = 0; j < grid_size; ++j) {
      const MomentumPoint k(axis[static_cast<std::size_t>(i)], axis[static_cast<std::size_t>(j)]);
      auto& row = rows[static_cast<std::size_t>(i) * static_cast<std::size_t>(grid_size) + static_cast<std::size_t>(j)];
      row.k = k;
      row.phases = eigendecompose(fourier_step_operator(k)).phases;
    }
  });
  return rows;
}

ThreeStateMatrix three_state_operator(double k) {
  ThreeStateMatrix m = grover_coin_of_dimension<3>();
  m.row(0) *= std::polar(1.0, k);
  m.row(2) *= std::polar(1.0, -k);
  return m;
}

ThreeStateResiduals three_state_phase_check(int samples) {
  if (samples < 1) throw std::invalid_argument("three_state_phase_check: samples must be at least 1");
  ThreeStateResiduals r;
  for (int i = 0; i < samples; ++i) {
    const double k = -kPi + 2.0 * kPi * (i + 0.5) / samples;
    const auto spectrum = unitary_eigensystem<3>(three_state_operator(k));
    const int flat = spectrum.flat_index();
    const double cos_expected = -(2.0 + std::cos(k)) / 3.0;
    const double sin_expected = std::sqrt((5.0 + std::cos(k)) * (1.0 - std::cos(k))) / 3.0;
    for (int j = 0; j < 3; ++j) {
      const double theta = spectrum.phases[static_cast<std::size_t>(j)];
      if (j == flat) {
        r.flat_residual = std::max(r.flat_residual, std::abs(theta));
        continue;
      }
      r.cos_residual = std::max(r.cos_residual, std::abs(std::cos(theta) - cos_expected));
      r.sin_residual = std::max(r.sin_residual, std::abs(std::abs(std::sin(theta)) - sin_expected));
    }
  }
  return r;
}

}  // namespace qwalk5
