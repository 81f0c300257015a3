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
// Reference computations used only by tests. Nothing here calls the
// library's evolution, eigensolver or quadrature code.
#ifndef QWALK5_TESTS_ORACLES_HPP_
#define QWALK5_TESTS_ORACLES_HPP_

#include <array>
#include <cmath>
#include <complex>
#include <map>
#include <numbers>
#include <random>
#include <utility>
#include <vector>

namespace qwalk5::oracle {

using C = std::complex<double>;
using Vec5 = std::array<C, 5>;
using Mat5 = std::array<std::array<C, 5>, 5>;

/// Grover coin written out entry by entry.
inline Mat5 grover() {
  Mat5 m{};
  for (int i = 0; i < 5; ++i) {
    for (int j = 0; j < 5; ++j) m[i][j] = (i == j) ? C(-3.0 / 5.0) : C(2.0 / 5.0);
  }
  return m;
}

inline Vec5 mat_vec(const Mat5& m, const Vec5& v) {
  Vec5 out{};
  for (int i = 0; i < 5; ++i) {
    for (int j = 0; j < 5; ++j) out[i] += m[i][j] * v[j];
  }
  return out;
}

/// Sparse "coin then move" simulator: apply the coin at every occupied site,
/// then push chirality L one site to -n1, R to +n1, D to -n2, U to +n2 and
/// keep O in place.
class SparseWalk {
 public:
  using Key = std::pair<int, int>;

  SparseWalk(const Vec5& initial, Mat5 coin = grover()) : coin_(coin) { field_[{0, 0}] = initial; }

  void step() {
    std::map<Key, Vec5> next;
    for (const auto& [site, psi] : field_) {
      const Vec5 mixed = mat_vec(coin_, psi);
      next[{site.first - 1, site.second}][0] += mixed[0];
      next[{site.first + 1, site.second}][1] += mixed[1];
      next[{site.first, site.second}][2] += mixed[2];
      next[{site.first, site.second - 1}][3] += mixed[3];
      next[{site.first, site.second + 1}][4] += mixed[4];
    }
    field_ = std::move(next);
  }

  Vec5 at(int n1, int n2) const {
    const auto it = field_.find({n1, n2});
    return it == field_.end() ? Vec5{} : it->second;
  }

  double probability(int n1, int n2) const {
    double p = 0.0;
    for (const auto& a : at(n1, n2)) p += std::norm(a);
    return p;
  }

  const std::map<Key, Vec5>& field() const { return field_; }

 private:
  Mat5 coin_;
  std::map<Key, Vec5> field_;
};

/// Psi(n, t) from the midpoint-rule inverse transform of U(k)^t psi0, with
/// U(k)^t applied by repeated multiplication (no eigendecomposition).
inline Vec5 matrix_power_wavefunction(const Vec5& initial, int n1, int n2, int t, int n) {
  const double pi = std::numbers::pi;
  const Mat5 coin = grover();
  Vec5 sum{};
  for (int i = 0; i < n; ++i) {
    const double k1 = -pi + (i + 0.5) * 2.0 * pi / n;
    for (int j = 0; j < n; ++j) {
      const double k2 = -pi + (j + 0.5) * 2.0 * pi / n;
      const std::array<C, 5> shift = {std::polar(1.0, k1), std::polar(1.0, -k1), C(1.0),
                                      std::polar(1.0, k2), std::polar(1.0, -k2)};
      Vec5 psi = initial;
      for (int s = 0; s < t; ++s) {
        psi = mat_vec(coin, psi);
        for (int l = 0; l < 5; ++l) psi[l] *= shift[l];
      }
      const C phase = std::polar(1.0, k1 * n1 + k2 * n2);
      for (int l = 0; l < 5; ++l) sum[l] += phase * psi[l];
    }
  }
  for (auto& a : sum) a /= static_cast<double>(n) * n;
  return sum;
}

/// Random point on the unit sphere of C^5.
inline Vec5 random_unit(std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  Vec5 v{};
  double norm2 = 0.0;
  for (auto& a : v) {
    a = C(normal(rng), normal(rng));
    norm2 += std::norm(a);
  }
  for (auto& a : v) a /= std::sqrt(norm2);
  return v;
}

// Values evaluated by hand from the evolution equation for one step from
// the L basis state: the coin column (-3, 2, 2, 2, 2)/5 is split over the
// five destinations.
inline constexpr double kOneStepFromL_Left = 9.0 / 25.0;
inline constexpr double kOneStepFromL_Other = 4.0 / 25.0;

// P_inf(0, 0) for the L basis state on the n = 256 midpoint grid, computed
// with numpy.linalg.eig and the inverse eigenvector matrix (a different
// eigensolver and projector construction from the library's). Agrees with
// the T = 500 time average (0.0795242) to 3.3%.
inline constexpr double kLimitAtOriginFromL_n256 = 0.07695287077528;

}  // namespace qwalk5::oracle

#endif  // QWALK5_TESTS_ORACLES_HPP_
