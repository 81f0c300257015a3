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
#ifndef QWALK5_GRID_HPP_
#define QWALK5_GRID_HPP_

#include <cstddef>
#include <vector>

#include "qwalk5/types.hpp"

namespace qwalk5 {

/// Site-indexed probabilities on the square |n1|, |n2| <= radius.
///
/// Values are stored row-major with n1 as the slow index, so iterating the
/// storage visits sites in ascending (n1, n2) order.
class ProbabilityGrid {
 public:
  ProbabilityGrid() = default;
  explicit ProbabilityGrid(int radius);
  ProbabilityGrid(int radius, std::vector<double> values);

  int radius() const { return radius_; }
  int side() const { return 2 * radius_ + 1; }
  std::size_t size() const { return values_.size(); }

  bool contains(Site s) const;

  /// Zero outside the stored square.
  double at(Site s) const;
  double& operator[](Site s) { return values_[offset(s)]; }

  /// Sum of all stored values.
  double mass() const;
  double max_value() const;

  /// Sum over the centred square of the given radius (clipped to the grid).
  double mass_within(int radius) const;

  /// Copy restricted to a smaller centred square.
  ProbabilityGrid cropped(int radius) const;

  const std::vector<double>& values() const { return values_; }

  /// Site of storage index i.
  Site site_of(std::size_t i) const;

 private:
  std::size_t offset(Site s) const {
    return static_cast<std::size_t>(s.n1 + radius_) * static_cast<std::size_t>(side()) +
           static_cast<std::size_t>(s.n2 + radius_);
  }

  int radius_ = 0;
  std::vector<double> values_ = std::vector<double>(1, 0.0);
};

}  // namespace qwalk5

#endif  // QWALK5_GRID_HPP_
