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
#ifndef QWALK5_TESTS_SUPPORT_HPP_
#define QWALK5_TESTS_SUPPORT_HPP_

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "qwalk5/types.hpp"

namespace qwalk5::testing {

inline Spinor to_spinor(const oracle::Vec5& v) {
  Spinor s;
  for (int i = 0; i < kNumChiralities; ++i) s(i) = v[static_cast<std::size_t>(i)];
  return s;
}

inline Spinor basis(int c) { return Spinor::Unit(c); }

inline Spinor uniform() { return Spinor::Constant(Complex(1.0 / std::sqrt(5.0), 0.0)); }

inline Spinor random_spinor(std::mt19937_64& rng) { return to_spinor(oracle::random_unit(rng)); }

}  // namespace qwalk5::testing

#endif  // QWALK5_TESTS_SUPPORT_HPP_
