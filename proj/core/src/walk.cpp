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
#include "qwalk5/walk.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>
#include <sstream>
#include <stdexcept>

#include "qwalk5/errors.hpp"

namespace qwalk5 {

// ---------------------------------------------------------------------------
// ProbabilityGrid

ProbabilityGrid::ProbabilityGrid(int radius)
    : radius_(radius),
      values_(static_cast<std::size_t>(2 * radius + 1) * static_cast<std::size_t>(2 * radius + 1),
              0.0) {
  if (radius < 0) throw std::invalid_argument("ProbabilityGrid: negative radius");
}

ProbabilityGrid::ProbabilityGrid(int radius, std::vector<double> values)
    : radius_(radius), values_(std::move(values)) {
  if (radius < 0) throw std::invalid_argument("ProbabilityGrid: negative radius");
  if (values_.size() != static_cast<std::size_t>(side()) * static_cast<std::size_t>(side())) {
    throw std::invalid_argument("ProbabilityGrid: value count does not match radius");
  }
}

bool ProbabilityGrid::contains(Site s) const {
  return s.n1 >= -radius_ && s.n1 <= radius_ && s.n2 >= -radius_ && s.n2 <= radius_;
}

double ProbabilityGrid::at(Site s) const { return contains(s) ? values_[offset(s)] : 0.0; }

double ProbabilityGrid::mass() const {
  double m = 0.0;
  for (double v : values_) m += v;
  return m;
}

double ProbabilityGrid::max_value() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, v);
  return m;
}

double ProbabilityGrid::mass_within(int radius) const {
  const int r = std::min(radius, radius_);
  double m = 0.0;
  for (int n1 = -r; n1 <= r; ++n1) {
    for (int n2 = -r; n2 <= r; ++n2) m += values_[offset({n1, n2})];
  }
  return m;
}

ProbabilityGrid ProbabilityGrid::cropped(int radius) const {
  if (radius < 0) throw std::invalid_argument("ProbabilityGrid::cropped: negative radius");
  ProbabilityGrid out(radius);
  for (int n1 = -radius; n1 <= radius; ++n1) {
    for (int n2 = -radius; n2 <= radius; ++n2) out[{n1, n2}] = at({n1, n2});
  }
  return out;
}

Site ProbabilityGrid::site_of(std::size_t i) const {
  const auto s = static_cast<std::size_t>(side());
  return {static_cast<int>(i / s) - radius_, static_cast<int>(i % s) - radius_};
}

// ---------------------------------------------------------------------------
// Coin

CoinOperator grover_coin() { return grover_coin_of_dimension<kNumChiralities>(); }

std::array<CoinOperator, kNumChiralities> shift_partition(const CoinOperator& coin) {
  std::array<CoinOperator, kNumChiralities> parts;
  for (int x = 0; x < kNumChiralities; ++x) {
    parts[static_cast<std::size_t>(x)].setZero();
    parts[static_cast<std::size_t>(x)].row(x) = coin.row(x);
  }
  return parts;
}

double unitarity_defect(const CoinOperator& coin) {
  const CoinOperator d = coin.adjoint() * coin - CoinOperator::Identity();
  return d.cwiseAbs().maxCoeff();
}

// ---------------------------------------------------------------------------
// LatticeState

namespace {

constexpr int kL = index_of(Chirality::L);
constexpr int kR = index_of(Chirality::R);
constexpr int kO = index_of(Chirality::O);
constexpr int kD = index_of(Chirality::D);
constexpr int kU = index_of(Chirality::U);

// Frame velocity of each chirality: the opposite of its hop.
constexpr std::array<std::array<int, 2>, kNumChiralities> kFrame = {{{1, 0}, {-1, 0}, {0, 0}, {0, 1}, {0, -1}}};

#if defined(__GNUC__) && !defined(__clang__) && defined(__x86_64__) && defined(__ELF__)
#define QWALK5_ROW_KERNEL __attribute__((target_clones("avx512f", "avx2", "default")))
#else
#define QWALK5_ROW_KERNEL
#endif

// Row kernels take the five chirality rows of one physical row, each
// pointing at n2 = 0, and work on interleaved (re, im) doubles. Every output
// element is computed by the same fixed expression whatever the vector
// width, and the mass reduction uses a fixed set of eight lanes, so all
// variants agree to the last bit.
using RowPointers = std::array<Complex*, kNumChiralities>;

double* as_doubles(Complex* c) { return reinterpret_cast<double*>(c); }

QWALK5_ROW_KERNEL
double row_mass(const double* l, const double* r, const double* o, const double* d, const double* u, int span) {
  const std::ptrdiff_t begin = -2 * std::ptrdiff_t{span};
  const std::ptrdiff_t len = 4 * std::ptrdiff_t{span} + 2;
  l += begin;
  r += begin;
  o += begin;
  d += begin;
  u += begin;
  double acc[8] = {};
  std::ptrdiff_t k = 0;
  for (; k + 8 <= len; k += 8) {
    for (int j = 0; j < 8; ++j) {
      const std::ptrdiff_t i = k + j;
      acc[j] += (((l[i] * l[i] + r[i] * r[i]) + o[i] * o[i]) + d[i] * d[i]) + u[i] * u[i];
    }
  }
  for (int j = 0; k + j < len; ++j) {
    const std::ptrdiff_t i = k + j;
    acc[j] += (((l[i] * l[i] + r[i] * r[i]) + o[i] * o[i]) + d[i] * d[i]) + u[i] * u[i];
  }
  return ((acc[0] + acc[2]) + (acc[4] + acc[6])) + ((acc[1] + acc[3]) + (acc[5] + acc[7]));
}

double row_mass(const RowPointers& p, int span) {
  return row_mass(as_doubles(p[0]), as_doubles(p[1]), as_doubles(p[2]), as_doubles(p[3]), as_doubles(p[4]), span);
}

// Grover coin in place: psi_x <- w * sum_y psi_y - psi_x.
QWALK5_ROW_KERNEL
void grover_row(double* __restrict l, double* __restrict r, double* __restrict o, double* __restrict d,
                double* __restrict u, int span, double w) {
  const std::ptrdiff_t begin = -2 * std::ptrdiff_t{span};
  const std::ptrdiff_t end = 2 * std::ptrdiff_t{span} + 2;
  for (std::ptrdiff_t i = begin; i < end; ++i) {
    const double ws = w * ((((l[i] + r[i]) + o[i]) + d[i]) + u[i]);
    l[i] = ws - l[i];
    r[i] = ws - r[i];
    o[i] = ws - o[i];
    d[i] = ws - d[i];
    u[i] = ws - u[i];
  }
}

// General coin in place: psi <- C psi at every site of the row.
void coin_row(const CoinOperator& coin, const RowPointers& p, int span) {
  for (int n2 = -span; n2 <= span; ++n2) {
    std::array<Complex, kNumChiralities> in{};
    for (int y = 0; y < kNumChiralities; ++y) in[static_cast<std::size_t>(y)] = p[static_cast<std::size_t>(y)][n2];
    for (int x = 0; x < kNumChiralities; ++x) {
      double re = 0.0;
      double im = 0.0;
      for (int y = 0; y < kNumChiralities; ++y) {
        const Complex a = coin(x, y);
        const Complex b = in[static_cast<std::size_t>(y)];
        re += a.real() * b.real() - a.imag() * b.imag();
        im += a.real() * b.imag() + a.imag() * b.real();
      }
      p[static_cast<std::size_t>(x)][n2] = Complex(re, im);
    }
  }
}

}  // namespace

LatticeState::LatticeState(int radius, int time)
    : radius_(radius),
      time_(time),
      planes_(static_cast<std::size_t>(kNumChiralities * width() * width()), Complex(0.0, 0.0)) {}

Complex* LatticeState::row(int x, int n1, int tau) {
  const auto& v = kFrame[static_cast<std::size_t>(x)];
  // Plane x covers frame coordinates a_i in [-R + R v_i, R + R v_i].
  const std::ptrdiff_t a1 = n1 + std::ptrdiff_t{tau} * v[0];
  const std::ptrdiff_t lo1 = -radius_ + std::ptrdiff_t{radius_} * v[0];
  const std::ptrdiff_t lo2 = -radius_ + std::ptrdiff_t{radius_} * v[1];
  return planes_.data() + x * width() * width() + (a1 - lo1) * width() + (std::ptrdiff_t{tau} * v[1] - lo2);
}

Spinor LatticeState::at(Site s) const {
  Spinor v = Spinor::Zero();
  if (!contains(s) || std::abs(s.n1) + std::abs(s.n2) > time_) return v;
  for (int x = 0; x < kNumChiralities; ++x) v(x) = row(x, s.n1, time_)[s.n2];
  return v;
}

double LatticeState::total_probability() const {
  double m = 0.0;
  for (int n1 = -time_; n1 <= time_; ++n1) {
    RowPointers p{};
    for (int x = 0; x < kNumChiralities; ++x) {
      p[static_cast<std::size_t>(x)] = const_cast<Complex*>(row(x, n1, time_));
    }
    m += row_mass(p, time_ - std::abs(n1));
  }
  return m;
}

LatticeState LatticeState::widened(int radius) const {
  LatticeState out(std::max(radius, radius_), time_);
  for (int x = 0; x < kNumChiralities; ++x) {
    for (int n1 = -time_; n1 <= time_; ++n1) {
      const int span = time_ - std::abs(n1);
      const Complex* src = row(x, n1, time_);
      std::copy(src - span, src + span + 1, out.row(x, n1, time_) - span);
    }
  }
  return out;
}

LatticeState initial_state(const Spinor& amplitudes, int radius) {
  if (radius < 0) throw std::invalid_argument("initial_state: negative radius");
  const double norm2 = amplitudes.squaredNorm();
  if (!(std::abs(norm2 - 1.0) <= kInitialNormTolerance)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "initial spinor has squared norm " << norm2 << ", expected 1";
    throw NormError(msg.str());
  }
  LatticeState state(radius, 0);
  for (int x = 0; x < kNumChiralities; ++x) state.row(x, 0, 0)[0] = amplitudes(x);
  return state;
}

// ---------------------------------------------------------------------------
// Evolution

namespace {

bool is_grover(const CoinOperator& coin) { return coin == grover_coin(); }

}  // namespace

Propagator::Propagator(const LatticeState& start, const CoinOperator& coin, int capacity)
    : coin_(coin), grover_(is_grover(coin)), state_(start) {
  if (capacity < 0) throw std::invalid_argument("Propagator: negative capacity");
  reserve(start.time() + capacity);
}

void Propagator::reserve(int radius) {
  if (radius > state_.radius_) state_ = state_.widened(radius);
}

void Propagator::step() { advance(1); }

// A step applies the coin at every site of the cone |m| <= tau; advancing
// the frames by one then performs the shift. Row r at level tau + 1 only
// needs level tau finished on rows r - 1, r, r + 1, and every stored element
// is touched once per level, so levels can be interleaved as a wavefront:
// at tick r0, level j handles row r0 - j. Row masses are summed in row
// order.
std::vector<double> Propagator::advance(int steps) {
  if (steps < 0) throw std::invalid_argument("Propagator::advance: negative step count");
  std::vector<double> masses(static_cast<std::size_t>(steps));
  const double w = coin_(0, 1).real();
  const auto apply = [&](int r, int tau) {
    RowPointers p{};
    for (int x = 0; x < kNumChiralities; ++x) p[static_cast<std::size_t>(x)] = state_.row(x, r, tau);
    const int span = tau - std::abs(r);
    if (grover_) {
      grover_row(as_doubles(p[0]), as_doubles(p[1]), as_doubles(p[2]), as_doubles(p[3]), as_doubles(p[4]), span, w);
    } else {
      coin_row(coin_, p, span);
    }
    return row_mass(p, span);
  };

  int done = 0;
  while (done < steps) {
    const int t = state_.time_;
    const int depth = std::min(kSweepDepth, steps - done);
    if (t + depth > state_.radius_) reserve(std::max(t + depth, 2 * state_.radius_));
    double* level = masses.data() + done;
    for (int j = 0; j < depth; ++j) level[j] = 0.0;
    for (int r0 = -t; r0 <= t + 2 * (depth - 1); ++r0) {
      for (int j = 0; j < depth; ++j) {
        const int r = r0 - j;
        const int tau = t + j;
        if (std::abs(r) <= tau) level[j] += apply(r, tau);
      }
    }
    state_.time_ = t + depth;
    done += depth;
  }
  return masses;
}

LatticeState evolve_step(const LatticeState& state, const CoinOperator& coin) {
  Propagator prop(state, coin, 1);
  prop.step();
  return prop.state();
}

LatticeState evolve_step(const LatticeState& state) { return evolve_step(state, grover_coin()); }

LatticeState evolve(const LatticeState& state, int steps, const CoinOperator& coin) {
  if (steps < 0) throw std::invalid_argument("evolve: negative step count");
  Propagator prop(state, coin, steps);
  prop.advance(steps);
  return prop.state();
}

LatticeState evolve(const LatticeState& state, int steps) {
  return evolve(state, steps, grover_coin());
}

ProbabilityGrid probability_grid(const LatticeState& state) {
  ProbabilityGrid grid(state.radius());
  for (int n1 = -state.radius(); n1 <= state.radius(); ++n1) {
    for (int n2 = -state.radius(); n2 <= state.radius(); ++n2) {
      grid[{n1, n2}] = state.at({n1, n2}).squaredNorm();
    }
  }
  return grid;
}

}  // namespace qwalk5
