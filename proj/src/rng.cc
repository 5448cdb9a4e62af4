// Copyright 2026 The Privkit Authors. All rights reserved.
// Use of this source code is governed by an Apache-style license that can be
// found in the LICENSE file.

#include "privkit/rng.h"

#include <cmath>

namespace privkit {
namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;
constexpr double kTwoPi = 6.283185307179586476925286766559;

// SplitMix64 finalizer; full 64-bit avalanche.
std::uint64_t Mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

}  // namespace

RngStream::RngStream(std::uint64_t master_seed, std::uint64_t stream_index)
    : state_(Mix64(master_seed + kGolden) ^
             Mix64(stream_index * kGolden + 0x632BE59BD9B4E019ull)) {}

std::uint64_t RngStream::NextUint64() {
  state_ += kGolden;
  return Mix64(state_);
}

double RngStream::NextUniform() {
  // 53 random bits centered inside (0, 1): (k + 0.5) / 2^53.
  return (static_cast<double>(NextUint64() >> 11) + 0.5) * 0x1.0p-53;
}

double RngStream::NextGaussian() {
  double u1 = NextUniform();
  double u2 = NextUniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
}

double RngStream::NextLaplace(double scale) {
  double v = NextUniform() - 0.5;  // in (-1/2, 1/2)
  double magnitude = -std::log1p(-2.0 * std::fabs(v));
  return v < 0.0 ? -scale * magnitude : scale * magnitude;
}

}  // namespace privkit
