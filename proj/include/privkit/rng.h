// Copyright 2026 The Privkit Authors. All rights reserved.
// Use of this source code is governed by an Apache-style license that can be
// found in the LICENSE file.

#ifndef PRIVKIT_RNG_H_
#define PRIVKIT_RNG_H_

#include <cstdint>

namespace privkit {

// A counter-based pseudo-random stream addressed by (master_seed,
// stream_index). Two streams with the same address produce bit-identical
// output regardless of construction order or thread, which is what makes
// every simulation in this library replayable from a single seed. Distinct
// stream indexes give statistically independent streams.
//
// Not cryptographic. Not thread-safe; use one stream per unit of work.
class RngStream {
 public:
  RngStream(std::uint64_t master_seed, std::uint64_t stream_index);

  std::uint64_t NextUint64();

  // Uniform on the open interval (0, 1); never returns 0 or 1, so it is safe
  // to feed through logs.
  double NextUniform();

  // Standard normal via the Box-Muller transform; consumes two uniforms.
  double NextGaussian();

  // Centered Laplace with the given scale (density exp(-|w|/scale)/(2 scale)),
  // by inverse CDF from a single uniform. scale = 0 yields exactly 0.
  double NextLaplace(double scale);

 private:
  std::uint64_t state_;
};

}  // namespace privkit

#endif  // PRIVKIT_RNG_H_
