// Copyright 2026 The Privkit Authors. All rights reserved.
// Use of this source code is governed by an Apache-style license that can be
// found in the LICENSE file.
//
// Randomized test fixtures: distributions and channels drawn from simple
// families with controllable privacy levels. Used by the stress sweeps and
// the self tests; deterministic given the stream.

#ifndef PRIVKIT_SYNTHETIC_H_
#define PRIVKIT_SYNTHETIC_H_

#include <cstddef>
#include <string>
#include <vector>

#include "privkit/channel.h"
#include "privkit/distribution.h"
#include "privkit/errors.h"
#include "privkit/rng.h"

namespace privkit {

// "x0", "x1", ... with the given prefix.
std::vector<std::string> IndexedLabels(const std::string& prefix, int count);

// Flat-Dirichlet random distribution: normalized independent Exp(1) weights.
// Every outcome gets strictly positive mass.
FiniteDistribution RandomDistribution(const std::vector<std::string>& outcomes,
                                      RngStream* rng);

// Channel whose rows are independent flat-Dirichlet draws. Input labels
// "x0..", output labels "y0..".
DiscreteChannel RandomChannel(int alphabet_size, int n, int output_size,
                              RngStream* rng,
                              std::size_t cap = kDefaultEnumerationCap);

// Row-wise mixture (1 - weight) * channel + weight * uniform. Shrinks every
// privacy level of the channel; weight = 1 gives the constant channel.
DiscreteChannel MixWithUniform(const DiscreteChannel& channel, double weight);

// Channel with all pairwise row density ratios bounded by e^c: each row is a
// random exponential tilt exp(+-c/4) of a shared random base row. The tilt
// contributes a factor e^{c/2} and the normalizers another e^{c/2}, so the
// tight pure-DP level is at most c (over all dataset pairs, not just
// neighbors).
DiscreteChannel RandomBoundedRatioChannel(int alphabet_size, int n,
                                          int output_size, double c,
                                          RngStream* rng,
                                          std::size_t cap = kDefaultEnumerationCap);

}  // namespace privkit

#endif  // PRIVKIT_SYNTHETIC_H_
