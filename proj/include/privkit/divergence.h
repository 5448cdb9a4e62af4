// Copyright 2026 The Privkit Authors. All rights reserved.
// Use of this source code is governed by an Apache-style license that can be
// found in the LICENSE file.

#ifndef PRIVKIT_DIVERGENCE_H_
#define PRIVKIT_DIVERGENCE_H_

#include <functional>
#include <string>

#include "privkit/distribution.h"

namespace privkit {

// Total variation distance, (1/2) sum_i |p_i - q_i|. Always in [0, 1].
double TvDistance(const FiniteDistribution& p, const FiniteDistribution& q);

// KL divergence sum_i p_i log(p_i / q_i), +infinity when p charges an outcome
// q does not. Natural log.
double KlDivergence(const FiniteDistribution& p, const FiniteDistribution& q);

// Smallest achievable sum of type-I and type-II error probabilities over all
// tests distinguishing m0 from m1: 1 - TvDistance(m0, m1).
double LeCamError(const FiniteDistribution& m0, const FiniteDistribution& m1);

// An f-divergence D_f(P||Q) = sum_q>0 q f(p/q) + P{q = 0} * lim f(t)/t.
// The generator must be convex with f(1) = 0; both are checked on a fixed
// grid at construction. The total-variation and KL tags dispatch to the exact
// closed forms, so the TV-tagged divergence equals TvDistance identically.
class FDivergenceSpec {
 public:
  enum class Tag { kTotalVariation, kKullbackLeibler, kCustom };

  static FDivergenceSpec TotalVariation();
  static FDivergenceSpec KullbackLeibler();
  // `slope_at_infinity` is lim_{t->inf} f(t)/t; pass +infinity when the
  // generator grows superlinearly. `generator` must be finite on [0, inf).
  static FDivergenceSpec Custom(std::string name,
                                std::function<double(double)> generator,
                                double slope_at_infinity);

  Tag tag() const { return tag_; }
  const std::string& name() const { return name_; }
  double Generator(double t) const { return generator_(t); }
  double slope_at_infinity() const { return slope_at_infinity_; }

 private:
  FDivergenceSpec(Tag tag, std::string name,
                  std::function<double(double)> generator,
                  double slope_at_infinity);

  Tag tag_;
  std::string name_;
  std::function<double(double)> generator_;
  double slope_at_infinity_;
};

double FDivergence(const FDivergenceSpec& spec, const FiniteDistribution& p,
                   const FiniteDistribution& q);

}  // namespace privkit

#endif  // PRIVKIT_DIVERGENCE_H_
