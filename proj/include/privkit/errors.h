// Copyright 2026 The Privkit Authors. All rights reserved.
// Use of this source code is governed by an Apache-style license that can be
// found in the LICENSE file.

#ifndef PRIVKIT_ERRORS_H_
#define PRIVKIT_ERRORS_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace privkit {

// Raised when a request would enumerate more state than the active cap allows
// (dataset spaces, product distributions, subset lattices). Kept distinct from
// std::invalid_argument so process boundaries can map it to its own exit
// status.
class ResourceCapError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Largest dataset space, product space, or row count enumerated by default.
// Callers may lower the cap per operation; raising it is not supported.
inline constexpr std::size_t kDefaultEnumerationCap = 10000;

// Returns base^exponent if it stays within `cap`, otherwise throws
// ResourceCapError naming `what`. Overflow-safe for any base/exponent.
inline std::size_t CheckedEnumerationSize(std::size_t base, int exponent,
                                          std::size_t cap,
                                          const std::string& what) {
  if (base == 0) throw std::invalid_argument(what + ": empty base set");
  std::size_t count = 1;
  for (int i = 0; i < exponent; ++i) {
    if (count > cap / base) {
      throw ResourceCapError(what + " would enumerate more than " +
                             std::to_string(cap) + " elements");
    }
    count *= base;
  }
  if (count > cap) {
    throw ResourceCapError(what + " would enumerate more than " +
                           std::to_string(cap) + " elements");
  }
  return count;
}

}  // namespace privkit

#endif  // PRIVKIT_ERRORS_H_
