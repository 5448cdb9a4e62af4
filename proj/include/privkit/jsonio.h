// Copyright 2026 The Privkit Authors. All rights reserved.
// Use of this source code is governed by an Apache-style license that can be
// found in the LICENSE file.

#ifndef PRIVKIT_JSONIO_H_
#define PRIVKIT_JSONIO_H_

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "json.hpp"

namespace privkit {

// JSON has no infinity literal; this library serializes non-finite doubles as
// the strings "inf" / "-inf" and reads them back the same way.
inline nlohmann::json JsonNumber(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

inline double NumberFromJson(const nlohmann::json& j, const std::string& what) {
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    throw std::invalid_argument(what + ": expected a number, \"inf\" or \"-inf\"");
  }
  if (!j.is_number()) {
    throw std::invalid_argument(what + ": expected a number");
  }
  return j.get<double>();
}

}  // namespace privkit

#endif  // PRIVKIT_JSONIO_H_
