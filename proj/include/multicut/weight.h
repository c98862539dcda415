// Copyright 2026 The Multicut Labeling Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MULTICUT_WEIGHT_H_
#define MULTICUT_WEIGHT_H_

#include <compare>
#include <limits>
#include <string>

namespace multicut {

// A nonnegative edge/tuple weight, or the distinguished value Infinite.
// Infinite compares greater than every finite weight.
class Weight {
 public:
  constexpr Weight() = default;
  constexpr explicit Weight(double value) : value_(value) {}

  static constexpr Weight Infinite() {
    Weight w;
    w.infinite_ = true;
    return w;
  }

  constexpr bool is_infinite() const { return infinite_; }
  constexpr bool is_finite() const { return !infinite_; }

  // Numeric value; +inf for Infinite.
  constexpr double value() const {
    return infinite_ ? std::numeric_limits<double>::infinity() : value_;
  }

  constexpr bool operator==(const Weight& other) const {
    return infinite_ == other.infinite_ &&
           (infinite_ || value_ == other.value_);
  }
  constexpr std::partial_ordering operator<=>(const Weight& other) const {
    return value() <=> other.value();
  }

  // Shortest decimal text that round-trips, or "inf".
  std::string ToString() const;
  // Accepts decimal text or "inf". Throws Error(kParse) otherwise.
  static Weight Parse(const std::string& text);

 private:
  double value_ = 0.0;
  bool infinite_ = false;
};

}  // namespace multicut

#endif  // MULTICUT_WEIGHT_H_
