// Copyright 2026 The qconc Authors
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

#pragma once

#include <cstdint>
#include <optional>

namespace qconc {

/// Counter-based random stream.
///
/// Output k of a stream is a pure function of (key, k), so substreams derived
/// with substream(i) can be consumed in any order or on any thread without
/// changing results. The mixing function is the splitmix64 finalizer applied
/// to the keyed counter. Gaussians use Box-Muller so results do not depend on
/// the standard library's distribution implementations.
class SeededStream {
 public:
  explicit SeededStream(std::uint64_t seed) : key_(mix(seed ^ 0x6a09e667f3bcc909ULL)) {}

  /// Independent stream keyed by (this stream's key, index).
  SeededStream substream(std::uint64_t index) const {
    SeededStream s(0);
    s.key_ = mix(key_ ^ mix(index + 0x9e3779b97f4a7c15ULL));
    return s;
  }

  std::uint64_t next_u64() { return mix(key_ + 0x9e3779b97f4a7c15ULL * ++counter_); }

  /// Uniform in [0, 1) with 53 bits of precision.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Uniform in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform integer in [0, bound) by rejection (bound > 0).
  std::uint64_t below(std::uint64_t bound);

  double normal();
  double normal(double mean, double stddev) { return mean + stddev * normal(); }

  std::uint64_t counter() const { return counter_; }

 private:
  static constexpr std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  std::optional<double> spare_normal_;
};

}  // namespace qconc
