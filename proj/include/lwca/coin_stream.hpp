// Copyright 2026 The Authors.
//
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

#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "lwca/common.hpp"

namespace lwca {

// Seeded deterministic randomness source. All draws are derived from the
// raw mt19937_64 output stream (which the standard pins down exactly), so
// the same seed reproduces the same coins on every platform. The library
// never uses std::*_distribution, whose output is implementation-defined.
class CoinStream {
 public:
  explicit CoinStream(std::uint64_t seed) : seed_(seed), rng_(seed) {}

  std::uint64_t seed() const { return seed_; }

  std::uint64_t next_u64() { return rng_(); }

  // Uniform in [0, 1) with 53 random bits.
  double next_unit() {
    return static_cast<double>(rng_() >> 11) * 0x1.0p-53;
  }

  bool flip(double q) { return next_unit() < q; }

  // Uniform in [0, n), unbiased via rejection.
  std::uint32_t below(std::uint32_t n) {
    require(n > 0, "CoinStream: empty range");
    std::uint64_t limit = ~0ULL - (~0ULL % n);
    std::uint64_t r;
    do {
      r = rng_();
    } while (r >= limit);
    return static_cast<std::uint32_t>(r % n);
  }

  // Value on the 1/64 grid, uniform over [lo, hi] inclusive of endpoints.
  // lo and hi must themselves be grid points.
  double grid_uniform(double lo, double hi) {
    auto lo64 = static_cast<std::int64_t>(lo * 64.0);
    auto hi64 = static_cast<std::int64_t>(hi * 64.0);
    require(lo64 <= hi64, "CoinStream: bad grid range");
    std::uint32_t span = static_cast<std::uint32_t>(hi64 - lo64) + 1;
    return static_cast<double>(lo64 + below(span)) / 64.0;
  }

  // In-place Fisher-Yates shuffle.
  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::size_t j = below(static_cast<std::uint32_t>(i));
      std::swap(v[i - 1], v[j]);
    }
  }

  // Independent child stream for the given tag.
  CoinStream fork(std::uint64_t tag) const {
    return CoinStream(mix_seed(seed_, tag));
  }

 private:
  std::uint64_t seed_;
  std::mt19937_64 rng_;
};

}  // namespace lwca
