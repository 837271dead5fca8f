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
#include <stdexcept>
#include <string>

namespace lwca {

// Absolute tolerance for every inequality check in the library. Generators
// emit values on a 1/64 grid, so sums stay exact and the tolerance only has
// to absorb genuine floating-point noise.
inline constexpr double kTol = 1e-9;

// Threshold above which a truthfulness deviation counts as a real gain.
inline constexpr double kGainTol = 1e-6;

// Hard cap on the item universe: subset enumeration must stay feasible.
inline constexpr int kMaxItems = 24;

// Cap for exhaustive set-function class checks (enumerates 4^m pairs).
inline constexpr int kMaxClassCheckItems = 10;

// Cap on assignment maps enumerated by the brute-force welfare oracle.
inline constexpr std::int64_t kMaxOptMaps = 10'000'000;

// splitmix64 finalizer; used to derive independent seed streams from a base
// seed and a stream tag without correlated low bits.
inline std::uint64_t mix_seed(std::uint64_t base, std::uint64_t tag) {
  std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (tag + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline void require(bool cond, const std::string& msg) {
  if (!cond) throw std::invalid_argument(msg);
}

}  // namespace lwca
