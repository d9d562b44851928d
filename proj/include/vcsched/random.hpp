// Copyright 2026 The vcsched Authors
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

#ifndef VCSCHED_RANDOM_HPP_
#define VCSCHED_RANDOM_HPP_

#include <cstdint>
#include <random>
#include <string_view>

namespace vcsched {

// Identifier of the generator behind every random draw; recorded in outputs.
inline constexpr const char* kRngAlgorithm = "mt19937_64";

// Seed mixing only; draws come from std::mt19937_64.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

// FNV-1a, used to derive per-instance seeds from instance ids.
inline std::uint64_t hash_id(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

namespace detail {

// Uniform on [0, 1) from the top 53 bits of one draw.
inline double unit_draw(std::mt19937_64& g) {
  return static_cast<double>(g() >> 11) * 0x1.0p-53;
}

}  // namespace detail

}  // namespace vcsched

#endif  // VCSCHED_RANDOM_HPP_
