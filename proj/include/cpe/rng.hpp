// Copyright 2026 The cpe Authors
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

// Reproducible random streams.
//
// Sequential streams use xoshiro256** (Blackman & Vigna) seeded through
// SplitMix64. Gaussian variates come from the Box-Muller transform applied
// to 53-bit uniforms, so streams do not depend on the standard library's
// unspecified std::normal_distribution algorithm. Keyed draws hash a tuple
// of integers with the SplitMix64 finalizer and need no generator state at
// all, which makes them independent of evaluation order.

#ifndef CPE_RNG_HPP_
#define CPE_RNG_HPP_

#include <array>
#include <cstdint>
#include <limits>

namespace cpe {

// SplitMix64 output function applied to an arbitrary 64-bit word.
constexpr std::uint64_t Mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Combines a seed with further integer keys into a new 64-bit seed.
constexpr std::uint64_t DeriveSeed(std::uint64_t seed, std::uint64_t key) {
  return Mix64(seed ^ Mix64(key + 0x632be59bd9b4e019ULL));
}

template <typename... Keys>
constexpr std::uint64_t DeriveSeed(std::uint64_t seed, std::uint64_t key,
                                   Keys... rest) {
  return DeriveSeed(DeriveSeed(seed, key), rest...);
}

// Maps the top 53 bits of a word to a double in [0, 1).
constexpr double ToUnitInterval(std::uint64_t bits) {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

class Xoshiro256 {
 public:
  using result_type = std::uint64_t;

  explicit Xoshiro256(std::uint64_t seed);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()();

  // Uniform double in [0, 1).
  double Uniform() { return ToUnitInterval((*this)()); }

  // Standard normal variate. Box-Muller produces pairs; the second value
  // is cached for the next call.
  double Normal();

 private:
  std::array<std::uint64_t, 4> s_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

// Standard normal variate for the key tuple (seed, a, b, c). Pure function.
// Coordinates 2j and 2j+1 share one Box-Muller pair (cosine and sine
// branch), so callers index the last key by coordinate.
double KeyedNormal(std::uint64_t seed, std::uint64_t a, std::uint64_t b,
                   std::uint64_t c);

// Both members of the pair shared by coordinates 2*pair and 2*pair+1:
// KeyedNormal(seed, a, b, 2*pair) == z0, KeyedNormal(seed, a, b, 2*pair+1)
// == z1.
void KeyedNormalPair(std::uint64_t seed, std::uint64_t a, std::uint64_t b,
                     std::uint64_t pair, double& z0, double& z1);

// The pair for an already derived key; KeyedNormalPair(seed, a, b, pair, ...)
// equals NormalPairForKey(DeriveSeed(seed, a, b, pair), ...).
void NormalPairForKey(std::uint64_t key, double& z0, double& z1);

}  // namespace cpe

#endif  // CPE_RNG_HPP_
