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

#include "cpe/rng.hpp"

#include <cmath>
#include <numbers>

namespace cpe {

namespace {

constexpr std::uint64_t Rotl(std::uint64_t x, int k) {
  return (x << k) | (x >> (64 - k));
}

// Box-Muller on two uniforms in [0, 1). u1 is shifted into (0, 1] so the
// logarithm stays finite.
inline void BoxMuller(double u1, double u2, double& z0, double& z1) {
  const double radius = std::sqrt(-2.0 * std::log(1.0 - u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  z0 = radius * std::cos(angle);
  z1 = radius * std::sin(angle);
}

}  // namespace

Xoshiro256::Xoshiro256(std::uint64_t seed) {
  std::uint64_t x = seed;
  for (auto& word : s_) {
    x += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    word = z ^ (z >> 31);
  }
}

Xoshiro256::result_type Xoshiro256::operator()() {
  const std::uint64_t result = Rotl(s_[1] * 5, 7) * 9;
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = Rotl(s_[3], 45);
  return result;
}

double Xoshiro256::Normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double u1 = Uniform();
  const double u2 = Uniform();
  double z0, z1;
  BoxMuller(u1, u2, z0, z1);
  spare_ = z1;
  has_spare_ = true;
  return z0;
}

void KeyedNormalPair(std::uint64_t seed, std::uint64_t a, std::uint64_t b,
                     std::uint64_t pair, double& z0, double& z1) {
  NormalPairForKey(DeriveSeed(seed, a, b, pair), z0, z1);
}

void NormalPairForKey(std::uint64_t key, double& z0, double& z1) {
  const double u1 = ToUnitInterval(Mix64(key));
  const double u2 = ToUnitInterval(Mix64(key ^ 0xd1b54a32d192ed03ULL));
  BoxMuller(u1, u2, z0, z1);
}

double KeyedNormal(std::uint64_t seed, std::uint64_t a, std::uint64_t b,
                   std::uint64_t c) {
  double z0, z1;
  KeyedNormalPair(seed, a, b, c >> 1, z0, z1);
  return (c & 1) ? z1 : z0;
}

}  // namespace cpe
