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

#include <gtest/gtest.h>

#include <cmath>
#include <random>

namespace cpe {
namespace {

TEST(Xoshiro256Test, DeterministicAndDistinctSeeds) {
  Xoshiro256 a(5), b(5), c(6);
  for (int i = 0; i < 10; ++i) {
    const auto x = a();
    EXPECT_EQ(x, b());
    EXPECT_NE(x, c());
  }
}

TEST(Xoshiro256Test, WorksWithStandardDistributions) {
  Xoshiro256 rng(11);
  std::uniform_int_distribution<int> dist(1, 6);
  for (int i = 0; i < 100; ++i) {
    const int v = dist(rng);
    EXPECT_GE(v, 1);
    EXPECT_LE(v, 6);
  }
}

TEST(Xoshiro256Test, NormalMoments) {
  Xoshiro256 rng(3);
  const int n = 200000;
  double sum = 0.0, sq = 0.0;
  for (int i = 0; i < n; ++i) {
    const double z = rng.Normal();
    sum += z;
    sq += z * z;
  }
  EXPECT_NEAR(sum / n, 0.0, 0.01);
  EXPECT_NEAR(sq / n, 1.0, 0.015);
}

TEST(KeyedNormalTest, PureFunctionOfKey) {
  EXPECT_EQ(KeyedNormal(1, 2, 3, 4), KeyedNormal(1, 2, 3, 4));
  EXPECT_NE(KeyedNormal(1, 2, 3, 4), KeyedNormal(1, 2, 3, 5));
  double z0, z1;
  KeyedNormalPair(1, 2, 3, 2, z0, z1);
  EXPECT_EQ(z0, KeyedNormal(1, 2, 3, 4));
  EXPECT_EQ(z1, KeyedNormal(1, 2, 3, 5));
}

TEST(KeyedNormalTest, Moments) {
  const int n = 100000;
  double sum = 0.0, sq = 0.0;
  for (int i = 0; i < n; ++i) {
    const double z = KeyedNormal(9, static_cast<std::uint64_t>(i), 0, i & 1);
    sum += z;
    sq += z * z;
  }
  EXPECT_NEAR(sum / n, 0.0, 0.015);
  EXPECT_NEAR(sq / n, 1.0, 0.02);
}

TEST(DeriveSeedTest, OrderMatters) {
  EXPECT_NE(DeriveSeed(1, 2), DeriveSeed(2, 1));
  EXPECT_EQ(DeriveSeed(1, 2, 3), DeriveSeed(1, 2, 3));
}

}  // namespace
}  // namespace cpe
