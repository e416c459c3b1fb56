// Copyright 2026 The vscan Authors
// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <array>
#include <cmath>
#include <random>

#include "vscan/rng.hpp"

using namespace vscan;

TEST_CASE("derived streams are pure") {
  RngStream a = derive_stream(42, "walls", 3);
  RngStream b = derive_stream(42, "walls", 3);
  for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());
}

TEST_CASE("tags and indices separate streams") {
  std::mt19937_64 seeds(99);
  int tag_collisions = 0, index_collisions = 0;
  for (int i = 0; i < 1000; ++i) {
    const std::uint64_t s = seeds();
    const std::uint64_t walls = derive_stream(s, "walls", 0).next_u64();
    if (walls == derive_stream(s, "furniture", 0).next_u64()) ++tag_collisions;
    if (walls == derive_stream(s, "walls", 1).next_u64()) ++index_collisions;
  }
  CHECK(tag_collisions <= 1);
  CHECK(index_collisions <= 1);
}

TEST_CASE("uniform_int covers the closed range evenly") {
  RngStream rng(1);
  std::array<int, 6> counts{};
  const int n = 60000;
  for (int i = 0; i < n; ++i) {
    const auto v = rng.uniform_int(3, 8);
    REQUIRE(v >= 3);
    REQUIRE(v <= 8);
    ++counts[static_cast<std::size_t>(v - 3)];
  }
  // Chi-square with 5 degrees of freedom; 20.5 is the 0.999 quantile.
  double chi2 = 0;
  for (int c : counts) chi2 += (c - n / 6.0) * (c - n / 6.0) / (n / 6.0);
  CHECK(chi2 < 20.5);
  CHECK(rng.uniform_int(4, 4) == 4);
}

TEST_CASE("next_double stays in [0, 1) and gaussians have unit spread") {
  RngStream rng(7);
  double sum = 0, sum2 = 0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double u = rng.next_double();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
    const double g = rng.next_gaussian();
    sum += g;
    sum2 += g * g;
  }
  const double mean = sum / n;
  const double sd = std::sqrt(sum2 / n - mean * mean);
  CHECK(std::abs(mean) < 4.0 / std::sqrt(n));
  CHECK(std::abs(sd - 1.0) < 0.01);
}

TEST_CASE("gaussian draws consume two outputs each") {
  RngStream a(5), b(5);
  a.next_gaussian();
  b.next_u64();
  b.next_u64();
  CHECK(a.state() == b.state());
}

TEST_CASE("ray stream seeds differ per vector") {
  CHECK(ray_stream_seed(1, 0, 1) != ray_stream_seed(1, 1, 0));
  CHECK(ray_stream_seed(1, 2, 3) == ray_stream_seed(1, 2, 3));
  CHECK(ray_stream_seed(1, 2, 3) != ray_stream_seed(2, 2, 3));
}
