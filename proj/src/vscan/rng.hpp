// Copyright 2026 The vscan Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string_view>

namespace vscan {

// SplitMix64 finalizer: a bijective 64-bit mix.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// FNV-1a over the bytes of `text`.
constexpr std::uint64_t hash_tag(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : text) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

// Counter-free SplitMix64 sequence. Distributions are implemented here rather
// than through <random> so that streams are identical across standard
// libraries.
class RngStream {
 public:
  explicit constexpr RngStream(std::uint64_t seed) : state_(seed) {}

  constexpr std::uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ULL;
    return mix64(state_);
  }

  // Uniform in [0, 1) with 53 random bits.
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform integer in the closed range [lo, hi] (unbiased, rejection based).
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);

  bool bernoulli(double p) { return next_double() < p; }

  // Standard normal via Box-Muller (one value per call, the pair partner is
  // discarded so each call consumes exactly two draws).
  double next_gaussian();

  std::uint64_t state() const { return state_; }

 private:
  std::uint64_t state_;
};

// Stateless derivation of a purpose-tagged stream from a master seed.
inline RngStream derive_stream(std::uint64_t master, std::string_view tag, std::uint64_t index) {
  const std::uint64_t a = mix64(master ^ mix64(hash_tag(tag)));
  return RngStream(mix64(a + mix64(index + 0x632be59bd9b4e019ULL)));
}

// Seed of the stream used for scan ray (ring, azimuth).
constexpr std::uint64_t ray_stream_seed(std::uint64_t master, std::uint64_t ring,
                                        std::uint64_t azimuth) {
  return mix64(mix64(master + 0x9e3779b97f4a7c15ULL) ^ mix64((ring << 32) ^ azimuth));
}

}  // namespace vscan
