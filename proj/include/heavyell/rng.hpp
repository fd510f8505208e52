// Copyright 2026 The heavyell Authors
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

#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>

namespace heavyell {

// SplitMix64 finalizer. Used for seeding and for deriving sub-seeds.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Sub-seed for the counter-th child of base. Every replica loop, tree and
// population in the library draws its seed through this function, so a
// single base seed fixes the whole experiment.
constexpr std::uint64_t derive_seed(std::uint64_t base, std::uint64_t counter) noexcept {
  return mix64(base ^ mix64(counter ^ 0x6a09e667f3bcc909ULL));
}

/// Deterministic random stream addressed by (base_seed, stream_index).
///
/// The engine is xoshiro256** with its 256-bit state filled by SplitMix64
/// from a hash of the address. Two distinct addresses give statistically
/// independent sequences; the same address gives the same sequence on every
/// run and thread schedule. Construction costs a handful of multiplies, so
/// creating one stream per matrix pair or tree node is cheap.
///
/// Satisfies std::uniform_random_bit_generator.
class RngStream {
 public:
  using result_type = std::uint64_t;

  RngStream(std::uint64_t base_seed, std::uint64_t stream_index) noexcept
      : base_seed_(base_seed), stream_index_(stream_index) {
    std::uint64_t s = mix64(base_seed) ^ mix64(stream_index + 0x3c6ef372fe94f82bULL);
    for (auto& word : state_) {
      s += 0x9e3779b97f4a7c15ULL;
      word = mix64(s);
    }
  }

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()() noexcept {
    const std::uint64_t result = std::rotl(state_[1] * 5, 7) * 9;
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = std::rotl(state_[3], 45);
    return result;
  }

  // Uniform on the open interval (0, 1); never returns 0 or 1.
  double uniform() noexcept {
    return (static_cast<double>((*this)() >> 11) + 0.5) * 0x1.0p-53;
  }

  // Unit-mean exponential, strictly positive.
  double exponential() noexcept { return -std::log(uniform()); }

  // Uniform index in [0, count). count must be positive.
  std::uint64_t index(std::uint64_t count) noexcept {
    // Lemire's multiply-shift; the bias is < count / 2^64.
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>((*this)()) * count) >> 64);
  }

  // +1 or -1 with equal probability.
  double sign() noexcept { return ((*this)() >> 63) != 0 ? -1.0 : 1.0; }

  std::uint64_t base_seed() const noexcept { return base_seed_; }
  std::uint64_t stream_index() const noexcept { return stream_index_; }

 private:
  std::uint64_t base_seed_;
  std::uint64_t stream_index_;
  std::array<std::uint64_t, 4> state_{};
};

}  // namespace heavyell
