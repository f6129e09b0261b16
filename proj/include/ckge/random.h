// Copyright 2026 The ckge Authors. All Rights Reserved.
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

#ifndef CKGE_RANDOM_H_
#define CKGE_RANDOM_H_

#include <cstddef>
#include <cstdint>
#include <limits>

namespace ckge {

// SplitMix64. Cheap to seed, so trainers derive one stream per
// (seed, step, example) and stay reproducible independent of how work is
// split across workers.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed) : state_(seed) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1) with 53 random bits.
  double Uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  // Uniform integer in [0, bound). Lemire's multiply-shift; the bias is
  // below 2^-40 for any bound this code uses.
  std::size_t Below(std::size_t bound) {
    return static_cast<std::size_t>(
        (static_cast<unsigned __int128>((*this)()) * bound) >> 64);
  }

 private:
  std::uint64_t state_;
};

// Mixes several words into one seed.
inline std::uint64_t DeriveSeed(std::uint64_t a, std::uint64_t b,
                                std::uint64_t c = 0) {
  Rng rng(a);
  std::uint64_t s = rng() ^ (b * 0xD1B54A32D192ED03ULL);
  Rng mix(s);
  return mix() ^ (c * 0x9E3779B97F4A7C15ULL) ^ mix();
}

}  // namespace ckge

#endif  // CKGE_RANDOM_H_
