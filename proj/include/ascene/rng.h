/* Copyright 2026 The ascene Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#ifndef ASCENE_RNG_H_
#define ASCENE_RNG_H_

#include <cstdint>

namespace ascene {

// Deterministic 64-bit generator used everywhere the pipeline draws random
// numbers (augmentation, dataset shuffling, weight init). The algorithm is
// fixed so that a reimplementation in another language reproduces the exact
// draw sequence:
//
//   state0 = splitmix64(seed)          (0 is remapped to a fixed constant)
//   next   = xorshift64*:  x ^= x>>12; x ^= x<<25; x ^= x>>27;
//            return x * 0x2545F4914F6CDD1D
//
// uniform_double maps the top 53 bits of next() onto [0, 1).
// uniform_index uses the multiply-shift bound trick (one draw per value,
// bias below 2^-32 for any range we use).
class Rng64 {
 public:
  explicit Rng64(uint64_t seed) : state_(scramble(seed)) {}

  uint64_t next_u64() {
    uint64_t x = state_;
    x ^= x >> 12;
    x ^= x << 25;
    x ^= x >> 27;
    state_ = x;
    return x * 0x2545F4914F6CDD1DULL;
  }

  // Uniform on [0, 1), 53-bit resolution.
  double uniform_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Uniform on [lo, hi). Returns lo when the interval is degenerate.
  double uniform_real(double lo, double hi) {
    return lo + (hi - lo) * uniform_double();
  }

  // Uniform integer in [0, n). n must be > 0.
  uint64_t uniform_index(uint64_t n) {
    return static_cast<uint64_t>(
        (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
  }

  // Uniform integer in [lo, hi] inclusive.
  int64_t uniform_int(int64_t lo, int64_t hi) {
    return lo + static_cast<int64_t>(
                    uniform_index(static_cast<uint64_t>(hi - lo) + 1));
  }

  // Derives an independent stream; the supported pattern for parallel use.
  Rng64 fork(uint64_t stream) const {
    Rng64 child(0);
    child.state_ = scramble(splitmix64(state_ ^ (stream + 1)));
    return child;
  }

  uint64_t state() const { return state_; }
  void set_state(uint64_t s) { state_ = s == 0 ? kNonzeroFallback : s; }

 private:
  static constexpr uint64_t kNonzeroFallback = 0x9E3779B97F4A7C15ULL;

  static uint64_t splitmix64(uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
  }

  static uint64_t scramble(uint64_t seed) {
    uint64_t s = splitmix64(seed);
    return s == 0 ? kNonzeroFallback : s;
  }

  uint64_t state_;
};

}  // namespace ascene

#endif  // ASCENE_RNG_H_
