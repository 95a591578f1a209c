// Copyright 2026 The sea-oco Authors.
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

#ifndef SEA_RNG_H_
#define SEA_RNG_H_

#include <cstdint>
#include <limits>

namespace sea {

// SplitMix64 finalizer. Used both as a hash for key derivation and as the
// step function of the counter-based generator below.
constexpr std::uint64_t Mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Counter-based stream. Every draw is Mix64(key + counter), so a stream is
// fully determined by its key and the number of values consumed.
//
// Splitting rule: a trial keyed by (seed, T) gets
//   trial_key = Mix64(Mix64(seed) ^ Mix64(T + 0x5851f42d4c957f2d)),
// and round t of that trial draws from the stream keyed by
//   Mix64(trial_key ^ Mix64(t)).
// Round streams therefore never depend on how many values earlier rounds
// consumed or on the order in which trials are scheduled.
class CounterRng {
 public:
  using result_type = std::uint64_t;

  explicit CounterRng(std::uint64_t key) : key_(key) {}

  static CounterRng ForTrial(std::uint64_t seed, std::uint64_t horizon) {
    return CounterRng(TrialKey(seed, horizon));
  }
  static CounterRng ForRound(std::uint64_t trial_key, std::uint64_t round) {
    return CounterRng(Mix64(trial_key ^ Mix64(round)));
  }
  static std::uint64_t TrialKey(std::uint64_t seed, std::uint64_t horizon) {
    return Mix64(Mix64(seed) ^ Mix64(horizon + 0x5851f42d4c957f2dULL));
  }

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }
  result_type operator()() { return Mix64(key_ + 0x632be59bd9b4e019ULL * ++counter_); }

  // Uniform double in [0, 1) with 53 random bits.
  double Uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  // Uniform integer in [0, n). Lemire's multiply-shift with rejection.
  std::uint64_t Below(std::uint64_t n);

  // Standard normal via Marsaglia's polar method.
  double Normal();

  // +1 or -1 with equal probability.
  int Sign() { return ((*this)() >> 63) ? 1 : -1; }

  std::uint64_t key() const { return key_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace sea

#endif  // SEA_RNG_H_
