// Copyright 2026 The Authors.
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

#ifndef GCE_RNG_HPP_
#define GCE_RNG_HPP_

#include <cstddef>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace gce {

// Seeded random source whose output sequence is identical across standard
// library implementations. std::uniform_int_distribution and std::shuffle
// are implementation-defined, so the derived draws are written out here.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Uniform integer in [0, n). Requires n > 0.
  std::size_t uniform_index(std::size_t n);

  // Uniform integer in [lo, hi].
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);

  // Uniform double in [0, 1) with 53 random bits.
  double uniform01();

  bool coin() { return (next() >> 63) != 0; }

  template <typename T>
  void shuffle(std::vector<T>& values) {
    for (std::size_t i = values.size(); i > 1; --i) {
      std::swap(values[i - 1], values[uniform_index(i)]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

// splitmix64 finalizer over (seed, stream); used to give independent streams
// to clusters, folds and features.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

}  // namespace gce

#endif  // GCE_RNG_HPP_
