// Copyright 2026 The ndpseq Authors.
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

#ifndef NDPSEQ_RANDOM_HPP
#define NDPSEQ_RANDOM_HPP

#include <array>
#include <cstdint>
#include <limits>

namespace ndpseq {

/**
 * Philox4x32-10 counter-based generator.
 *
 * The 64-bit key is the user seed and the upper half of the 128-bit counter
 * selects an independent stream, so stream k of seed s yields the same values
 * no matter which thread consumes it or in what order streams are visited.
 */
class Philox4x32 {
 public:
  using result_type = std::uint32_t;
  using Block = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  Philox4x32(std::uint64_t seed, std::uint64_t stream);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()();

  /// One application of the 10-round bijection.
  static Block encrypt(Block counter, Key key);

 private:
  Key key_;
  std::uint64_t block_index_ = 0;
  std::uint64_t stream_;
  Block buffer_{};
  int used_ = 4;
};

/// Random variates drawn from one Philox stream.
class RandomStream {
 public:
  using result_type = std::uint64_t;

  RandomStream(std::uint64_t seed, std::uint64_t stream) : engine_(seed, stream) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
  result_type operator()() { return next_u64(); }

  std::uint64_t next_u64();

  /// Uniform on the open interval (0, 1), 53 random bits.
  double uniform();

  /// Standard normal (Marsaglia polar method).
  double normal();

  /// Exponential with rate 1.
  double exponential();

  /// Gamma(shape, rate 1). Valid for every shape > 0.
  double gamma(double shape);

  /// Logarithm of a Gamma(shape, 1) variate. Stays finite when the variate
  /// itself would underflow, which happens routinely for shape << 1.
  double log_gamma(double shape);

 private:
  double gamma_at_least_one(double shape);

  Philox4x32 engine_;
  double cached_normal_ = 0.0;
  bool has_cached_normal_ = false;
};

/// Stream identifiers at or above this value are reserved for auxiliary
/// sampling (prior draws, CLI sampling) and never collide with simulation k.
inline constexpr std::uint64_t kAuxiliaryStreamBase = std::uint64_t{1} << 63;

}  // namespace ndpseq

#endif  // NDPSEQ_RANDOM_HPP
