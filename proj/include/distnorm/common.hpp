/*
 * Copyright 2026 The distnorm Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef DISTNORM_COMMON_HPP
#define DISTNORM_COMMON_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace distnorm {

using cplx = std::complex<double>;

enum class ErrorCode {
  Validation,         // an invariant of a domain type is violated
  DimensionMismatch,  // operands live on different spaces
  Unsupported,        // input outside the supported family (e.g. composite MUB)
  CapExceeded,        // configured dimension cap would be exceeded
  Parse,              // malformed file / JSON
  Argument,           // bad scalar argument (sample count, d < 2, ...)
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

namespace tol {
inline constexpr double hermitian = 1e-10;   // relative to max |entry|
inline constexpr double unit_norm = 1e-12;
inline constexpr double psd = 1e-9;          // smallest admissible eigenvalue is -psd
inline constexpr double completeness = 1e-9;
inline constexpr double density_trace = 1e-9;
inline constexpr double weight_sum = 1e-12;
inline constexpr double unitary = 1e-10;
inline constexpr double floor = 1e-12;       // no audit tolerance may go below this
}  // namespace tol

/// Largest Hilbert-space dimension any dense operator may take.
inline constexpr int kDimensionCap = 4096;

/// Seedable, splittable pseudorandom stream.
///
/// A stream is identified by its 64-bit key. `split(i)` derives the key of an
/// independent child stream, so Monte-Carlo loops can hand one child to each
/// chunk of work and stay bit-reproducible whatever the thread count.
class Rng {
 public:
  explicit Rng(std::uint64_t seed = 0);

  std::uint64_t key() const { return key_; }
  Rng split(std::uint64_t stream) const;

  double normal() { return normal_(engine_); }
  double uniform() { return uniform_(engine_); }
  /// Uniform integer in [lo, hi].
  int uniform_int(int lo, int hi);

  std::mt19937_64& engine() { return engine_; }

 private:
  std::uint64_t key_;
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

std::uint64_t splitmix64(std::uint64_t x);

/// Worker count: DISTNORM_THREADS if set and positive, otherwise hardware
/// concurrency.
unsigned worker_count();

/// Runs body(i) for i in [0, n) on up to worker_count() threads. Iterations
/// must write to disjoint state.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

/// Mean of a scalar Monte-Carlo quantity with its standard error.
struct McEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
};

/// Sample count per RNG chunk in Monte-Carlo loops.
inline constexpr std::uint64_t kMcChunk = 2048;

/// Accumulates K simultaneous Monte-Carlo quantities. The sampler is called
/// once per sample with the chunk's RNG stream; chunk c uses rng.split(c) and
/// chunks are reduced in index order so the result does not depend on threads.
template <std::size_t K, class Sampler>
std::array<McEstimate, K> mc_accumulate(std::uint64_t samples, const Rng& rng, Sampler&& sampler) {
  const std::uint64_t chunks = (samples + kMcChunk - 1) / kMcChunk;
  std::vector<std::array<double, 2 * K>> partial(chunks);
  parallel_for(chunks, [&](std::size_t c) {
    Rng local = rng.split(c);
    std::array<double, 2 * K> acc{};
    const std::uint64_t begin = c * kMcChunk;
    const std::uint64_t end = std::min<std::uint64_t>(samples, begin + kMcChunk);
    for (std::uint64_t s = begin; s < end; ++s) {
      const std::array<double, K> v = sampler(local);
      for (std::size_t k = 0; k < K; ++k) {
        acc[k] += v[k];
        acc[K + k] += v[k] * v[k];
      }
    }
    partial[c] = acc;
  });
  std::array<double, 2 * K> total{};
  for (const auto& p : partial)
    for (std::size_t k = 0; k < 2 * K; ++k) total[k] += p[k];

  std::array<McEstimate, K> out{};
  const double n = static_cast<double>(samples);
  for (std::size_t k = 0; k < K; ++k) {
    const double mean = total[k] / n;
    double var = samples > 1 ? (total[K + k] - n * mean * mean) / (n - 1.0) : 0.0;
    if (var < 0.0) var = 0.0;
    out[k] = {mean, std::sqrt(var / n), samples, rng.key()};
  }
  return out;
}

/// Neumaier compensated sum.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x))
      comp_ += (sum_ - t) + x;
    else
      comp_ += (x - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

}  // namespace distnorm

#endif  // DISTNORM_COMMON_HPP
