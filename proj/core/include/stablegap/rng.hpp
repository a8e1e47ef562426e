#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace stablegap {

/// Reproducible random stream keyed by (seed, stream_id).
///
/// Streams with distinct ids are seeded through std::seed_seq from all four
/// 32-bit halves of the key, so parallel workers can each own one stream and
/// the combined output depends only on the key set. A stream must not be
/// shared between threads.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream_id);

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream_id() const noexcept { return stream_id_; }

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on the open interval (0, 1); never returns an endpoint.
  double uniform_open() {
    // 53 random bits, shifted by half an ulp off zero.
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
  }

  /// Uniform integer in [0, n).
  std::uint64_t uniform_index(std::uint64_t n) {
    return std::uniform_int_distribution<std::uint64_t>(0, n - 1)(engine_);
  }

  double normal() { return normal_(engine_); }

  double exponential() { return -std::log(uniform_open()); }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace stablegap
