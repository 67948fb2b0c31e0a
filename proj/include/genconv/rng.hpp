#pragma once

#include <array>
#include <cstdint>

namespace genconv {

/// Philox4x32-10 counter-based generator. The 64-bit seed is the key, the
/// counter is (block index, stream id). Each block yields four 32-bit words;
/// uniforms consume two words each.
class Rng {
 public:
  explicit Rng(std::uint64_t seed = 0, std::uint64_t stream_id = 0);

  using Block = std::array<std::uint32_t, 4>;
  static Block philox(Block counter, std::array<std::uint32_t, 2> key);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_; }

  std::uint32_t next_u32();
  std::uint64_t next_u64();
  /// Uniform on the open interval (0, 1) with 53-bit resolution.
  double uniform();
  double exponential();
  double normal();
  /// Gamma(shape, 1) by Marsaglia-Tsang squeeze.
  double gamma(double shape);
  double beta(double a, double b);

 private:
  void refill();

  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t block_ = 0;
  Block buf_{};
  int pos_ = 4;
};

}  // namespace genconv
