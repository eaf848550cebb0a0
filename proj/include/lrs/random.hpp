#pragma once

#include "lrs/types.hpp"

#include <array>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace lrs {

/// Source of uniform 64-bit words. Every sampler takes one explicitly; there is
/// no global generator.
class RandomSource {
 public:
  virtual ~RandomSource() = default;
  virtual std::uint64_t next_u64() = 0;

  /// Uniform on [0, 1) with 53-bit resolution.
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [0, bound) by rejection; bound > 0.
  std::uint64_t uniform_below(std::uint64_t bound);

  /// Standard normal deviate (Box-Muller, one value per call).
  double standard_normal();
};

/// Deterministic stream: ChaCha20 keystream keyed by SHA-256 of (seed, stream id).
class ChaChaStream final : public RandomSource {
 public:
  explicit ChaChaStream(std::uint64_t seed, std::uint64_t stream_id = 0);
  ChaChaStream(const ChaChaStream&) = delete;
  ChaChaStream& operator=(const ChaChaStream&) = delete;
  ChaChaStream(ChaChaStream&&) noexcept;
  ChaChaStream& operator=(ChaChaStream&&) noexcept;
  ~ChaChaStream() override;

  std::uint64_t next_u64() override;

  /// Independent child stream, derived from this stream's next output.
  ChaChaStream split();

 private:
  void refill();

  struct Cipher;
  Cipher* cipher_ = nullptr;
  std::array<std::uint64_t, 512> buffer_{};
  std::size_t pos_ = 512;
};

/// Finite, scripted stream for tests; throws RandomnessExhausted when drained.
class ScriptedSource final : public RandomSource {
 public:
  explicit ScriptedSource(std::vector<std::uint64_t> words) : words_(std::move(words)) {}

  /// Word whose uniform01() value is exactly `u` (u in [0, 1)).
  static std::uint64_t word_for_uniform(double u);

  std::uint64_t next_u64() override;
  std::size_t remaining() const { return words_.size() - pos_; }

 private:
  std::vector<std::uint64_t> words_;
  std::size_t pos_ = 0;
};

/// SHAKE-256 extendable output over an absorbed message, readable as a stream.
/// Output block i is SHAKE-256(message || le32(i)), 136 bytes each.
class XofStream final : public RandomSource {
 public:
  explicit XofStream(std::vector<std::uint8_t> message);
  std::uint64_t next_u64() override;
  std::uint8_t next_byte();

 private:
  void refill();

  std::vector<std::uint8_t> message_;
  std::vector<std::uint8_t> block_;
  std::size_t pos_ = 0;
  std::uint32_t counter_ = 0;
};

/// SHAKE-256 of `input`, `out_len` bytes.
std::vector<std::uint8_t> shake256(std::span<const std::uint8_t> input, std::size_t out_len);

}  // namespace lrs
