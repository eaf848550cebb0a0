#include "lrs/random.hpp"

#include <openssl/evp.h>

#include <cmath>
#include <cstring>
#include <memory>
#include <numbers>

namespace lrs {

namespace {

struct MdCtxDeleter {
  void operator()(EVP_MD_CTX* ctx) const { EVP_MD_CTX_free(ctx); }
};

void append_le64(std::vector<std::uint8_t>& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) {
    out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  }
}

}  // namespace

std::vector<std::uint8_t> shake256(std::span<const std::uint8_t> input, std::size_t out_len) {
  std::unique_ptr<EVP_MD_CTX, MdCtxDeleter> ctx(EVP_MD_CTX_new());
  std::vector<std::uint8_t> out(out_len);
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_shake256(), nullptr) != 1 ||
      EVP_DigestUpdate(ctx.get(), input.data(), input.size()) != 1 ||
      EVP_DigestFinalXOF(ctx.get(), out.data(), out.size()) != 1) {
    throw Error("shake256: OpenSSL digest failure");
  }
  return out;
}

std::uint64_t RandomSource::uniform_below(std::uint64_t bound) {
  if (bound == 0) {
    throw Error("uniform_below: empty range");
  }
  // Largest multiple of bound that fits; draws at or above it are rejected.
  const std::uint64_t limit = bound * (UINT64_MAX / bound);
  for (;;) {
    const std::uint64_t x = next_u64();
    if (x < limit) {
      return x % bound;
    }
  }
}

double RandomSource::standard_normal() {
  const double u1 = 1.0 - uniform01();  // (0, 1]
  const double u2 = uniform01();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

struct ChaChaStream::Cipher {
  EVP_CIPHER_CTX* ctx = nullptr;
  ~Cipher() { EVP_CIPHER_CTX_free(ctx); }
};

ChaChaStream::ChaChaStream(std::uint64_t seed, std::uint64_t stream_id) : cipher_(new Cipher) {
  std::vector<std::uint8_t> material{'L', 'R', 'S', '1', '-', 'r', 'n', 'g'};
  append_le64(material, seed);
  append_le64(material, stream_id);
  std::array<std::uint8_t, 32> key{};
  unsigned int key_len = 0;
  if (EVP_Digest(material.data(), material.size(), key.data(), &key_len, EVP_sha256(), nullptr) != 1) {
    delete cipher_;
    throw Error("ChaChaStream: key derivation failed");
  }
  std::array<std::uint8_t, 16> iv{};
  cipher_->ctx = EVP_CIPHER_CTX_new();
  if (cipher_->ctx == nullptr || EVP_EncryptInit_ex(cipher_->ctx, EVP_chacha20(), nullptr, key.data(), iv.data()) != 1) {
    delete cipher_;
    throw Error("ChaChaStream: cipher init failed");
  }
  OPENSSL_cleanse(key.data(), key.size());
}

ChaChaStream::ChaChaStream(ChaChaStream&& other) noexcept
    : cipher_(other.cipher_), buffer_(other.buffer_), pos_(other.pos_) {
  other.cipher_ = nullptr;
}

ChaChaStream& ChaChaStream::operator=(ChaChaStream&& other) noexcept {
  if (this != &other) {
    delete cipher_;
    cipher_ = other.cipher_;
    buffer_ = other.buffer_;
    pos_ = other.pos_;
    other.cipher_ = nullptr;
  }
  return *this;
}

ChaChaStream::~ChaChaStream() { delete cipher_; }

void ChaChaStream::refill() {
  static const std::array<std::uint8_t, sizeof(buffer_)> zeros{};
  int out_len = 0;
  if (EVP_EncryptUpdate(cipher_->ctx, reinterpret_cast<unsigned char*>(buffer_.data()), &out_len, zeros.data(),
                        static_cast<int>(zeros.size())) != 1 ||
      out_len != static_cast<int>(zeros.size())) {
    throw Error("ChaChaStream: keystream generation failed");
  }
  pos_ = 0;
}

std::uint64_t ChaChaStream::next_u64() {
  if (pos_ == buffer_.size()) {
    refill();
  }
  return buffer_[pos_++];
}

ChaChaStream ChaChaStream::split() {
  const std::uint64_t a = next_u64();
  const std::uint64_t b = next_u64();
  return ChaChaStream(a, b);
}

std::uint64_t ScriptedSource::word_for_uniform(double u) {
  return static_cast<std::uint64_t>(std::ldexp(u, 53)) << 11;
}

std::uint64_t ScriptedSource::next_u64() {
  if (pos_ >= words_.size()) {
    throw RandomnessExhausted("scripted randomness stream exhausted");
  }
  return words_[pos_++];
}

XofStream::XofStream(std::vector<std::uint8_t> message) : message_(std::move(message)) {}

void XofStream::refill() {
  std::vector<std::uint8_t> input = message_;
  for (int i = 0; i < 4; ++i) {
    input.push_back(static_cast<std::uint8_t>(counter_ >> (8 * i)));
  }
  ++counter_;
  block_ = shake256(input, 136);
  pos_ = 0;
}

std::uint8_t XofStream::next_byte() {
  if (pos_ >= block_.size()) {
    refill();
  }
  return block_[pos_++];
}

std::uint64_t XofStream::next_u64() {
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) {
    v |= static_cast<std::uint64_t>(next_byte()) << (8 * i);
  }
  return v;
}

}  // namespace lrs
