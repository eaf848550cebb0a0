#pragma once

// Binary file formats for parameters, public rings, secret keys and signatures.
//
// Header (38 bytes): "LRS1", version u8, kind u8, then n, q, w, m, k, kappa, d, l
// as u32 little-endian. Residues are u32 LE, signed entries i64 LE, challenge
// trits 2 bits each (00 = 0, 01 = +1, 10 = -1), least significant pair first,
// zero-padded to a byte.

#include "lrs/ringsig.hpp"

#include <cstdint>

namespace lrs {

inline constexpr std::uint8_t kWireVersion = 1;
inline constexpr std::size_t kHeaderBytes = 38;

enum class WireKind : std::uint8_t { params = 0, public_ring = 1, secret_key = 2, signature = 3 };

/// Malformed or inconsistent serialized data.
class FormatError : public Error {
 public:
  using Error::Error;
};

struct WireHeader {
  WireKind kind = WireKind::params;
  ParameterSet params;
  std::uint32_t ring_size = 0;
};

struct MemberKey {
  ParameterSet params;
  std::size_t ring_size = 0;
  std::size_t index = 0;
  SecretKey key;
};

struct DecodedSignature {
  ParameterSet params;
  RingSignature signature;
};

/// l*m + k.
std::size_t signature_entry_count(std::size_t ring_size, std::int64_t m, std::int64_t k);

/// 8*l*m + ceil(2k/8).
std::size_t signature_body_bytes(std::size_t ring_size, std::int64_t m, std::int64_t k);

Bytes serialize_params(const ParameterSet& params);
Bytes serialize_ring(const RingPublic& ring);
Bytes serialize_secret_key(const ParameterSet& params, std::size_t ring_size, std::size_t index, const SecretKey& key);
Bytes serialize_signature(const ParameterSet& params, const RingSignature& sig);

/// Parses and checks the header only. Parameters are re-derived from
/// (n, q, k, kappa) and must agree with w, m, d.
WireHeader read_header(ByteView bytes);

ParameterSet deserialize_params(ByteView bytes);
RingPublic deserialize_ring(ByteView bytes);
MemberKey deserialize_secret_key(ByteView bytes);
DecodedSignature deserialize_signature(ByteView bytes);

}  // namespace lrs
