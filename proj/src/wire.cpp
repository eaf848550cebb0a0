#include "lrs/wire.hpp"

#include <fmt/format.h>

namespace lrs {

namespace {

constexpr std::array<std::uint8_t, 4> kMagic{'L', 'R', 'S', '1'};

class Writer {
 public:
  void u8(std::uint8_t v) { out_.push_back(v); }
  void u32(std::uint64_t v) {
    for (int i = 0; i < 4; ++i) out_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  void i64(std::int64_t v) {
    const auto u = static_cast<std::uint64_t>(v);
    for (int i = 0; i < 8; ++i) out_.push_back(static_cast<std::uint8_t>(u >> (8 * i)));
  }
  Bytes take() { return std::move(out_); }

 private:
  Bytes out_;
};

class Reader {
 public:
  explicit Reader(ByteView in) : in_(in) {}

  std::uint8_t u8() {
    need(1);
    return in_[pos_++];
  }
  std::uint32_t u32() {
    need(4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(in_[pos_++]) << (8 * i);
    return v;
  }
  std::int64_t i64() {
    need(8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(in_[pos_++]) << (8 * i);
    return static_cast<std::int64_t>(v);
  }
  std::size_t remaining() const { return in_.size() - pos_; }
  void finish() const {
    if (pos_ != in_.size()) {
      throw FormatError(fmt::format("{} trailing bytes", in_.size() - pos_));
    }
  }

 private:
  void need(std::size_t count) const {
    if (in_.size() - pos_ < count) {
      throw FormatError("truncated input");
    }
  }

  ByteView in_;
  std::size_t pos_ = 0;
};

void write_header(Writer& w, WireKind kind, const ParameterSet& p, std::size_t ring_size) {
  for (auto b : kMagic) w.u8(b);
  w.u8(kWireVersion);
  w.u8(static_cast<std::uint8_t>(kind));
  for (std::int64_t v : {p.n, p.q, p.w, p.m, p.k, p.kappa, p.d}) {
    w.u32(static_cast<std::uint64_t>(v));
  }
  w.u32(ring_size);
}

WireHeader parse_header(Reader& r) {
  for (auto b : kMagic) {
    if (r.u8() != b) {
      throw FormatError("bad magic");
    }
  }
  if (const auto version = r.u8(); version != kWireVersion) {
    throw FormatError(fmt::format("unsupported version {}", version));
  }
  const auto kind = r.u8();
  if (kind > static_cast<std::uint8_t>(WireKind::signature)) {
    throw FormatError(fmt::format("unknown kind {}", kind));
  }
  std::array<std::uint32_t, 8> f{};
  for (auto& v : f) v = r.u32();
  WireHeader h;
  h.kind = static_cast<WireKind>(kind);
  try {
    h.params = derive_params(f[0], f[1], f[4], f[5]);
  } catch (const ParameterError& e) {
    throw FormatError(fmt::format("header parameters invalid: {}", e.what()));
  }
  if (h.params.w != f[2] || h.params.m != f[3] || h.params.d != f[6]) {
    throw FormatError("header w, m or d disagree with the derived parameters");
  }
  h.ring_size = f[7];
  return h;
}

WireHeader expect(Reader& r, WireKind kind) {
  WireHeader h = parse_header(r);
  if (h.kind != kind) {
    throw FormatError(fmt::format("expected kind {}, found {}", static_cast<int>(kind), static_cast<int>(h.kind)));
  }
  return h;
}

ModMatrix read_residues(Reader& r, std::int64_t rows, std::int64_t cols, std::int64_t q) {
  IntMatrix m(rows, cols);
  for (std::int64_t i = 0; i < rows; ++i) {
    for (std::int64_t j = 0; j < cols; ++j) {
      const std::uint32_t v = r.u32();
      if (v >= static_cast<std::uint64_t>(q)) {
        throw FormatError(fmt::format("residue {} not below q = {}", v, q));
      }
      m(i, j) = v;
    }
  }
  return ModMatrix::reduce(m, q);
}

void write_residues(Writer& w, const ModMatrix& a) {
  const IntMatrix& r = a.residues();
  for (Eigen::Index i = 0; i < r.rows(); ++i) {
    for (Eigen::Index j = 0; j < r.cols(); ++j) {
      w.u32(static_cast<std::uint64_t>(r(i, j)));
    }
  }
}

}  // namespace

std::size_t signature_entry_count(std::size_t ring_size, std::int64_t m, std::int64_t k) {
  return ring_size * static_cast<std::size_t>(m) + static_cast<std::size_t>(k);
}

std::size_t signature_body_bytes(std::size_t ring_size, std::int64_t m, std::int64_t k) {
  return 8 * ring_size * static_cast<std::size_t>(m) + (2 * static_cast<std::size_t>(k) + 7) / 8;
}

Bytes serialize_params(const ParameterSet& params) {
  Writer w;
  write_header(w, WireKind::params, params, 0);
  return w.take();
}

Bytes serialize_ring(const RingPublic& ring) {
  Writer w;
  write_header(w, WireKind::public_ring, ring.params(), ring.size());
  write_residues(w, ring.target());
  for (const auto& a : ring.members()) {
    write_residues(w, a);
  }
  return w.take();
}

Bytes serialize_secret_key(const ParameterSet& params, std::size_t ring_size, std::size_t index, const SecretKey& key) {
  const IntMatrix& s = key.matrix();
  if (s.rows() != params.m || s.cols() != params.k || index >= ring_size) {
    throw DimensionError("serialize_secret_key: key shape or index inconsistent with parameters");
  }
  Writer w;
  write_header(w, WireKind::secret_key, params, ring_size);
  w.u32(index);
  for (Eigen::Index i = 0; i < s.rows(); ++i) {
    for (Eigen::Index j = 0; j < s.cols(); ++j) {
      w.i64(s(i, j));
    }
  }
  return w.take();
}

Bytes serialize_signature(const ParameterSet& params, const RingSignature& sig) {
  for (const auto& z : sig.responses) {
    if (z.size() != params.m) {
      throw DimensionError("serialize_signature: response length differs from m");
    }
  }
  if (sig.challenge.coeffs.size() != params.k) {
    throw DimensionError("serialize_signature: challenge length differs from k");
  }
  Writer w;
  write_header(w, WireKind::signature, params, sig.responses.size());
  for (const auto& z : sig.responses) {
    for (Eigen::Index i = 0; i < z.size(); ++i) {
      w.i64(z(i));
    }
  }
  const IntVector& c = sig.challenge.coeffs;
  for (Eigen::Index base = 0; base < c.size(); base += 4) {
    std::uint8_t byte = 0;
    for (Eigen::Index t = 0; t < 4 && base + t < c.size(); ++t) {
      const std::int64_t v = c(base + t);
      const std::uint8_t code = v == 0 ? 0 : (v == 1 ? 1 : (v == -1 ? 2 : 3));
      if (code == 3) {
        throw DimensionError("serialize_signature: challenge entry outside {-1, 0, 1}");
      }
      byte |= static_cast<std::uint8_t>(code << (2 * t));
    }
    w.u8(byte);
  }
  return w.take();
}

WireHeader read_header(ByteView bytes) {
  Reader r(bytes);
  return parse_header(r);
}

ParameterSet deserialize_params(ByteView bytes) {
  Reader r(bytes);
  const WireHeader h = expect(r, WireKind::params);
  if (h.ring_size != 0) {
    throw FormatError("parameter file must carry l = 0");
  }
  r.finish();
  return h.params;
}

RingPublic deserialize_ring(ByteView bytes) {
  Reader r(bytes);
  const WireHeader h = expect(r, WireKind::public_ring);
  const auto& p = h.params;
  if (h.ring_size == 0) {
    throw FormatError("ring must have at least one member");
  }
  // Size check before allocating anything a forged ring size could inflate.
  if (r.remaining() != 4 * static_cast<std::size_t>(p.n) * (p.k + h.ring_size * static_cast<std::size_t>(p.m))) {
    throw FormatError("ring body length disagrees with the header");
  }
  ModMatrix target = read_residues(r, p.n, p.k, p.q);
  std::vector<ModMatrix> members;
  for (std::uint32_t i = 0; i < h.ring_size; ++i) {
    members.push_back(read_residues(r, p.n, p.m, p.q));
  }
  r.finish();
  return RingPublic(p, std::move(target), std::move(members));
}

MemberKey deserialize_secret_key(ByteView bytes) {
  Reader r(bytes);
  const WireHeader h = expect(r, WireKind::secret_key);
  const auto& p = h.params;
  const std::uint32_t index = r.u32();
  if (index >= h.ring_size) {
    throw FormatError("member index outside ring");
  }
  IntMatrix s(p.m, p.k);
  for (std::int64_t i = 0; i < p.m; ++i) {
    for (std::int64_t j = 0; j < p.k; ++j) {
      s(i, j) = r.i64();
      if (s(i, j) < -p.d || s(i, j) > p.d) {
        throw FormatError("secret key entry outside [-d, d]");
      }
    }
  }
  r.finish();
  return MemberKey{p, h.ring_size, index, SecretKey(std::move(s))};
}

DecodedSignature deserialize_signature(ByteView bytes) {
  Reader r(bytes);
  const WireHeader h = expect(r, WireKind::signature);
  const auto& p = h.params;
  if (h.ring_size == 0) {
    throw FormatError("signature must carry at least one response");
  }
  if (r.remaining() != signature_body_bytes(h.ring_size, p.m, p.k)) {
    throw FormatError("signature body length disagrees with the header");
  }
  DecodedSignature out{p, {}};
  auto& sig = out.signature;
  sig.responses.resize(h.ring_size);
  for (auto& z : sig.responses) {
    z.resize(p.m);
    for (std::int64_t i = 0; i < p.m; ++i) {
      z(i) = r.i64();
    }
  }
  sig.challenge.coeffs = IntVector::Zero(p.k);
  for (std::int64_t base = 0; base < p.k; base += 4) {
    const std::uint8_t byte = r.u8();
    for (std::int64_t t = 0; t < 4; ++t) {
      const int code = (byte >> (2 * t)) & 3;
      if (base + t >= p.k) {
        if (code != 0) {
          throw FormatError("nonzero trit padding");
        }
        continue;
      }
      if (code == 3) {
        throw FormatError("invalid trit pattern 11");
      }
      sig.challenge.coeffs(base + t) = code == 0 ? 0 : (code == 1 ? 1 : -1);
    }
  }
  r.finish();
  return out;
}

}  // namespace lrs
