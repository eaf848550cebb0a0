#pragma once

// Exact linear algebra over Z_q and Z.

#include "lrs/types.hpp"

#include <span>
#include <vector>

namespace lrs {

/// Canonical residue of x in [0, q).
constexpr std::int64_t mod_q(std::int64_t x, std::int64_t q) {
  const std::int64_t r = x % q;
  return r < 0 ? r + q : r;
}

/// Balanced representative of a residue, in (-q/2, q/2].
constexpr std::int64_t balanced(std::int64_t r, std::int64_t q) {
  const std::int64_t c = mod_q(r, q);
  return c > q / 2 ? c - q : c;
}

/// Matrix over Z_q. Entries are always stored reduced to [0, q).
class ModMatrix {
 public:
  ModMatrix() = default;
  ModMatrix(Eigen::Index rows, Eigen::Index cols, std::int64_t q);

  /// Reduces every entry of `entries` mod q.
  template <typename Derived>
  static ModMatrix reduce(const Eigen::MatrixBase<Derived>& entries, std::int64_t q) {
    ModMatrix out(entries.rows(), entries.cols(), q);
    for (Eigen::Index i = 0; i < entries.rows(); ++i) {
      for (Eigen::Index j = 0; j < entries.cols(); ++j) {
        out.residues_(i, j) = mod_q(static_cast<std::int64_t>(entries(i, j)), q);
      }
    }
    return out;
  }

  static ModMatrix identity(Eigen::Index n, std::int64_t q);

  Eigen::Index rows() const { return residues_.rows(); }
  Eigen::Index cols() const { return residues_.cols(); }
  std::int64_t modulus() const { return q_; }

  std::int64_t operator()(Eigen::Index i, Eigen::Index j) const { return residues_(i, j); }
  void set(Eigen::Index i, Eigen::Index j, std::int64_t value) { residues_(i, j) = mod_q(value, q_); }

  const IntMatrix& residues() const { return residues_; }
  IntVector col(Eigen::Index j) const { return residues_.col(j); }

  /// Balanced (-q/2, q/2] view, computed on demand.
  IntMatrix balanced_view() const;

  bool operator==(const ModMatrix& other) const {
    return q_ == other.q_ && residues_.rows() == other.residues_.rows() &&
           residues_.cols() == other.residues_.cols() && residues_ == other.residues_;
  }

 private:
  IntMatrix residues_;
  std::int64_t q_ = 0;
};

/// A*x mod q with every result entry in [0, q).
template <typename Derived>
IntVector mat_vec_mod(const ModMatrix& a, const Eigen::MatrixBase<Derived>& x) {
  if (a.cols() != x.size()) {
    throw DimensionError("mat_vec_mod: matrix has " + std::to_string(a.cols()) + " columns, vector has " +
                         std::to_string(x.size()) + " entries");
  }
  const std::int64_t q = a.modulus();
  IntVector xr(x.size());
  for (Eigen::Index j = 0; j < x.size(); ++j) {
    xr(j) = mod_q(static_cast<std::int64_t>(x(j)), q);
  }
  // Operands are < q, so each row sum is < cols*q^2, which validate() keeps below 2^63.
  IntVector out = a.residues() * xr;
  for (Eigen::Index i = 0; i < out.size(); ++i) {
    out(i) = mod_q(out(i), q);
  }
  return out;
}

/// A*B mod q for an integer matrix B.
template <typename Derived>
ModMatrix mat_mul_mod(const ModMatrix& a, const Eigen::MatrixBase<Derived>& b) {
  if (a.cols() != b.rows()) {
    throw DimensionError("mat_mul_mod: inner dimensions differ (" + std::to_string(a.cols()) + " vs " +
                         std::to_string(b.rows()) + ")");
  }
  const std::int64_t q = a.modulus();
  IntMatrix br(b.rows(), b.cols());
  for (Eigen::Index i = 0; i < b.rows(); ++i) {
    for (Eigen::Index j = 0; j < b.cols(); ++j) {
      br(i, j) = mod_q(static_cast<std::int64_t>(b(i, j)), q);
    }
  }
  return ModMatrix::reduce(a.residues() * br, q);
}

struct Norms {
  std::int64_t l1 = 0;
  wide_int l2_squared = 0;
  std::int64_t linf = 0;
};

template <typename Derived>
Norms norms(const Eigen::MatrixBase<Derived>& x) {
  Norms out;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const std::int64_t v = static_cast<std::int64_t>(x(i));
    const std::int64_t a = v < 0 ? -v : v;
    out.l1 += a;
    out.l2_squared += static_cast<wide_int>(v) * v;
    out.linf = std::max(out.linf, a);
  }
  return out;
}

template <typename DerivedA, typename DerivedB>
wide_int inner_product(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
  if (a.size() != b.size()) {
    throw DimensionError("inner_product: length mismatch");
  }
  wide_int acc = 0;
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    acc += static_cast<wide_int>(a(i)) * static_cast<wide_int>(b(i));
  }
  return acc;
}

/// [M_1 | M_2 | ... ] over a shared modulus and row count.
ModMatrix concat_h(std::span<const ModMatrix> blocks);

/// (v_1, v_2, ...) stacked into one vector.
IntVector concat_v(std::span<const IntVector> parts);

}  // namespace lrs
