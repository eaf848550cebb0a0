#include "lrs/modq.hpp"

#include <algorithm>

namespace lrs {

std::string to_string(wide_int v) {
  if (v == 0) {
    return "0";
  }
  const bool negative = v < 0;
  unsigned __int128 u = negative ? static_cast<unsigned __int128>(-(v + 1)) + 1 : static_cast<unsigned __int128>(v);
  std::string digits;
  while (u != 0) {
    digits.push_back(static_cast<char>('0' + static_cast<int>(u % 10)));
    u /= 10;
  }
  if (negative) {
    digits.push_back('-');
  }
  std::reverse(digits.begin(), digits.end());
  return digits;
}

ModMatrix::ModMatrix(Eigen::Index rows, Eigen::Index cols, std::int64_t q) : residues_(IntMatrix::Zero(rows, cols)), q_(q) {
  if (rows <= 0 || cols <= 0) {
    throw DimensionError("ModMatrix: dimensions must be positive");
  }
  if (q < 2) {
    throw ParameterError("ModMatrix: modulus must be at least 2");
  }
}

ModMatrix ModMatrix::identity(Eigen::Index n, std::int64_t q) {
  return reduce(IntMatrix::Identity(n, n), q);
}

IntMatrix ModMatrix::balanced_view() const {
  IntMatrix out(rows(), cols());
  for (Eigen::Index i = 0; i < rows(); ++i) {
    for (Eigen::Index j = 0; j < cols(); ++j) {
      out(i, j) = balanced(residues_(i, j), q_);
    }
  }
  return out;
}

ModMatrix concat_h(std::span<const ModMatrix> blocks) {
  if (blocks.empty()) {
    throw DimensionError("concat_h: no blocks");
  }
  const Eigen::Index rows = blocks.front().rows();
  const std::int64_t q = blocks.front().modulus();
  Eigen::Index cols = 0;
  for (const auto& b : blocks) {
    if (b.rows() != rows) {
      throw DimensionError("concat_h: row counts differ");
    }
    if (b.modulus() != q) {
      throw DimensionError("concat_h: moduli differ");
    }
    cols += b.cols();
  }
  IntMatrix joined(rows, cols);
  Eigen::Index at = 0;
  for (const auto& b : blocks) {
    joined.middleCols(at, b.cols()) = b.residues();
    at += b.cols();
  }
  return ModMatrix::reduce(joined, q);
}

IntVector concat_v(std::span<const IntVector> parts) {
  Eigen::Index total = 0;
  for (const auto& p : parts) {
    total += p.size();
  }
  IntVector out(total);
  Eigen::Index at = 0;
  for (const auto& p : parts) {
    out.segment(at, p.size()) = p;
    at += p.size();
  }
  return out;
}

}  // namespace lrs
