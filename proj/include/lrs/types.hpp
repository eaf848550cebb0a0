#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace lrs {

/// Dense row-major matrix over an arbitrary scalar.
template <typename Scalar>
using DenseMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

template <typename Scalar>
using DenseVector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using IntMatrix = DenseMatrix<std::int64_t>;
using IntVector = DenseVector<std::int64_t>;
using RealMatrix = DenseMatrix<double>;
using RealVector = DenseVector<double>;

/// Accumulator for squared norms and inner products of large-sigma vectors.
using wide_int = __int128;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParameterError : public Error {
 public:
  using Error::Error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

class RandomnessExhausted : public Error {
 public:
  using Error::Error;
};

class EnumerationTooLarge : public Error {
 public:
  using Error::Error;
};

class RetryBudgetExhausted : public Error {
 public:
  using Error::Error;
};

std::string to_string(wide_int v);

}  // namespace lrs
