#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "rsp/rational.hpp"

namespace rsp {

/// Dense row-major matrix. Only what exact elimination needs.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<T> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const T> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(a, c), (*this)(b, c));
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using RationalMatrix = Matrix<Rational>;

/// Builds a matrix whose rows are the given vectors (all of equal length).
RationalMatrix from_rows(const std::vector<RationalVector>& rows, std::size_t cols);

struct RowEchelon {
  RationalMatrix reduced;            // reduced row echelon form
  std::vector<std::size_t> pivots;   // pivot column of each nonzero row
};

RowEchelon reduced_row_echelon(RationalMatrix m);
std::size_t rank(const RationalMatrix& m);

/// Basis of { x : m x = 0 }, one vector per free column, in column order.
std::vector<RationalVector> null_space(const RationalMatrix& m);

/// Inverse of a square nonsingular matrix; throws std::domain_error if singular.
RationalMatrix inverse(const RationalMatrix& m);

}  // namespace rsp
