#pragma once

#include <cstddef>
#include <vector>

#include "webendo/field.hpp"

namespace webendo {

// Row-major dense matrix used for the small linear systems that show up in
// implicitization, interpolation and Macaulay rank tests.
template <Field F>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, F(0)) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  F& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const F& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<F> data_;
};

template <Field F>
struct Kernel {
  std::size_t rank = 0;
  std::vector<std::vector<F>> basis;
  // Floating regime only: singular values in decreasing order.
  std::vector<double> singular_values;
};

// Exact reduced row echelon form; the basis vectors have a 1 in their free column.
Kernel<Rational> kernel(const Matrix<Rational>& m, double rel_tol = 0.0);

// SVD based; singular values below rel_tol * sigma_max count as zero.
Kernel<Complex> kernel(const Matrix<Complex>& m, double rel_tol);

Rational determinant(const Matrix<Rational>& m);
Complex determinant(const Matrix<Complex>& m);

// Minimizes |A x - b|_2.
std::vector<Complex> least_squares(const Matrix<Complex>& a, const std::vector<Complex>& b);

}  // namespace webendo
