#include "webendo/linalg.hpp"

#include <algorithm>

#include <Eigen/Dense>

#include "webendo/error.hpp"

namespace webendo {

namespace {

Eigen::MatrixXcd to_eigen(const Matrix<Complex>& m) {
  Eigen::MatrixXcd out(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out(r, c) = m(r, c);
  return out;
}

}  // namespace

Kernel<Rational> kernel(const Matrix<Rational>& input, double) {
  Matrix<Rational> m = input;
  const std::size_t rows = m.rows(), cols = m.cols();
  std::vector<std::size_t> pivot_cols;
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols && row < rows; ++col) {
    std::size_t pivot = row;
    while (pivot < rows && sgn(m(pivot, col)) == 0) ++pivot;
    if (pivot == rows) continue;
    if (pivot != row)
      for (std::size_t c = 0; c < cols; ++c) std::swap(m(pivot, c), m(row, c));
    const Rational inv = 1 / m(row, col);
    for (std::size_t c = col; c < cols; ++c) m(row, c) *= inv;
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == row || sgn(m(r, col)) == 0) continue;
      const Rational factor = m(r, col);
      for (std::size_t c = col; c < cols; ++c) m(r, c) -= factor * m(row, c);
    }
    pivot_cols.push_back(col);
    ++row;
  }

  Kernel<Rational> out;
  out.rank = pivot_cols.size();
  std::vector<bool> is_pivot(cols, false);
  for (auto c : pivot_cols) is_pivot[c] = true;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<Rational> v(cols, Rational(0));
    v[free] = 1;
    for (std::size_t i = 0; i < pivot_cols.size(); ++i) v[pivot_cols[i]] = -m(i, free);
    out.basis.push_back(std::move(v));
  }
  return out;
}

Kernel<Complex> kernel(const Matrix<Complex>& m, double rel_tol) {
  Kernel<Complex> out;
  if (m.cols() == 0) return out;
  const Eigen::MatrixXcd a = to_eigen(m);
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double top = sv.size() > 0 ? sv(0) : 0.0;
  std::size_t rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    out.singular_values.push_back(sv(i));
    if (top > 0 && sv(i) > rel_tol * top) ++rank;
  }
  // Columns beyond the row count belong to the kernel as well.
  for (std::size_t i = out.singular_values.size(); i < m.cols(); ++i) out.singular_values.push_back(0.0);
  out.rank = rank;
  const auto& v = svd.matrixV();
  for (std::size_t c = rank; c < m.cols(); ++c) {
    std::vector<Complex> vec(m.cols());
    for (std::size_t r = 0; r < m.cols(); ++r) vec[r] = v(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
    out.basis.push_back(std::move(vec));
  }
  return out;
}

Rational determinant(const Matrix<Rational>& input) {
  if (input.rows() != input.cols()) throw Error(ErrorKind::InvalidArgument, "determinant of non-square matrix");
  Matrix<Rational> m = input;
  const std::size_t n = m.rows();
  Rational det = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && sgn(m(pivot, col)) == 0) ++pivot;
    if (pivot == n) return Rational(0);
    if (pivot != col) {
      for (std::size_t c = 0; c < n; ++c) std::swap(m(pivot, c), m(col, c));
      det = -det;
    }
    det *= m(col, col);
    for (std::size_t r = col + 1; r < n; ++r) {
      if (sgn(m(r, col)) == 0) continue;
      const Rational factor = m(r, col) / m(col, col);
      for (std::size_t c = col; c < n; ++c) m(r, c) -= factor * m(col, c);
    }
  }
  return det;
}

Complex determinant(const Matrix<Complex>& m) {
  if (m.rows() != m.cols()) throw Error(ErrorKind::InvalidArgument, "determinant of non-square matrix");
  if (m.rows() == 0) return Complex(1.0, 0.0);
  return to_eigen(m).partialPivLu().determinant();
}

std::vector<Complex> least_squares(const Matrix<Complex>& a, const std::vector<Complex>& b) {
  if (b.size() != a.rows()) throw Error(ErrorKind::InvalidArgument, "least_squares: size mismatch");
  Eigen::VectorXcd rhs(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) rhs(static_cast<Eigen::Index>(i)) = b[i];
  const Eigen::VectorXcd x = to_eigen(a).completeOrthogonalDecomposition().solve(rhs);
  return {x.data(), x.data() + x.size()};
}

}  // namespace webendo
