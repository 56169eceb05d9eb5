#include "kwfeas/matrix.hpp"

#include <sstream>
#include <stdexcept>
#include <utility>

namespace kwfeas {

RationalMatrix::RationalMatrix(std::size_t rows, std::size_t cols, std::vector<Rational> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows * cols) throw std::invalid_argument("matrix data size mismatch");
}

RationalMatrix RationalMatrix::identity(std::size_t n) {
  RationalMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

RationalMatrix RationalMatrix::from_rows(const std::vector<std::vector<Rational>>& rows) {
  const std::size_t ncols = rows.empty() ? 0 : rows.front().size();
  RationalMatrix m(rows.size(), ncols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != ncols) throw std::invalid_argument("ragged matrix rows");
    for (std::size_t c = 0; c < ncols; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

RationalMatrix RationalMatrix::transpose() const {
  RationalMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

std::vector<Rational> RationalMatrix::operator*(const std::vector<Rational>& v) const {
  if (v.size() != cols_) throw std::invalid_argument("matrix-vector size mismatch");
  std::vector<Rational> out(rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out[r] += (*this)(r, c) * v[c];
  return out;
}

RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b) {
  if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product size mismatch");
  RationalMatrix p(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Rational& aik = a(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) p(i, j) += aik * b(k, j);
    }
  return p;
}

std::string RationalMatrix::to_string() const {
  std::ostringstream out;
  for (std::size_t r = 0; r < rows_; ++r) {
    out << '[';
    for (std::size_t c = 0; c < cols_; ++c) out << (c ? " " : "") << kwfeas::to_string((*this)(r, c));
    out << "]\n";
  }
  return out.str();
}

namespace {

// Swaps in a row with a nonzero entry in column k; returns false if none.
bool pivot(RationalMatrix& m, std::size_t k, std::size_t first_row, int& sign) {
  for (std::size_t r = first_row; r < m.rows(); ++r) {
    if (m(r, k) != 0) {
      if (r != first_row) {
        for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m(r, c), m(first_row, c));
        sign = -sign;
      }
      return true;
    }
  }
  return false;
}

}  // namespace

Rational mat_det(const RationalMatrix& input) {
  if (!input.is_square()) throw std::invalid_argument("determinant of a non-square matrix");
  const std::size_t n = input.rows();
  if (n == 0) return 1;
  RationalMatrix m = input;
  int sign = 1;
  Rational prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (!pivot(m, k, k, sign)) return 0;
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) m(i, j) = (m(k, k) * m(i, j) - m(i, k) * m(k, j)) / prev;
      m(i, k) = 0;
    }
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

RationalMatrix mat_inverse(const RationalMatrix& input) {
  if (!input.is_square()) throw std::invalid_argument("inverse of a non-square matrix");
  const std::size_t n = input.rows();
  RationalMatrix aug(n, 2 * n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) aug(r, c) = input(r, c);
    aug(r, n + r) = 1;
  }
  int sign = 1;
  Rational prev = 1;
  for (std::size_t k = 0; k < n; ++k) {
    if (!pivot(aug, k, k, sign)) throw std::domain_error("singular matrix");
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k) continue;
      for (std::size_t j = 0; j < 2 * n; ++j) {
        if (j == k) continue;
        aug(i, j) = (aug(k, k) * aug(i, j) - aug(i, k) * aug(k, j)) / prev;
      }
      aug(i, k) = 0;
    }
    prev = aug(k, k);
  }
  // The left block is now prev * I and the right block prev * inverse.
  RationalMatrix inv(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) inv(r, c) = aug(r, n + c) / aug(r, r);
  return inv;
}

}  // namespace kwfeas
