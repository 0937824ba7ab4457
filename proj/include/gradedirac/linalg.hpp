#pragma once

#include <optional>
#include <vector>

#include "gradedirac/polynomial.hpp"

namespace gradedirac {

using Vector = std::vector<Rational>;

class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  static Matrix from_rows(const std::vector<Vector>& rows, std::size_t cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  Vector row(std::size_t r) const;
  std::vector<Vector> row_list() const;
  Matrix transpose() const;
  void append_row(const Vector& v);

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

struct Echelon {
  Matrix reduced;                   // nonzero rows only
  std::vector<std::size_t> pivots;  // pivot column per row
};

// Reduced row echelon form with zero rows dropped.
Echelon rref(const Matrix& m);
std::size_t rank(const Matrix& m);
std::vector<Vector> nullspace(const Matrix& m);
// Some x with A x = b.
std::optional<Vector> solve(const Matrix& a, const Vector& b);
Vector multiply(const Matrix& a, const Vector& x);
bool is_zero(const Vector& v);

}  // namespace gradedirac
