#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "gradedirac/linalg.hpp"

namespace gradedirac {

// Entries sorted by column, no explicit zeros.
using SparseRow = std::vector<std::pair<std::size_t, Rational>>;

// Incremental Gaussian elimination for large, sparse systems A x = b, such
// as the ones produced by polynomial ansatzes.
class SparseEliminator {
 public:
  explicit SparseEliminator(std::size_t ncols) : ncols_(ncols) {}

  void add_equation(SparseRow row, Rational rhs = 0);
  std::size_t ncols() const { return ncols_; }
  std::size_t rank() const { return pivots_.size(); }
  bool consistent() const { return consistent_; }
  // Particular solution with all free variables set to zero.
  std::optional<Vector> solution() const;
  std::vector<std::size_t> free_columns() const;
  std::vector<Vector> nullspace() const;

 private:
  struct PivotRow {
    SparseRow entries;  // leading entry is the pivot, normalised to 1
    Rational rhs;
  };
  Vector back_substitute(std::optional<std::size_t> free_one) const;

  std::size_t ncols_;
  std::map<std::size_t, PivotRow> pivots_;
  bool consistent_ = true;
};

SparseRow sparse_from_dense(const Vector& v);

}  // namespace gradedirac
