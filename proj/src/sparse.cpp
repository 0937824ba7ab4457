#include "gradedirac/sparse.hpp"

#include <algorithm>
#include <stdexcept>

namespace gradedirac {

namespace {

// a - f * b
SparseRow axpy(const SparseRow& a, const Rational& f, const SparseRow& b) {
  SparseRow out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      out.emplace_back(b[j].first, -f * b[j].second);
      ++j;
    } else {
      Rational v = a[i].second - f * b[j].second;
      if (v != 0) out.emplace_back(a[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

SparseRow sparse_from_dense(const Vector& v) {
  SparseRow r;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] != 0) r.emplace_back(i, v[i]);
  }
  return r;
}

void SparseEliminator::add_equation(SparseRow row, Rational rhs) {
  std::sort(row.begin(), row.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  SparseRow merged;
  for (auto& e : row) {
    if (e.first >= ncols_) throw std::out_of_range("sparse column out of range");
    if (!merged.empty() && merged.back().first == e.first) {
      merged.back().second += e.second;
    } else {
      merged.push_back(e);
    }
  }
  row.clear();
  for (auto& e : merged) {
    if (e.second != 0) row.push_back(std::move(e));
  }
  while (!row.empty()) {
    auto it = pivots_.find(row.front().first);
    if (it == pivots_.end()) {
      const Rational inv = 1 / row.front().second;
      for (auto& e : row) e.second *= inv;
      rhs *= inv;
      const std::size_t col = row.front().first;
      pivots_.emplace(col, PivotRow{std::move(row), std::move(rhs)});
      return;
    }
    const Rational f = row.front().second;
    row = axpy(row, f, it->second.entries);
    rhs -= f * it->second.rhs;
  }
  if (rhs != 0) consistent_ = false;
}

Vector SparseEliminator::back_substitute(std::optional<std::size_t> free_one) const {
  Vector x(ncols_, 0);
  if (free_one) x[*free_one] = 1;
  for (auto it = pivots_.rbegin(); it != pivots_.rend(); ++it) {
    const auto& [col, prow] = *it;
    Rational v = free_one ? Rational(0) : prow.rhs;
    for (std::size_t k = 1; k < prow.entries.size(); ++k) {
      const auto& [c, a] = prow.entries[k];
      if (x[c] != 0) v -= a * x[c];
    }
    x[col] = v;
  }
  return x;
}

std::optional<Vector> SparseEliminator::solution() const {
  if (!consistent_) return std::nullopt;
  return back_substitute(std::nullopt);
}

std::vector<std::size_t> SparseEliminator::free_columns() const {
  std::vector<std::size_t> out;
  for (std::size_t c = 0; c < ncols_; ++c) {
    if (!pivots_.count(c)) out.push_back(c);
  }
  return out;
}

std::vector<Vector> SparseEliminator::nullspace() const {
  std::vector<Vector> out;
  for (auto f : free_columns()) out.push_back(back_substitute(f));
  return out;
}

}  // namespace gradedirac
