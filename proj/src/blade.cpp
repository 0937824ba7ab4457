#include "gradedirac/blade.hpp"

#include <algorithm>
#include <stdexcept>

namespace gradedirac {

std::optional<SignedBlade> canonical_blade(std::vector<int> indices) {
  int sign = 1;
  for (std::size_t i = 1; i < indices.size(); ++i) {
    for (std::size_t j = i; j > 0 && indices[j - 1] >= indices[j]; --j) {
      if (indices[j - 1] == indices[j]) return std::nullopt;
      std::swap(indices[j - 1], indices[j]);
      sign = -sign;
    }
  }
  return SignedBlade{sign, std::move(indices)};
}

std::optional<SignedBlade> merge_blades(const Blade& a, const Blade& b) {
  Blade out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  long long inversions = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] == b[j]) return std::nullopt;
    if (a[i] < b[j]) {
      out.push_back(a[i++]);
    } else {
      inversions += static_cast<long long>(a.size() - i);
      out.push_back(b[j++]);
    }
  }
  out.insert(out.end(), a.begin() + i, a.end());
  out.insert(out.end(), b.begin() + j, b.end());
  return SignedBlade{inversions % 2 ? -1 : 1, std::move(out)};
}

std::optional<SignedBlade> contract_blade(const Blade& vec, const Blade& form) {
  Blade rest = form;
  int sign = 1;
  for (int j : vec) {
    auto it = std::lower_bound(rest.begin(), rest.end(), j);
    if (it == rest.end() || *it != j) return std::nullopt;
    if ((it - rest.begin()) % 2) sign = -sign;
    rest.erase(it);
  }
  return SignedBlade{sign, std::move(rest)};
}

std::vector<Blade> blades_of_degree(int n, int degree) {
  std::vector<Blade> out;
  if (degree < 0 || degree > n) return out;
  Blade cur(degree);
  for (int i = 0; i < degree; ++i) cur[i] = i;
  while (true) {
    out.push_back(cur);
    int i = degree - 1;
    while (i >= 0 && cur[i] == n - degree + i) --i;
    if (i < 0) break;
    ++cur[i];
    for (int j = i + 1; j < degree; ++j) cur[j] = cur[j - 1] + 1;
  }
  return out;
}

BladeBasis::BladeBasis(int n, int degree) : n_(n), degree_(degree), blades_(blades_of_degree(n, degree)) {
  for (std::size_t i = 0; i < blades_.size(); ++i) index_.emplace(blades_[i], i);
}

std::size_t BladeBasis::index(const Blade& b) const {
  auto it = index_.find(b);
  if (it == index_.end()) throw std::out_of_range("blade not in basis");
  return it->second;
}

long long binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  long long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace gradedirac
