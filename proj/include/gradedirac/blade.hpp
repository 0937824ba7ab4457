#pragma once

#include <map>
#include <optional>
#include <vector>

namespace gradedirac {

// Strictly increasing list of 0-based coordinate indices.
using Blade = std::vector<int>;

struct SignedBlade {
  int sign;
  Blade blade;
};

// Sorts an arbitrary index list; nullopt if an index repeats.
std::optional<SignedBlade> canonical_blade(std::vector<int> indices);

// a ^ b for sorted blades; nullopt if they share an index.
std::optional<SignedBlade> merge_blades(const Blade& a, const Blade& b);

// Contract the vector blade `vec` into the covector blade `form`, innermost
// first: i_{e_{j1} ^ ... ^ e_{jp}} = i_{e_jp} o ... o i_{e_j1}.
std::optional<SignedBlade> contract_blade(const Blade& vec, const Blade& form);

// All blades of a given degree in lexicographic order.
std::vector<Blade> blades_of_degree(int n, int degree);

class BladeBasis {
 public:
  BladeBasis(int n, int degree);
  int n() const { return n_; }
  int degree() const { return degree_; }
  std::size_t size() const { return blades_.size(); }
  const Blade& operator[](std::size_t i) const { return blades_[i]; }
  const std::vector<Blade>& blades() const { return blades_; }
  std::size_t index(const Blade& b) const;

 private:
  int n_;
  int degree_;
  std::vector<Blade> blades_;
  std::map<Blade, std::size_t> index_;
};

long long binomial(int n, int k);

}  // namespace gradedirac
