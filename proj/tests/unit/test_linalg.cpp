#include <gtest/gtest.h>

#include <algorithm>

#include "gradedirac/blade.hpp"
#include "gradedirac/linalg.hpp"
#include "gradedirac/random.hpp"
#include "gradedirac/subspace.hpp"

using namespace gradedirac;

namespace {

// i_{e_j} applied in order j1, j2, ... on a sorted blade.
std::optional<std::pair<int, Blade>> contract_oracle(const Blade& vec, const Blade& form) {
  int sign = 1;
  Blade cur = form;
  for (int j : vec) {
    auto it = std::find(cur.begin(), cur.end(), j);
    if (it == cur.end()) return std::nullopt;
    if ((it - cur.begin()) % 2) sign = -sign;
    cur.erase(it);
  }
  return std::make_pair(sign, cur);
}

Vector contract_vectors(int n, int p, const Vector& u, int a, const Vector& alpha) {
  BladeBasis ub(n, p), fb(n, a), ob(n, a - p);
  Vector out(ob.size(), 0);
  for (std::size_t i = 0; i < ub.size(); ++i) {
    if (u[i] == 0) continue;
    for (std::size_t j = 0; j < fb.size(); ++j) {
      if (alpha[j] == 0) continue;
      auto r = contract_oracle(ub[i], fb[j]);
      if (r) out[ob.index(r->second)] += Rational(r->first) * u[i] * alpha[j];
    }
  }
  return out;
}

Vector unit(std::size_t dim, std::size_t i) {
  Vector v(dim, 0);
  v[i] = 1;
  return v;
}

// Brute-force span{ i_U alpha : U in Vee^{k-a}, alpha in S }.
RowSpace contraction_span_oracle(int n, int k, const std::vector<Vector>& s, int a) {
  std::vector<Vector> out;
  BladeBasis ub(n, k - a);
  for (const auto& alpha : s) {
    for (std::size_t i = 0; i < ub.size(); ++i) out.push_back(contract_vectors(n, k - a, unit(ub.size(), i), k, alpha));
  }
  return RowSpace::span(out, static_cast<std::size_t>(binomial(n, a)));
}

// { U in Vee^p : i_U alpha = 0 for alpha in S }.
RowSpace annihilator_oracle(int n, int k, const std::vector<Vector>& s, int p) {
  BladeBasis ub(n, p);
  std::vector<Vector> rows;
  const std::size_t out_dim = static_cast<std::size_t>(binomial(n, k - p));
  for (const auto& alpha : s) {
    for (std::size_t o = 0; o < out_dim; ++o) {
      Vector row(ub.size(), 0);
      for (std::size_t i = 0; i < ub.size(); ++i) row[i] = contract_vectors(n, p, unit(ub.size(), i), k, alpha)[o];
      rows.push_back(row);
    }
  }
  if (rows.empty()) return RowSpace::full(ub.size());
  return RowSpace::span(nullspace(Matrix::from_rows(rows, ub.size())), ub.size());
}

std::vector<Vector> random_vectors(Rng& rng, std::size_t count, std::size_t dim) {
  std::vector<Vector> out(count, Vector(dim, 0));
  for (auto& v : out) {
    for (auto& x : v) x = rng.coin() ? rng.small_rational() : Rational(0);
  }
  return out;
}

}  // namespace

TEST(Linalg, RrefOfKnownMatrix) {
  Matrix m = Matrix::from_rows({{1, 2, 3}, {2, 4, 7}, {1, 2, 4}}, 3);
  Echelon e = rref(m);
  EXPECT_EQ(e.reduced, Matrix::from_rows({{1, 2, 0}, {0, 0, 1}}, 3));
  EXPECT_EQ(e.pivots, (std::vector<std::size_t>{0, 2}));
  EXPECT_EQ(rank(m), 2u);
  auto ns = nullspace(m);
  ASSERT_EQ(ns.size(), 1u);
  EXPECT_TRUE(is_zero(multiply(m, ns[0])));
}

TEST(Linalg, SolveWithRationalEntries) {
  Matrix a = Matrix::from_rows({{Rational(1, 2), 1}, {1, Rational(-1, 3)}}, 2);
  auto x = solve(a, {1, 2});
  ASSERT_TRUE(x.has_value());
  EXPECT_EQ(multiply(a, *x), (Vector{1, 2}));
  EXPECT_EQ(*x, (Vector{2, 0}));
  Matrix singular = Matrix::from_rows({{1, 1}, {2, 2}}, 2);
  EXPECT_FALSE(solve(singular, {1, 0}).has_value());
}

TEST(Linalg, RandomNullspaceIsKernel) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    Rng rng(seed);
    const std::size_t r = static_cast<std::size_t>(rng.uniform(1, 5)), c = static_cast<std::size_t>(rng.uniform(1, 6));
    Matrix m = Matrix::from_rows(random_vectors(rng, r, c), c);
    auto ns = nullspace(m);
    ASSERT_EQ(ns.size() + rank(m), c);
    for (const auto& v : ns) ASSERT_TRUE(is_zero(multiply(m, v)));
  }
}

TEST(RowSpace, SumIntersectionDimensions) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    Rng rng(seed);
    const std::size_t n = 5;
    RowSpace a = RowSpace::span(random_vectors(rng, 2, n), n), b = RowSpace::span(random_vectors(rng, 3, n), n);
    ASSERT_EQ(a.sum(b).dim() + a.intersection(b).dim(), a.dim() + b.dim());
    ASSERT_TRUE(a.sum(b).contains(a));
    ASSERT_TRUE(a.contains(a.intersection(b)));
    ASSERT_EQ(a.orthogonal().dim(), n - a.dim());
  }
}

TEST(Subspace, ContractionPairingMatchesOracle) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    Rng rng(seed);
    const int n = rng.uniform(2, 5), a = rng.uniform(1, n), p = rng.uniform(0, a);
    const auto u = random_vectors(rng, 1, static_cast<std::size_t>(binomial(n, p)))[0];
    const auto alpha = random_vectors(rng, 1, static_cast<std::size_t>(binomial(n, a)))[0];
    ASSERT_EQ(contraction_pairing(n, p, a).apply(u, alpha), contract_vectors(n, p, u, a, alpha));
  }
}

TEST(Subspace, AnnihilatorsMatchBruteForce) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    Rng rng(seed);
    const int n = rng.uniform(2, 5), k = rng.uniform(1, n);
    const auto gens = random_vectors(rng, static_cast<std::size_t>(rng.uniform(1, 3)), static_cast<std::size_t>(binomial(n, k)));
    ConstSubspace s = ConstSubspace::span({n, SpaceKind::forms, k}, gens);
    for (int p = 1; p <= k; ++p) {
      ASSERT_EQ(annihilator_mv(s, p).space(), annihilator_oracle(n, k, s.basis(), p)) << "n=" << n << " k=" << k << " p=" << p;
    }
  }
}

TEST(Subspace, AuxiliaryLemmaAgainstEnumeration) {
  int checked = 0;
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    Rng rng(seed);
    const int n = rng.uniform(2, 5), k = rng.uniform(1, n);
    const auto gens = random_vectors(rng, static_cast<std::size_t>(rng.uniform(1, 3)), static_cast<std::size_t>(binomial(n, k)));
    ConstSubspace s = ConstSubspace::span({n, SpaceKind::forms, k}, gens);
    for (int a = 1; a <= k; ++a) {
      const RowSpace span = contraction_span_oracle(n, k, s.basis(), a);
      ASSERT_EQ(contraction_span(s, a).space(), span);
      ASSERT_EQ(annihilator_forms(annihilator_mv(s, a), a).space(), span);
      ++checked;
    }
  }
  EXPECT_GT(checked, 60);
}

TEST(Subspace, SymplecticBivectorAnnihilator) {
  // S = <e^01 + e^23> in Lambda^2 R^4: nondegenerate, five annihilating bivectors
  Vector w(6, 0);
  w[BladeBasis(4, 2).index({0, 1})] = 1;
  w[BladeBasis(4, 2).index({2, 3})] = 1;
  ConstSubspace s = ConstSubspace::span({4, SpaceKind::forms, 2}, {w});
  EXPECT_EQ(annihilator_mv(s, 1).dim(), 0u);
  EXPECT_EQ(annihilator_mv(s, 2).dim(), 5u);
}

TEST(Subspace, WedgeVectorsSign) {
  // e_1 ^ e_0 = -e_01
  Vector a = unit(3, 1), b = unit(3, 0);
  Vector r = wedge_vectors(3, 1, a, 1, b);
  EXPECT_EQ(r[BladeBasis(3, 2).index({0, 1})], -1);
}
