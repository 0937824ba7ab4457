#include <gtest/gtest.h>

#include "helpers.hpp"
#include "gradedirac/blade.hpp"
#include "gradedirac/linear_dirac.hpp"
#include "gradedirac/random.hpp"

using namespace gradedirac;

namespace {

Vector unit(std::size_t dim, std::size_t i) {
  Vector v(dim, 0);
  v[i] = 1;
  return v;
}

Vector blade_vec(int n, const Blade& b) { return unit(static_cast<std::size_t>(binomial(n, static_cast<int>(b.size()))), BladeBasis(n, static_cast<int>(b.size())).index(b)); }

Vector add(Vector a, const Vector& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  return a;
}

// Graph of a constant (k+1)-form: D_p = { (U, i_U omega) }.
std::vector<LevelSpace> form_graph(int n, int k, const Vector& omega) {
  std::vector<LevelSpace> out;
  for (int p = 1; p <= k; ++p) {
    std::vector<std::pair<Vector, Vector>> pairs;
    const auto& pairing = contraction_pairing(n, p, k + 1);
    const std::size_t dim = static_cast<std::size_t>(binomial(n, p));
    for (std::size_t i = 0; i < dim; ++i) pairs.emplace_back(unit(dim, i), pairing.apply(unit(dim, i), omega));
    out.push_back(LevelSpace::span(n, k, p, pairs));
  }
  return out;
}

LinearGradedDirac symplectic_counterexample() {
  // S = <e^01 + e^23> in Lambda^2 R^4 with sharp = 0
  const Vector w = add(blade_vec(4, {0, 1}), blade_vec(4, {2, 3}));
  return reconstruct_family(make_top_triple(4, 2, {w}, {Vector(4, 0)}));
}

}  // namespace

TEST(LinearDirac, SymplecticGraphInTwoDimensions) {
  const Vector omega = blade_vec(2, {0, 1});
  const auto family = form_graph(2, 1, omega);
  ASSERT_EQ(family.size(), 1u);
  EXPECT_EQ(family[0].dim(), 2u);
  EXPECT_TRUE(check_weak_lagrangian(family).passed());
  const LinearGradedDirac s = triple_from_graph(family);
  EXPECT_EQ(s.S(1).dim(), 2u);
  EXPECT_EQ(s.K(1).dim(), 0u);
  // i_{e_0}(e^01) = e^1, so sharp(e^1) = e_0
  EXPECT_EQ(s.level(1).sharp.apply(unit(2, 1)), unit(2, 0));
  EXPECT_TRUE(check_conditions(s).passed());
  EXPECT_EQ(graph(s), family);
}

TEST(LinearDirac, FormGraphsAreWeaklyLagrangian) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Rng rng(seed);
    const int k = rng.uniform(1, 3), n = rng.uniform(k + 1, 5);
    Vector omega(static_cast<std::size_t>(binomial(n, k + 1)), 0);
    for (auto& x : omega) x = rng.small_rational();
    const auto family = form_graph(n, k, omega);
    ASSERT_TRUE(check_weak_lagrangian(family).passed());
    const LinearGradedDirac s = triple_from_graph(family);
    ASSERT_TRUE(check_conditions(s).passed());
    ASSERT_EQ(graph(s), family);
  }
}

TEST(LinearDirac, GeneratedSpanMissesKernelInCounterexample) {
  const LinearGradedDirac s = symplectic_counterexample();
  const auto family = graph(s);
  ASSERT_EQ(family.size(), 2u);
  EXPECT_EQ(s.K(1).dim(), 0u);
  EXPECT_EQ(s.K(2).dim(), 5u);
  EXPECT_EQ(family[1].dim(), 9u);
  EXPECT_EQ(d1_generated(family[0], 2).dim(), 4u);
  EXPECT_FALSE(d1_generates(family[0], family).passed());
  EXPECT_EQ(d1_completed(family[0], 2), family[1]);
  EXPECT_TRUE(d1_determines(family[0], family).passed());
}

TEST(LinearDirac, TopTripleRoundTrip) {
  const LinearGradedDirac s = symplectic_counterexample();
  const auto family = graph(s);
  const LinearGradedDirac back = reconstruct_family(triple_from_weak_higher(family[0]));
  EXPECT_EQ(graph(back), family);
}

TEST(LinearDirac, IllDefinedSharpIsRejected) {
  // e^0 and 2 e^0 sent to non-proportional images
  const Vector a = blade_vec(2, {0});
  Vector b = a;
  b[0] = 2;
  EXPECT_THROW(make_top_triple(2, 1, {a, b}, {unit(2, 0), unit(2, 1)}), DomainError);
}

TEST(LinearDirac, KernelPerturbationKeepsTheGraph) {
  // S = <e^0> in Lambda^1 R^3, K_1 = <e_1, e_2>
  const Vector a = blade_vec(3, {0});
  const auto base = graph(reconstruct_family(make_top_triple(3, 1, {a}, {Vector(3, 0)})));
  const auto shifted = graph(reconstruct_family(make_top_triple(3, 1, {a}, {unit(3, 1)})));
  EXPECT_EQ(base, shifted);
  // e_0 is outside K_1 and breaks skew-symmetry
  EXPECT_THROW(reconstruct_family(make_top_triple(3, 1, {a}, {unit(3, 0)})), DomainError);
}

TEST(LinearDirac, PairingSigns) {
  // <<(e_0, e^1), (e_1, e^0)>> = i_{e_0} e^0 - (-1)^{1} i_{e_1} e^1 = 2 for k = 1
  const Vector r = graded_pairing_const(2, 1, 1, unit(2, 0), unit(2, 1), 1, unit(2, 1), unit(2, 0));
  ASSERT_EQ(r.size(), 1u);
  EXPECT_EQ(r[0], 2);
}

TEST(LinearDirac, IsotropyViolationIsReported) {
  // (e_0, e^0) pairs with itself to 2 for k = 1
  const LevelSpace d = LevelSpace::span(2, 1, 1, {{unit(2, 0), unit(2, 0)}});
  EXPECT_FALSE(check_isotropic(d, d).passed());
}
