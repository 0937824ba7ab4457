#include <gtest/gtest.h>

#include "helpers.hpp"
#include "gradedirac/graded_manifold.hpp"
#include "gradedirac/random.hpp"

using namespace gradedirac;

namespace {

RandomShape small() {
  RandomShape s;
  s.max_coefficient_degree = 2;
  s.max_terms = 2;
  return s;
}

GradedSection graph_section(const MultiVector& u, const Form& omega) {
  return GradedSection(omega.degree() - 1, u, interior(u, omega));
}

GradedSection random_section(Rng& rng, const ChartPtr& c, int k, int p) {
  return GradedSection(k, random_multivector(rng, c, p, small()), random_form(rng, c, k + 1 - p, small()));
}

}  // namespace

TEST(GradedManifold, SectionDegrees) {
  auto c = make_chart(3);
  GradedSection s(2, partial(c, 0), wedge(dx(c, 1), dx(c, 2)));
  EXPECT_EQ(s.p, 1);
  EXPECT_EQ(s.k, 2);
  EXPECT_THROW(GradedSection(2, partial(c, 0), dx(c, 1)), DomainError);
}

TEST(GradedManifold, PairingGradedSymmetry) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    Rng rng(seed);
    auto c = make_chart(4);
    const int k = rng.uniform(1, 3);
    const int p = rng.uniform(1, k), q = rng.uniform(1, k + 1 - p);
    const GradedSection a = random_section(rng, c, k, p), b = random_section(rng, c, k, q);
    const int s = (p * q) % 2 ? 1 : -1;  // <<b, a>> = -(-1)^{pq} <<a, b>>
    ASSERT_EQ(graded_pairing(b, a), Rational(s) * graded_pairing(a, b));
  }
}

TEST(GradedManifold, GraphSectionsAreIsotropic) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    Rng rng(seed);
    auto c = make_chart(4);
    const int k = rng.uniform(1, 3);
    const Form omega = random_form(rng, c, k + 1, small());
    const int p = rng.uniform(1, k), q = rng.uniform(1, k + 1 - p);
    const auto a = graph_section(random_multivector(rng, c, p, small()), omega);
    const auto b = graph_section(random_multivector(rng, c, q, small()), omega);
    ASSERT_TRUE(graded_pairing(a, b).is_zero());
  }
}

TEST(GradedManifold, CourantAgreesWithIsotropicFormOnIsotropicPairs) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    Rng rng(seed);
    auto c = make_chart(4);
    const int k = rng.uniform(1, 3);
    const Form omega = random_form(rng, c, k + 1, small());
    const int p = rng.uniform(1, k), q = rng.uniform(1, k + 1 - p);
    const auto a = graph_section(random_multivector(rng, c, p, small()), omega);
    const auto b = graph_section(random_multivector(rng, c, q, small()), omega);
    ASSERT_EQ(courant_bracket(a, b), courant_bracket_isotropic(a, b));
  }
}

TEST(GradedManifold, ClosedGraphBracket) {
  // [[(U, i_U w), (V, i_V w)]] = ([U, V], i_{[U, V]} w) for closed w
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    Rng rng(seed);
    auto c = make_chart(4);
    const int k = rng.uniform(1, 3);
    const Form omega = exterior_derivative(random_form(rng, c, k, small()));
    const int p = rng.uniform(1, k), q = rng.uniform(1, k + 1 - p);
    const auto a = graph_section(random_multivector(rng, c, p, small()), omega);
    const auto b = graph_section(random_multivector(rng, c, q, small()), omega);
    const GradedSection r = courant_bracket(a, b);
    ASSERT_EQ(r.alpha, interior(r.u, omega)) << "k=" << k << " p=" << p << " q=" << q;
  }
}

TEST(GradedManifold, BracketOfCoordinateGraphGeneratorsDetectsDOmega) {
  auto c = make_chart({"x", "y", "z"});
  const Form w = c->variable("y") * wedge(dx(c, 0), dx(c, 2));
  const auto a = graph_section(partial(c, 0), w), b = graph_section(partial(c, 1), w);
  // [d/dx, d/dy] = 0, so the defect is the form part: i_{d/dx ^ d/dy} dw
  const GradedSection r = courant_bracket(a, b);
  EXPECT_TRUE(r.u.is_zero());
  EXPECT_EQ(r.alpha, interior(wedge(partial(c, 0), partial(c, 1)), exterior_derivative(w)));
  EXPECT_EQ(r.alpha, -dx(c, 2));
}

TEST(GradedManifold, GraphInvolutiveIffClosed) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    Rng rng(seed);
    const int n = rng.uniform(2, 4), k = rng.uniform(1, n - 1);
    auto c = make_chart(static_cast<std::size_t>(n));
    const Form exact = exterior_derivative(random_form(rng, c, k, small()));
    ASSERT_TRUE(check_graph_involutive(exact).passed());
    const Form w = random_form(rng, c, k + 1, small());
    ASSERT_EQ(check_graph_involutive(w).passed(), is_closed(w));
  }
}

TEST(GradedManifold, InteriorReductionIdentity) {
  // Unsymmetrized bracket: [[a, i_X b]] = i_X [[a, b]] + (-1)^{(p-1) q} i_{[U, X]} b
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    Rng rng(seed);
    auto c = make_chart(4);
    const int k = rng.uniform(2, 3);
    const int p = rng.uniform(1, k - 1);
    const int q = rng.uniform(1, k - p);
    const GradedSection a = random_section(rng, c, k, p), b = random_section(rng, c, k, q);
    const MultiVector x = random_multivector(rng, c, 1, small());
    const GradedSection lhs = courant_bracket_isotropic(a, interior(x, b));
    const GradedSection rhs =
        interior(x, courant_bracket_isotropic(a, b)) +
        Rational((p - 1) * q % 2 ? -1 : 1) * interior(schouten_nijenhuis(a.u, x), b);
    ASSERT_EQ(lhs, rhs) << "k=" << k << " p=" << p << " q=" << q;
  }
}

TEST(GradedManifold, SubbundleFromLevelOne) {
  auto c = make_chart(3);
  const Form w = wedge(wedge(dx(c, 0), dx(c, 1)), dx(c, 2));
  std::vector<GradedSection> d1;
  for (int i = 0; i < 3; ++i) d1.push_back(graph_section(partial(c, i), w));
  GeneratedSubbundle d = GeneratedSubbundle::from_level_one(c, 2, d1);
  // i_{d_j} of (d_j, i_{d_j} w) vanishes, leaving 3 * 2 generators
  EXPECT_EQ(d.level(2).size(), 6u);
  const auto fam = d.at_point({0, 0, 0});
  EXPECT_EQ(fam[0].dim(), 3u);
  EXPECT_EQ(fam[1].dim(), 3u);
  EXPECT_TRUE(check_weak_lagrangian_at(d, {{0, 0, 0}, {1, 2, 3}}).passed());
  SpanOptions o;
  o.sample_points = {{1, 2, 3}};
  EXPECT_TRUE(check_involutive(d, o).verdict.passed());
}

TEST(GradedManifold, NonInvolutiveDirac) {
  // D_1 spanned by graph generators of a non-closed 2-form
  auto c = make_chart({"x", "y", "z"});
  const Form w = c->variable("y") * wedge(dx(c, 0), dx(c, 2));
  std::vector<GradedSection> d1;
  for (int i = 0; i < 3; ++i) d1.push_back(graph_section(partial(c, i), w));
  GeneratedSubbundle d = GeneratedSubbundle::from_level_one(c, 1, d1);
  SpanOptions o;
  o.sample_points = {{1, 2, 3}};
  const auto rep = check_involutive(d, o);
  EXPECT_EQ(rep.verdict.status, Status::fail);
  EXPECT_EQ(rep.level_one, Status::fail);
}
