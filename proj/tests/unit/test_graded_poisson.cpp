#include <gtest/gtest.h>

#include "helpers.hpp"
#include "gradedirac/graded_poisson.hpp"

using namespace gradedirac;

namespace {

HamiltonianForm ham(const Form& f, const GradedPoissonStructure& p) {
  auto h = is_hamiltonian(f, p);
  EXPECT_EQ(h.status, Membership::member) << f.to_string();
  return *h.form;
}

Form scalar(const ChartPtr& c, const Polynomial& f) { return Form::scalar(c, f); }

}  // namespace

TEST(GradedPoisson, CanonicalPairSign) {
  auto c = make_chart({"q", "p"});
  const auto P = GradedPoissonStructure::from_form(wedge(dx(c, 1), dx(c, 0)));
  const auto q = ham(scalar(c, c->variable("q")), P), p = ham(scalar(c, c->variable("p")), P);
  EXPECT_EQ(P.sharp(dx(c, 0)).value, partial(c, 1));
  EXPECT_EQ(poisson_bracket(P, q, p), scalar(c, c->constant(-1)));
  EXPECT_EQ(poisson_bracket(P, p, q), scalar(c, c->constant(1)));
}

TEST(GradedPoisson, SymplecticPlaneBracket) {
  auto c = make_chart({"x", "y"});
  const auto P = GradedPoissonStructure::from_form(wedge(dx(c, 0), dx(c, 1)));
  const Polynomial x = c->variable("x"), y = c->variable("y");
  const auto hx = ham(scalar(c, x), P), hy = ham(scalar(c, y), P);
  EXPECT_EQ(poisson_bracket(P, hx, hy), scalar(c, c->constant(1)));
  // {x^2, y} = 2x {x, y}
  EXPECT_EQ(poisson_bracket(P, ham(scalar(c, x * x), P), hy), scalar(c, Rational(2) * x));
  EXPECT_EQ(hamiltonian_vector_field(P, hy), partial(c, 0));
  EXPECT_TRUE(P.check_nondegenerate().passed());
}

TEST(GradedPoisson, DegenerateStructure) {
  auto c = make_chart({"x", "y", "z"});
  const auto P = GradedPoissonStructure::from_form(wedge(dx(c, 0), dx(c, 1)));
  EXPECT_FALSE(P.check_nondegenerate().passed());
  // d z is not in S = span{dx, dy}
  EXPECT_EQ(is_hamiltonian(scalar(c, c->variable("z")), P).status, Membership::not_member);
}

TEST(GradedPoisson, BivectorLeafForm) {
  // sharp(a)^j = L^{ji} a_i with L = d/dx ^ d/dy: sharp(dx) = -d/dy, sharp(dy) = d/dx
  auto c = make_chart({"x", "y"});
  const auto P = GradedPoissonStructure::extend_from_top(c, 1, {dx(c, 0), dx(c, 1)}, {-partial(c, 1), partial(c, 0)});
  EXPECT_TRUE(P.check_nondegenerate().passed());
  const LeafForm leaf = leaf_form_at(P, {0, 0});
  ASSERT_EQ(leaf.basis.size(), 2u);
  EXPECT_EQ(leaf.basis[0], (Vector{1, 0}));
  EXPECT_EQ(leaf.basis[1], (Vector{0, 1}));
  EXPECT_EQ(leaf.coefficients.at({0, 1}), 1);
}

TEST(GradedPoisson, FoliationRoundTrip) {
  auto c = make_chart({"x", "y", "z"});
  const auto P = foliation_to_structure(c, {0, 1}, wedge(dx(c, 0), dx(c, 1)));
  EXPECT_TRUE(P.check_nondegenerate().passed());
  const LeafForm leaf = leaf_form_at(P, {1, 1, 1});
  ASSERT_EQ(leaf.basis.size(), 2u);
  // Vector{1, 0, 0} is dx^dy in the (01, 02, 12) blade basis
  EXPECT_EQ(leaf.coefficients.at({0, 1}), evaluate_form(3, 2, Vector{1, 0, 0}, {leaf.basis[0], leaf.basis[1]}));
}

TEST(GradedPoisson, ClosedSectionsOfTheFourDimensionalFamily) {
  auto c = make_chart({"x", "y", "z", "t"});
  const Form alpha = wedge(dx(c, 0) + c->variable("y") * dx(c, 2), dx(c, 3));
  for (int bound = 0; bound <= 3; ++bound) EXPECT_TRUE(closed_section_search({alpha}, bound).empty()) << bound;
}

TEST(GradedPoisson, ClosedSectionsOfDx) {
  // f dx is closed iff f depends on x only: 1, x, ..., x^bound
  auto c = make_chart(3);
  for (int bound = 0; bound <= 3; ++bound) {
    const auto basis = closed_section_search({dx(c, 0)}, bound);
    EXPECT_EQ(basis.size(), static_cast<std::size_t>(bound + 1));
    for (const auto& f : basis) EXPECT_TRUE(is_closed(f));
  }
}

TEST(GradedPoisson, LowerLevelsFromTop) {
  // k = 2 on R^3 from the volume form: S^1 = all 1-forms
  auto c = make_chart(3);
  const auto P = GradedPoissonStructure::from_form(wedge(wedge(dx(c, 0), dx(c, 1)), dx(c, 2)));
  EXPECT_EQ(P.k(), 2);
  for (int i = 0; i < 3; ++i) {
    EXPECT_EQ(P.sharp(dx(c, i)).status, Membership::member);
  }
  // sharp_1(i_{d_j} i_X w) = X ^ d_j
  const auto r = P.sharp(dx(c, 2));
  ASSERT_TRUE(r.value.has_value());
  EXPECT_EQ(r.value->degree(), 2);
  EXPECT_EQ(interior(*r.value, wedge(wedge(dx(c, 0), dx(c, 1)), dx(c, 2))), dx(c, 2));
}

TEST(GradedPoisson, PropertiesOnVolumeForm) {
  auto c = make_chart(3);
  const auto P = GradedPoissonStructure::from_form(wedge(wedge(dx(c, 0), dx(c, 1)), dx(c, 2)));
  PropertyOptions o;
  o.cases = 10;
  o.coefficient_degree = 1;
  for (const auto& out : check_bracket_properties(P, o)) {
    EXPECT_TRUE(out.verdict.passed()) << out.name << ": " << out.verdict.message;
  }
}

TEST(GradedPoisson, JacobiLemmaHoldsOnVolumeForm) {
  auto c = make_chart(3);
  const auto P = GradedPoissonStructure::from_form(wedge(wedge(dx(c, 0), dx(c, 1)), dx(c, 2)));
  const Polynomial x = c->variable(0), y = c->variable(1), z = c->variable(2);
  const auto a = ham(x * dx(c, 1), P), b = ham(y * z * dx(c, 0), P), g = ham(x * x * dx(c, 2), P);
  EXPECT_TRUE(jacobi_lemma_defect(P, a, b, g).is_zero());
}
