#include <gtest/gtest.h>

#include "helpers.hpp"
#include "gradedirac/field_theory.hpp"
#include "gradedirac/random.hpp"

using namespace gradedirac;

namespace {

Polynomial base_var(const FieldChart& fc, int i) { return fc.base()->variable(static_cast<std::size_t>(i)); }

// Random polynomial in (x, y) only.
Polynomial xy_poly(Rng& rng, const FieldChart& fc) {
  Polynomial f = fc.full()->zero();
  const int vars = fc.n() + fc.m();
  for (int t = 0; t < 3; ++t) {
    Polynomial m = fc.full()->constant(rng.small_rational());
    for (int d = rng.uniform(0, 2); d > 0; --d) m = m * fc.var(rng.uniform(0, vars - 1));
    f += m;
  }
  return f;
}

}  // namespace

TEST(FieldTheory, CoordinateLayout) {
  FieldChart fc(2, 2);
  EXPECT_EQ(fc.full()->variable_names(),
            (std::vector<std::string>{"x1", "x2", "y1", "y2", "p1_1", "p1_2", "p2_1", "p2_2", "p"}));
  EXPECT_EQ(fc.pm(1, 0), 6);
  EXPECT_EQ(fc.p(), 8);
  EXPECT_EQ(fc.reduced()->dim(), 8u);
  EXPECT_EQ(fc.base()->dim(), 2u);
}

TEST(FieldTheory, CanonicalFormInOneDimension) {
  FieldChart fc(1, 1);
  const auto& c = fc.full();
  const Form expected = wedge(dx(c, fc.p()), dx(c, fc.x(0))) + wedge(dx(c, fc.pm(0, 0)), dx(c, fc.y(0)));
  EXPECT_EQ(canonical_omega(fc), expected);
  EXPECT_TRUE(is_closed(canonical_omega(fc)));
}

TEST(FieldTheory, VolumeForms) {
  FieldChart fc(2, 1);
  const auto& c = fc.full();
  EXPECT_EQ(dn_x(fc), wedge(dx(c, 0), dx(c, 1)));
  EXPECT_EQ(dn1_x(fc, 0), dx(c, 1));
  EXPECT_EQ(dn1_x(fc, 1), -dx(c, 0));
}

TEST(FieldTheory, FieldSolvesContractionEquation) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    Rng rng(seed);
    FieldChart fc(rng.uniform(1, 3), rng.uniform(1, 2));
    std::vector<Polynomial> a, b;
    for (int i = 0; i < fc.m(); ++i) a.push_back(xy_poly(rng, fc));
    for (int mu = 0; mu < fc.n(); ++mu) b.push_back(xy_poly(rng, fc));
    const Form alpha = restricted_observable(fc, a, b);
    const MultiVector x = observable_field(fc, alpha);
    ASSERT_EQ(interior(x, canonical_omega(fc)), exterior_derivative(alpha));
    ASSERT_EQ(x, restricted_field(fc, a, b));
  }
}

TEST(FieldTheory, BracketWithHamiltonianHandValues) {
  FieldChart fc(1, 1);
  const auto& c = fc.full();
  const Form vol = dn_x(fc);
  // alpha = B = x, H = 0: {alpha, h} = dB/dx d^1x
  EXPECT_EQ(current_bracket_h(fc, Form::scalar(c, fc.var(fc.x(0))), c->zero()), vol);
  // alpha = y, H = p^2/2: {alpha, h} = dH/dp1 = p1
  const Polynomial h = Rational(1, 2) * fc.var(fc.pm(0, 0)) * fc.var(fc.pm(0, 0));
  EXPECT_EQ(current_bracket_h(fc, Form::scalar(c, fc.var(fc.y(0))), h), fc.var(fc.pm(0, 0)) * vol);
}

TEST(FieldTheory, BracketMatchesClosedForm) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    Rng rng(seed);
    FieldChart fc(rng.uniform(1, 3), rng.uniform(1, 2));
    std::vector<Polynomial> a, b;
    for (int i = 0; i < fc.m(); ++i) a.push_back(xy_poly(rng, fc));
    for (int mu = 0; mu < fc.n(); ++mu) b.push_back(xy_poly(rng, fc));
    const Polynomial h = random_polynomial(rng, fc.reduced(), 2, 3).substitute([&] {
      std::vector<Polynomial> imgs;
      for (std::size_t v = 0; v < fc.reduced()->nvars(); ++v) imgs.push_back(fc.var(static_cast<int>(v)));
      return imgs;
    }());
    const Form alpha = restricted_observable(fc, a, b);
    ASSERT_EQ(current_bracket_h(fc, alpha, h), restricted_current_bracket(fc, a, b, h));
    ASSERT_EQ(current_bracket_h(fc, alpha, h), current_bracket_eta(fc, alpha, hamiltonian_form(fc, h)));
  }
}

TEST(FieldTheory, ObservableShapeIsEnforced) {
  FieldChart fc(2, 1);
  const auto& c = fc.full();
  EXPECT_THROW(require_observable_shape(fc, dx(c, fc.p())), DomainError);
  EXPECT_THROW(observable_field(fc, fc.var(fc.pm(0, 0)) * dx(c, 1)), DomainError);
  EXPECT_NO_THROW(observable_field(fc, restricted_observable(fc, {c->constant(1)}, {c->zero(), c->zero()})));
}

TEST(FieldTheory, ConstantForceSolution) {
  // H = p^2/2 - y: dy/dx = p, dp/dx = 1, solved by y = x^2/2, p = x
  FieldChart fc(1, 1);
  const Polynomial h = Rational(1, 2) * fc.var(fc.pm(0, 0)) * fc.var(fc.pm(0, 0)) - fc.var(fc.y(0));
  const Polynomial x = base_var(fc, 0);
  CandidateSolution psi{{Rational(1, 2) * x * x}, {{x}}};
  const HdwResidual r = hdw_residual(fc, psi, h);
  EXPECT_TRUE(r.is_solution());
  for (const auto& f : intrinsic_residual(fc, psi, h)) EXPECT_TRUE(f.is_zero());
  CandidateSolution wrong{{x * x}, {{x}}};
  const HdwResidual rw = hdw_residual(fc, wrong, h);
  EXPECT_FALSE(rw.is_solution());
  EXPECT_EQ(rw.momentum[0][0], x);
}

TEST(FieldTheory, IntrinsicResidualMatchesLocalEquations) {
  // The intrinsic residual vanishes exactly when the local equations hold.
  FieldChart fc(2, 1);
  const Polynomial h = Rational(1, 2) * fc.var(fc.pm(0, 0)) * fc.var(fc.pm(0, 0)) + fc.var(fc.pm(1, 0));
  const Polynomial x1 = base_var(fc, 0), x2 = base_var(fc, 1);
  CandidateSolution psi{{x1 + x2}, {{fc.base()->constant(1)}, {fc.base()->zero()}}};
  EXPECT_TRUE(hdw_residual(fc, psi, h).is_solution());
  for (const auto& f : intrinsic_residual(fc, psi, h)) EXPECT_TRUE(f.is_zero());
  CandidateSolution off{{x1 * x2}, {{x2}, {fc.base()->zero()}}};
  bool any = false;
  for (const auto& f : intrinsic_residual(fc, off, h)) any = any || !f.is_zero();
  EXPECT_FALSE(hdw_residual(fc, off, h).is_solution());
  EXPECT_TRUE(any);
}

TEST(FieldTheory, ConstructedSolutionsConserveCurrents) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    Rng rng(seed);
    FieldChart fc(rng.uniform(1, 2), 1);
    std::vector<Polynomial> phi{random_polynomial(rng, fc.base(), 2, 3)};
    const ConstructedSolution s = construct_hdw_solution(fc, phi, xy_poly(rng, fc));
    ASSERT_TRUE(hdw_residual(fc, s.psi, s.h).is_solution());
    const Form alpha = restricted_observable(fc, {xy_poly(rng, fc)}, std::vector<Polynomial>(static_cast<std::size_t>(fc.n()), xy_poly(rng, fc)));
    const ConservationReport rep = conservation_check(fc, s.psi, alpha, s.h);
    ASSERT_TRUE(rep.verdict.passed()) << rep.verdict.message;
    ASSERT_TRUE(rep.defect.is_zero());
  }
}

TEST(FieldTheory, DefectFactorsThroughResidual) {
  FieldChart fc(1, 1);
  const Polynomial h = Rational(1, 2) * fc.var(fc.pm(0, 0)) * fc.var(fc.pm(0, 0)) - fc.var(fc.y(0));
  const Polynomial x = base_var(fc, 0);
  CandidateSolution off{{x * x * x}, {{x + fc.base()->constant(1)}}};
  const Form alpha = Form::scalar(fc.full(), fc.var(fc.y(0)) * fc.var(fc.y(0)));
  const ConservationReport rep = conservation_check(fc, off, alpha, h);
  EXPECT_EQ(rep.defect, rep.factorization);
  EXPECT_FALSE(rep.defect.is_zero());
}

TEST(FieldTheory, AntirepresentationOnSmallExample) {
  FieldChart fc(1, 1);
  const auto& c = fc.full();
  const Form a = Form::scalar(c, fc.var(fc.y(0)) * fc.var(fc.pm(0, 0)));
  const Form b = Form::scalar(c, fc.var(fc.x(0)) * fc.var(fc.y(0)));
  const Form eta = (fc.var(fc.p()) + fc.var(fc.y(0)) * fc.var(fc.pm(0, 0))) * dn_x(fc);
  const IdentityCheck r = antirep_check(fc, a, b, eta);
  EXPECT_TRUE(r.verdict.passed()) << r.verdict.message;
  EXPECT_TRUE(r.defect.is_zero());
}
