#include <gtest/gtest.h>

#include "gradedirac/chart.hpp"
#include "gradedirac/polynomial.hpp"
#include "gradedirac/random.hpp"

using namespace gradedirac;

namespace {

const std::vector<std::string> kNames = {"x", "y", "z"};

Polynomial X() { return Polynomial::variable(3, 0); }
Polynomial Y() { return Polynomial::variable(3, 1); }
Polynomial Z() { return Polynomial::variable(3, 2); }

}  // namespace

TEST(Polynomial, ArithmeticIsExact) {
  Polynomial p = X() * Y() + Rational(1, 3) * Z();
  Polynomial q = p * p;
  EXPECT_EQ(q, X().pow(2) * Y().pow(2) + Rational(2, 3) * X() * Y() * Z() + Rational(1, 9) * Z().pow(2));
  EXPECT_TRUE((p - p).is_zero());
  EXPECT_EQ(q.total_degree(), 4);
}

TEST(Polynomial, PrintsHighestDegreeFirst) {
  Polynomial p = Rational(-1, 2) * Z().pow(2) + X() + Polynomial::constant(3, 3);
  EXPECT_EQ(p.to_string(kNames), "-1/2*z**2 + x + 3");
  EXPECT_EQ(Polynomial(3).to_string(kNames), "0");
}

TEST(Polynomial, DerivativeAndIntegral) {
  Polynomial p = X().pow(3) * Y() + Rational(5) * Y();
  EXPECT_EQ(p.derivative(0), Rational(3) * X().pow(2) * Y());
  EXPECT_EQ(p.derivative(2), Polynomial(3));
  EXPECT_EQ(p.integral(2).derivative(2), p);
}

TEST(Polynomial, EvaluateAndSubstitute) {
  Polynomial p = X() * X() - Y();
  EXPECT_EQ(p.evaluate({Rational(1, 2), 2, 7}), Rational(-7, 4));
  Polynomial s = p.substitute({Y() + Z(), Z(), X()});
  EXPECT_EQ(s, Y().pow(2) + Rational(2) * Y() * Z() + Z().pow(2) - Z());
  EXPECT_EQ(p.partial_evaluate({{0, 3}}), Polynomial::constant(3, 9) - Y());
}

TEST(Polynomial, DependsOn) {
  Polynomial p = X() * Z();
  EXPECT_TRUE(p.depends_on(0));
  EXPECT_FALSE(p.depends_on(1));
}

TEST(Polynomial, RandomProductDistributesOverSum) {
  auto chart = make_chart(3);
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    Rng rng(seed);
    Polynomial a = random_polynomial(rng, chart, 2, 3), b = random_polynomial(rng, chart, 2, 3),
               c = random_polynomial(rng, chart, 2, 3);
    ASSERT_EQ(a * (b + c), a * b + a * c);
    ASSERT_EQ((a * b).derivative(1), a.derivative(1) * b + a * b.derivative(1));
  }
}

TEST(Chart, ParametersFollowCoordinates) {
  auto c = make_chart({"x", "y"}, {}, {"a"});
  EXPECT_EQ(c->dim(), 2u);
  EXPECT_EQ(c->nvars(), 3u);
  EXPECT_EQ(*c->index_of("a"), 2u);
  EXPECT_FALSE(c->index_of("q").has_value());
  EXPECT_TRUE(same_chart(c, make_chart({"x", "y"}, {}, {"a"})));
  EXPECT_FALSE(same_chart(c, make_chart({"x", "y"})));
}

TEST(Rng, StreamsAreReproducible) {
  Rng a(7), b(7);
  for (int i = 0; i < 20; ++i) ASSERT_EQ(a.uniform(-5, 5), b.uniform(-5, 5));
  auto chart = make_chart(4);
  EXPECT_EQ(sample_points(chart, 3, 4), sample_points(chart, 3, 4));
}
