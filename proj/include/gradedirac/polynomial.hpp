#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace gradedirac {

using Rational = mpq_class;
using Exponent = std::vector<std::uint16_t>;

std::string to_string(const Rational& q);

// Terms are kept highest total degree first, then lexicographically
// (x0 before x1), so iteration order is also the printing order.
struct ExponentOrder {
  bool operator()(const Exponent& a, const Exponent& b) const;
};

// Sparse multivariate polynomial with rational coefficients over a fixed
// number of variables. Zero coefficients are never stored.
class Polynomial {
 public:
  using TermMap = std::map<Exponent, Rational, ExponentOrder>;

  explicit Polynomial(std::size_t nvars = 0);

  static Polynomial constant(std::size_t nvars, const Rational& c);
  static Polynomial variable(std::size_t nvars, std::size_t index);
  static Polynomial monomial(const Exponent& e, const Rational& c);

  std::size_t nvars() const { return nvars_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Rational constant_term() const;
  Rational coefficient(const Exponent& e) const;

  // -1 for the zero polynomial.
  int total_degree() const;
  // Degree counting only the first `nvars` variables.
  int total_degree_in(std::size_t first_vars) const;
  bool depends_on(std::size_t var) const;

  void add_term(const Exponent& e, const Rational& c);

  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const Rational& c);
  Polynomial operator-() const;

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(Polynomial a, const Rational& c) { return a *= c; }
  friend Polynomial operator*(const Rational& c, Polynomial a) { return a *= c; }
  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
  }
  friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

  Polynomial pow(unsigned k) const;
  Polynomial derivative(std::size_t var) const;
  // Antiderivative in `var` with zero constant of integration.
  Polynomial integral(std::size_t var) const;
  Rational evaluate(const std::vector<Rational>& point) const;
  // Replace variable i by images[i]; all images share one ring.
  Polynomial substitute(const std::vector<Polynomial>& images) const;
  // Evaluate only the listed variables, keeping the ring.
  Polynomial partial_evaluate(const std::vector<std::pair<std::size_t, Rational>>& values) const;

  std::string to_string(const std::vector<std::string>& names) const;

 private:
  void check_ring(const Polynomial& o) const;

  std::size_t nvars_;
  TermMap terms_;
};

}  // namespace gradedirac
