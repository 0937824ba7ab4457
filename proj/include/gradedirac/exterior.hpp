#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "gradedirac/blade.hpp"
#include "gradedirac/chart.hpp"
#include "gradedirac/polynomial.hpp"

namespace gradedirac {

class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class ExteriorKind { form, multivector };

// Sparse element of Lambda^p T*M or of the p-th exterior power of TM with
// polynomial coefficients on strictly increasing blades.
template <ExteriorKind Kind>
class Exterior {
 public:
  using TermMap = std::map<Blade, Polynomial>;

  Exterior() = default;
  Exterior(ChartPtr chart, int degree);

  // Accepts unsorted indices; a repeated index gives zero.
  static Exterior basis(ChartPtr chart, const std::vector<int>& indices);
  static Exterior scalar(ChartPtr chart, const Polynomial& f);

  const ChartPtr& chart() const { return chart_; }
  int degree() const { return degree_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Polynomial coefficient(const Blade& b) const;
  bool has_constant_coefficients() const;
  // Largest coefficient degree in the coordinates; -1 when zero.
  int coefficient_degree() const;

  void add_term(const Blade& b, const Polynomial& f);

  Exterior& operator+=(const Exterior& o);
  Exterior& operator-=(const Exterior& o);
  Exterior operator-() const;
  friend Exterior operator+(Exterior a, const Exterior& b) { return a += b; }
  friend Exterior operator-(Exterior a, const Exterior& b) { return a -= b; }
  friend Exterior operator*(const Polynomial& f, const Exterior& a) { return a.scaled(f); }
  friend Exterior operator*(const Rational& c, const Exterior& a) { return a.scaled(c); }
  friend bool operator==(const Exterior& a, const Exterior& b) {
    return a.degree_ == b.degree_ && same_chart(a.chart_, b.chart_) && a.terms_ == b.terms_;
  }
  friend bool operator!=(const Exterior& a, const Exterior& b) { return !(a == b); }

  Exterior scaled(const Polynomial& f) const;
  Exterior scaled(const Rational& c) const;

  template <class F>
  Exterior map_coefficients(F&& f) const {
    Exterior r(chart_, degree_);
    for (const auto& [b, c] : terms_) r.add_term(b, f(c));
    return r;
  }

  // Constant-coefficient values at a point; parameters must be included.
  std::map<Blade, Rational> evaluate(const std::vector<Rational>& point) const;

  std::string to_string() const;

 private:
  void check_compatible(const Exterior& o) const;

  ChartPtr chart_;
  int degree_ = 0;
  TermMap terms_;
};

using Form = Exterior<ExteriorKind::form>;
using MultiVector = Exterior<ExteriorKind::multivector>;

extern template class Exterior<ExteriorKind::form>;
extern template class Exterior<ExteriorKind::multivector>;

// dx^{i} and the coordinate vector field for index i.
Form dx(const ChartPtr& chart, int i);
MultiVector partial(const ChartPtr& chart, int i);
Form volume_form(const ChartPtr& chart, const std::vector<int>& indices);

Form wedge(const Form& a, const Form& b);
MultiVector wedge(const MultiVector& a, const MultiVector& b);

// i_{W^U} = i_U o i_W. Throws DomainError when deg U > deg alpha.
Form interior(const MultiVector& u, const Form& alpha);
Form exterior_derivative(const Form& alpha);

// Lie bracket of vector fields.
MultiVector lie_bracket(const MultiVector& x, const MultiVector& y);
// Schouten-Nijenhuis bracket, degree p+q-1. Degree-0 arguments are rejected.
MultiVector schouten_nijenhuis(const MultiVector& u, const MultiVector& v);
// L_U alpha = d i_U alpha - (-1)^p i_U d alpha.
Form lie_derivative(const MultiVector& u, const Form& alpha);
// X(f) for a vector field X.
Polynomial apply_vector_field(const MultiVector& x, const Polynomial& f);

// Radial homotopy about the chart's star center; requires degree >= 1.
Form poincare_homotopy(const Form& alpha);
bool is_closed(const Form& alpha);
// A primitive for closed forms of degree >= 1, nullopt otherwise.
std::optional<Form> exact_primitive(const Form& alpha);
bool is_exact(const Form& alpha);

// Pullback along F: source -> target, where images[j] is the j-th target
// coordinate written in the source ring. Parameters are identified.
Form pullback(const Form& alpha, const ChartPtr& source, const std::vector<Polynomial>& images);

int sign_power(long long exponent);

}  // namespace gradedirac
