#pragma once

#include <string>

#include "gradedirac/dsl/parser.hpp"

namespace gradedirac::dsl {

// Canonical DSL text; parse(print(doc)) == doc.
std::string print(const Document& doc);
std::string print(const Statement& s);

// Zero forms and multivectors of positive degree print as 0*dx1^...^dxp so
// that the degree survives a round trip.
std::string print_form(const Form& f);
std::string print_multivector(const MultiVector& m);
std::string print_polynomial(const Polynomial& p, const ChartPtr& chart);
std::string print_value(const Value& v);
std::string print_section(const GradedSection& s);
std::string print_rational(const Rational& q);

}  // namespace gradedirac::dsl
