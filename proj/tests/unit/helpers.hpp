#pragma once

#include <gtest/gtest.h>

#include "gradedirac/exterior.hpp"
#include "gradedirac/graded_manifold.hpp"

namespace gradedirac {

// Readable gtest failure output.
template <ExteriorKind Kind>
void PrintTo(const Exterior<Kind>& e, std::ostream* os) {
  *os << e.to_string();
}
inline void PrintTo(const GradedSection& s, std::ostream* os) { *os << "(" << s.u.to_string() << ", " << s.alpha.to_string() << ")"; }

}  // namespace gradedirac

namespace gradedirac::testing {

inline int inversion_sign(const std::vector<int>& v) {
  int inv = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    for (std::size_t j = i + 1; j < v.size(); ++j) inv += v[i] > v[j];
  }
  return inv % 2 ? -1 : 1;
}

inline Polynomial var(const ChartPtr& c, const std::string& name) { return c->variable(name); }
inline Polynomial num(const ChartPtr& c, const Rational& q) { return c->constant(q); }

}  // namespace gradedirac::testing
