#pragma once

#include <string>
#include <vector>

#include "gradedirac/chart.hpp"
#include "gradedirac/linalg.hpp"

namespace gradedirac {

// Section of a trivial bundle, one polynomial per fibre coordinate.
using PolyVector = std::vector<Polynomial>;

enum class Membership { member, not_member, inconclusive };

const char* to_string(Membership m);

struct SpanResult {
  Membership status = Membership::inconclusive;
  std::vector<Polynomial> coefficients;  // target = sum coefficients[m] * generators[m]
  std::string witness;                   // why membership was refuted
};

struct SpanOptions {
  int degree_bound = 2;
  std::vector<std::vector<Rational>> sample_points;
};

// Decides target in the C^infty span of the generators. Constant generators
// are decided exactly monomial by monomial; otherwise a polynomial ansatz of
// bounded degree proves membership and a pointwise rank test refutes it.
SpanResult express_in_span(const ChartPtr& chart, const PolyVector& target, const std::vector<PolyVector>& generators,
                           const SpanOptions& options);

Vector evaluate(const PolyVector& v, const std::vector<Rational>& point);
std::size_t rank_at(const std::vector<PolyVector>& generators, const std::vector<Rational>& point);
// All exponents of total degree <= d in the first `vars` of `nvars` variables.
std::vector<Exponent> monomials_up_to(std::size_t nvars, std::size_t vars, int d);

}  // namespace gradedirac
