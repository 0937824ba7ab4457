#pragma once

#include <cstdint>
#include <random>

#include "gradedirac/exterior.hpp"

namespace gradedirac {

// Deterministic generator; bounded draws avoid the implementation-defined
// standard distributions so streams agree across platforms.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  std::uint64_t next() { return engine_(); }
  int uniform(int lo, int hi);
  bool coin() { return (next() & 1u) != 0; }
  Rational small_rational(int range = 3);

 private:
  std::mt19937_64 engine_;
};

struct RandomShape {
  int max_coefficient_degree = 2;
  int max_terms = 3;
  int coefficient_range = 3;
};

Polynomial random_polynomial(Rng& rng, const ChartPtr& chart, int max_degree, int max_terms, int range = 3);
Form random_form(Rng& rng, const ChartPtr& chart, int degree, const RandomShape& shape = {});
MultiVector random_multivector(Rng& rng, const ChartPtr& chart, int degree, const RandomShape& shape = {});
Form random_constant_form(Rng& rng, const ChartPtr& chart, int degree, int max_terms = 3);

std::vector<std::vector<Rational>> sample_points(const ChartPtr& chart, std::uint64_t seed, int count);

}  // namespace gradedirac
