#include "gradedirac/random.hpp"

namespace gradedirac {

int Rng::uniform(int lo, int hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo + 1);
  return lo + static_cast<int>(next() % span);
}

Rational small_rational_impl(Rng& rng, int range) {
  Rational q(rng.uniform(-range, range), rng.uniform(1, 2));
  q.canonicalize();
  return q;
}

Rational Rng::small_rational(int range) { return small_rational_impl(*this, range); }

Polynomial random_polynomial(Rng& rng, const ChartPtr& chart, int max_degree, int max_terms, int range) {
  Polynomial p = chart->zero();
  const int terms = rng.uniform(1, max_terms);
  for (int t = 0; t < terms; ++t) {
    Exponent e(chart->nvars(), 0);
    const int deg = rng.uniform(0, max_degree);
    for (int i = 0; i < deg; ++i) ++e[static_cast<std::size_t>(rng.uniform(0, static_cast<int>(chart->dim()) - 1))];
    int c = rng.uniform(-range, range);
    if (c == 0) c = 1;
    p.add_term(e, c);
  }
  return p;
}

namespace {

template <class T>
T random_exterior(Rng& rng, const ChartPtr& chart, int degree, const RandomShape& shape) {
  T r(chart, degree);
  auto blades = blades_of_degree(static_cast<int>(chart->dim()), degree);
  if (blades.empty()) return r;
  const int terms = rng.uniform(1, shape.max_terms);
  for (int t = 0; t < terms; ++t) {
    const auto& b = blades[static_cast<std::size_t>(rng.uniform(0, static_cast<int>(blades.size()) - 1))];
    r.add_term(b, random_polynomial(rng, chart, shape.max_coefficient_degree, 2, shape.coefficient_range));
  }
  return r;
}

}  // namespace

Form random_form(Rng& rng, const ChartPtr& chart, int degree, const RandomShape& shape) {
  return random_exterior<Form>(rng, chart, degree, shape);
}

MultiVector random_multivector(Rng& rng, const ChartPtr& chart, int degree, const RandomShape& shape) {
  return random_exterior<MultiVector>(rng, chart, degree, shape);
}

Form random_constant_form(Rng& rng, const ChartPtr& chart, int degree, int max_terms) {
  RandomShape shape;
  shape.max_coefficient_degree = 0;
  shape.max_terms = max_terms;
  return random_exterior<Form>(rng, chart, degree, shape);
}

std::vector<std::vector<Rational>> sample_points(const ChartPtr& chart, std::uint64_t seed, int count) {
  Rng rng(seed ^ 0x9e3779b97f4a7c15ULL);
  std::vector<std::vector<Rational>> pts;
  for (int i = 0; i < count; ++i) {
    std::vector<Rational> p;
    for (std::size_t v = 0; v < chart->nvars(); ++v) p.push_back(rng.small_rational(4));
    pts.push_back(std::move(p));
  }
  return pts;
}

}  // namespace gradedirac
