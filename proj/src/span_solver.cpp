#include "gradedirac/span_solver.hpp"

#include <map>
#include <set>
#include <stdexcept>

#include "gradedirac/sparse.hpp"

namespace gradedirac {

const char* to_string(Membership m) {
  switch (m) {
    case Membership::member:
      return "member";
    case Membership::not_member:
      return "not_member";
    case Membership::inconclusive:
      return "inconclusive";
  }
  return "unknown";
}

Vector evaluate(const PolyVector& v, const std::vector<Rational>& point) {
  Vector out;
  out.reserve(v.size());
  for (const auto& p : v) out.push_back(p.evaluate(point));
  return out;
}

std::size_t rank_at(const std::vector<PolyVector>& generators, const std::vector<Rational>& point) {
  if (generators.empty()) return 0;
  std::vector<Vector> rows;
  for (const auto& g : generators) rows.push_back(evaluate(g, point));
  return rank(Matrix::from_rows(rows, rows.front().size()));
}

std::vector<Exponent> monomials_up_to(std::size_t nvars, std::size_t vars, int d) {
  std::vector<Exponent> out;
  Exponent e(nvars, 0);
  // Depth-first enumeration over the first `vars` variables.
  auto rec = [&](auto&& self, std::size_t var, int remaining) -> void {
    if (var == vars) {
      out.push_back(e);
      return;
    }
    for (int k = 0; k <= remaining; ++k) {
      e[var] = static_cast<std::uint16_t>(k);
      self(self, var + 1, remaining - k);
    }
    e[var] = 0;
  };
  rec(rec, 0, d);
  return out;
}

namespace {

Exponent add(const Exponent& a, const Exponent& b) {
  Exponent r = a;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = static_cast<std::uint16_t>(r[i] + b[i]);
  return r;
}

bool all_constant(const std::vector<PolyVector>& gens) {
  for (const auto& g : gens) {
    for (const auto& p : g) {
      if (!p.is_constant()) return false;
    }
  }
  return true;
}

std::string render_point(const std::vector<Rational>& pt) {
  std::string s = "(";
  for (std::size_t i = 0; i < pt.size(); ++i) {
    if (i) s += ",";
    s += pt[i].get_str();
  }
  return s + ")";
}

SpanResult constant_case(const ChartPtr& chart, const PolyVector& target, const std::vector<PolyVector>& gens) {
  const std::size_t comps = target.size();
  Matrix g(comps, gens.size());
  for (std::size_t m = 0; m < gens.size(); ++m) {
    for (std::size_t i = 0; i < comps; ++i) g(i, m) = gens[m][i].constant_term();
  }
  std::set<Exponent, ExponentOrder> monos;
  for (const auto& p : target) {
    for (const auto& [e, c] : p.terms()) monos.insert(e);
  }
  SpanResult res;
  res.coefficients.assign(gens.size(), chart->zero());
  for (const auto& e : monos) {
    Vector rhs(comps);
    for (std::size_t i = 0; i < comps; ++i) rhs[i] = target[i].coefficient(e);
    auto c = solve(g, rhs);
    if (!c) {
      res.status = Membership::not_member;
      res.coefficients.clear();
      res.witness = "monomial " + Polynomial::monomial(e, 1).to_string(chart->variable_names()) +
                    " of the target leaves the constant span";
      return res;
    }
    for (std::size_t m = 0; m < gens.size(); ++m) res.coefficients[m].add_term(e, (*c)[m]);
  }
  res.status = Membership::member;
  return res;
}

}  // namespace

SpanResult express_in_span(const ChartPtr& chart, const PolyVector& target, const std::vector<PolyVector>& generators,
                           const SpanOptions& options) {
  for (const auto& g : generators) {
    if (g.size() != target.size()) throw std::invalid_argument("generator shape differs from target");
  }
  bool target_zero = true;
  for (const auto& p : target) target_zero = target_zero && p.is_zero();
  if (target_zero) {
    return {Membership::member, std::vector<Polynomial>(generators.size(), chart->zero()), {}};
  }
  if (all_constant(generators)) return constant_case(chart, target, generators);

  const std::size_t nv = chart->nvars();
  const auto monos = monomials_up_to(nv, nv, options.degree_bound);
  const std::size_t nunk = generators.size() * monos.size();
  std::map<std::pair<std::size_t, Exponent>, SparseRow> rows;
  for (std::size_t m = 0; m < generators.size(); ++m) {
    for (std::size_t j = 0; j < monos.size(); ++j) {
      const std::size_t col = m * monos.size() + j;
      for (std::size_t i = 0; i < target.size(); ++i) {
        for (const auto& [e, c] : generators[m][i].terms()) rows[{i, add(e, monos[j])}].emplace_back(col, c);
      }
    }
  }
  std::map<std::pair<std::size_t, Exponent>, Rational> rhs;
  for (std::size_t i = 0; i < target.size(); ++i) {
    for (const auto& [e, c] : target[i].terms()) {
      rhs[{i, e}] = c;
      rows[{i, e}];
    }
  }
  SparseEliminator elim(nunk);
  for (auto& [key, row] : rows) {
    auto it = rhs.find(key);
    elim.add_equation(std::move(row), it == rhs.end() ? Rational(0) : it->second);
  }
  if (auto sol = elim.solution()) {
    SpanResult res;
    res.status = Membership::member;
    res.coefficients.assign(generators.size(), chart->zero());
    for (std::size_t m = 0; m < generators.size(); ++m) {
      for (std::size_t j = 0; j < monos.size(); ++j) res.coefficients[m].add_term(monos[j], (*sol)[m * monos.size() + j]);
    }
    return res;
  }
  for (const auto& pt : options.sample_points) {
    Vector t = evaluate(target, pt);
    if (generators.empty()) {
      if (!is_zero(t)) return {Membership::not_member, {}, "nonzero target at " + render_point(pt)};
      continue;
    }
    Matrix g(target.size(), generators.size());
    for (std::size_t m = 0; m < generators.size(); ++m) {
      Vector v = evaluate(generators[m], pt);
      for (std::size_t i = 0; i < v.size(); ++i) g(i, m) = v[i];
    }
    if (!solve(g, t)) return {Membership::not_member, {}, "target leaves the fibre span at " + render_point(pt)};
  }
  return {Membership::inconclusive, {},
          "no combination with coefficients of degree <= " + std::to_string(options.degree_bound) +
              " and no pointwise obstruction at the sample points"};
}

}  // namespace gradedirac
