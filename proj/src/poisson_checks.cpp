#include <array>
#include <map>
#include <memory>
#include <sstream>

#include "gradedirac/graded_poisson.hpp"
#include "gradedirac/subspace.hpp"

namespace gradedirac {

namespace {

int deg(const GradedPoissonStructure& p, const HamiltonianForm& h) { return p.k() - h.level; }

std::string show(const HamiltonianForm& h) { return h.form.to_string(); }

std::string triple(const HamiltonianForm& a, const HamiltonianForm& b) {
  return "alpha = " + show(a) + "; beta = " + show(b);
}

std::string triple(const HamiltonianForm& a, const HamiltonianForm& b, const HamiltonianForm& c) {
  return triple(a, b) + "; gamma = " + show(c);
}

bool vanishes_at(const Form& f, const std::vector<Rational>& point) {
  for (const auto& [b, v] : f.evaluate(point)) {
    if (v != 0) return false;
  }
  return true;
}

// U lies in K_p with constant-coefficient K, monomial by monomial.
bool in_kernel(const GradedPoissonStructure& p, const MultiVector& u, int order) {
  const auto& k = p.linear().K(order);
  const int n = static_cast<int>(p.chart()->dim());
  BladeBasis basis(n, order);
  std::map<Exponent, Vector, ExponentOrder> by_monomial;
  for (const auto& [b, c] : u.terms()) {
    for (const auto& [e, q] : c.terms()) {
      auto& v = by_monomial[e];
      if (v.empty()) v.assign(basis.size(), 0);
      v[basis.index(b)] = q;
    }
  }
  for (const auto& [e, v] : by_monomial) {
    if (!k.contains(v)) return false;
  }
  return true;
}

class Pools {
 public:
  Pools(const GradedPoissonStructure& p, int degree) : p_(p), degree_(degree) {}

  const HamiltonianSampler& get(int level, const std::vector<bool>& allowed = {}) {
    std::vector<bool> mask = allowed.empty() ? std::vector<bool>(p_.chart()->dim(), true) : allowed;
    auto key = std::make_pair(level, mask);
    auto it = samplers_.find(key);
    if (it == samplers_.end()) {
      it = samplers_.emplace(key, std::make_unique<HamiltonianSampler>(p_, level, degree_, mask)).first;
    }
    return *it->second;
  }

  // Null when the sampler has no forms at all.
  std::optional<HamiltonianForm> draw(Rng& rng, int level, const std::vector<bool>& allowed = {}) {
    const auto& s = get(level, allowed);
    if (s.empty()) return std::nullopt;
    return s.draw(rng);
  }

 private:
  const GradedPoissonStructure& p_;
  int degree_;
  std::map<std::pair<int, std::vector<bool>>, std::unique_ptr<HamiltonianSampler>> samplers_;
};

struct Tally {
  PropertyOutcome out;
  explicit Tally(std::string name) { out.name = std::move(name); }
  void fail(const std::string& msg, const std::string& witness) {
    if (out.verdict.status != Status::fail) out.verdict = Verdict::fail(msg).with("witness", witness);
  }
  void inconclusive(const std::string& msg) {
    if (out.verdict.status == Status::pass) out.verdict = Verdict::inconclusive(msg);
  }
  PropertyOutcome done(const std::string& vacuous = "no admissible instances") {
    if (out.instances == 0 && out.verdict.status == Status::pass) out.verdict = Verdict::pass(vacuous);
    out.verdict.with("instances", std::to_string(out.instances));
    return out;
  }
};

std::pair<int, int> pair_levels(Rng& rng, int k) {
  while (true) {
    int a = rng.uniform(1, k), b = rng.uniform(1, k);
    if (a + b >= k + 1) return {a, b};
  }
}

std::array<int, 3> triple_levels(Rng& rng, int k) {
  while (true) {
    int a = rng.uniform(1, k), b = rng.uniform(1, k), c = rng.uniform(1, k);
    if (a + b >= k + 1 && b + c >= k + 1 && a + c >= k + 1 && a + b + c >= 2 * k + 1) return {a, b, c};
  }
}

std::vector<bool> random_mask(Rng& rng, std::size_t n) {
  std::vector<bool> m(n, false);
  const int size = rng.uniform(1, static_cast<int>(std::min<std::size_t>(n, 3)));
  for (int i = 0; i < size; ++i) m[static_cast<std::size_t>(rng.uniform(0, static_cast<int>(n) - 1))] = true;
  return m;
}

}  // namespace

Form jacobi_sum(const GradedPoissonStructure& p, const HamiltonianForm& a, const HamiltonianForm& b,
                const HamiltonianForm& c) {
  auto term = [&](const HamiltonianForm& x, const HamiltonianForm& y, const HamiltonianForm& z) {
    Form inner = poisson_bracket(p, x, y);
    HamiltonianForm h{inner, x.level + y.level - p.k(), MultiVector(p.chart(), 2 * p.k() + 1 - x.level - y.level)};
    return poisson_bracket(p, h, z).scaled(Rational(sign_power(static_cast<long long>(deg(p, x)) * deg(p, z))));
  };
  return term(a, b, c) + term(b, c, a) + term(c, a, b);
}

Form jacobi_lemma_defect(const GradedPoissonStructure& p, const HamiltonianForm& a, const HamiltonianForm& b,
                         const HamiltonianForm& c) {
  auto term = [&](const HamiltonianForm& x, const HamiltonianForm& y, const HamiltonianForm& z) {
    Form t = interior(z.witness, exterior_derivative(interior(y.witness, exterior_derivative(x.form))));
    return t.scaled(Rational(sign_power(static_cast<long long>(deg(p, z) - 1) * deg(p, x))));
  };
  Form lhs = term(a, b, c) + term(b, c, a) + term(c, a, b);
  Form inner = interior(b.witness, exterior_derivative(c.form));
  // A contraction below degree zero is the zero form.
  if (a.witness.degree() > inner.degree()) return lhs;
  Form rhs = exterior_derivative(interior(a.witness, inner));
  rhs = rhs.scaled(Rational(sign_power(static_cast<long long>(deg(p, a) + deg(p, c)) * (deg(p, b) + 1))));
  return lhs - rhs;
}

std::vector<PropertyOutcome> check_bracket_properties(const GradedPoissonStructure& p,
                                                      const PropertyOptions& options) {
  if (!p.constant_coefficients()) throw DomainError("the property suite needs a constant-coefficient structure");
  const int k = p.k();
  const std::size_t n = p.chart()->dim();
  Pools pools(p, options.coefficient_degree + 1);
  std::vector<PropertyOutcome> out;

  {
    Tally t("degree");
    Rng rng(options.seed * 8 + 1);
    for (int i = 0; i < options.cases; ++i) {
      auto [la, lb] = pair_levels(rng, k);
      auto a = pools.draw(rng, la), b = pools.draw(rng, lb);
      if (!a || !b) continue;
      ++t.out.instances;
      Form r = poisson_bracket(p, *a, *b);
      const int level = la + lb - k;
      if (r.degree() != level - 1 || k - level != deg(p, *a) + deg(p, *b)) {
        t.fail("bracket has the wrong degree", triple(*a, *b));
      }
    }
    out.push_back(t.done());
  }
  {
    Tally t("skew_symmetry");
    Rng rng(options.seed * 8 + 2);
    for (int i = 0; i < options.cases; ++i) {
      auto [la, lb] = pair_levels(rng, k);
      auto a = pools.draw(rng, la), b = pools.draw(rng, lb);
      if (!a || !b) continue;
      ++t.out.instances;
      Form s = poisson_bracket(p, *a, *b) +
               poisson_bracket(p, *b, *a).scaled(Rational(sign_power(static_cast<long long>(deg(p, *a)) * deg(p, *b))));
      if (!s.is_zero()) t.fail("graded skew-symmetry fails", triple(*a, *b));
    }
    out.push_back(t.done());
  }
  {
    Tally t("locality");
    Rng rng(options.seed * 8 + 3);
    for (int i = 0; i < options.cases; ++i) {
      auto [la, lb] = pair_levels(rng, k);
      auto a = pools.draw(rng, la), b = pools.draw(rng, lb);
      if (!a || !b) continue;
      auto x0 = sample_points(p.chart(), options.seed + static_cast<std::uint64_t>(i), 1).front();
      Form da = exterior_derivative(a->form);
      Form theta(p.chart(), da.degree());
      for (const auto& [bl, v] : da.evaluate(x0)) theta.add_term(bl, p.chart()->constant(v));
      Form shifted = a->form - poincare_homotopy(theta);
      auto h = is_hamiltonian(shifted, p);
      if (!h.form) {
        t.fail("shifted form is not Hamiltonian", show(*a));
        continue;
      }
      if (!vanishes_at(exterior_derivative(shifted), x0)) {
        t.fail("constructed form does not have a critical point", show(*h.form));
        continue;
      }
      ++t.out.instances;
      if (!vanishes_at(poisson_bracket(p, *h.form, *b), x0)) {
        t.fail("bracket does not vanish where d alpha does", triple(*h.form, *b));
      }
    }
    out.push_back(t.done());
  }
  {
    Tally t("leibniz");
    Rng rng(options.seed * 8 + 4);
    for (int i = 0; i < options.cases && k >= 2; ++i) {
      auto a = pools.draw(rng, k);
      if (!a) continue;
      std::optional<HamiltonianForm> b, c, bc;
      for (int attempt = 0; attempt < 30; ++attempt) {
        const int lb = rng.uniform(1, k - 1);
        const int lc = rng.uniform(1, k - lb);
        auto mask = attempt < 5 ? std::vector<bool>{} : random_mask(rng, n);
        auto bb = pools.draw(rng, lb, mask), cc = pools.draw(rng, lc, mask);
        if (!bb || !cc) continue;
        auto h = is_hamiltonian(wedge(bb->form, exterior_derivative(cc->form)), p);
        if (!h.form) continue;
        b = bb;
        c = cc;
        bc = h.form;
        if (!is_closed(bc->form)) break;
      }
      if (!bc) {
        t.inconclusive("no instance with a Hamiltonian product was found");
        continue;
      }
      ++t.out.instances;
      Form lhs = poisson_bracket(p, *bc, *a);
      Form rhs = wedge(poisson_bracket(p, *b, *a), exterior_derivative(c->form)) +
                 wedge(exterior_derivative(b->form), poisson_bracket(p, *c, *a))
                     .scaled(Rational(sign_power(k - deg(p, *b))));
      if (lhs != rhs) t.fail("Leibniz identity fails", triple(*a, *b, *c));
    }
    out.push_back(t.done("vacuous for k = 1: no levels with b + c <= k"));
  }
  {
    Tally t("symmetry_invariance");
    Rng rng(options.seed * 8 + 5);
    for (int i = 0; i < options.cases && k >= 2; ++i) {
      const int la = rng.uniform(2, k);
      const int lb = rng.uniform(std::max(1, k + 2 - la), k);
      const int j = rng.uniform(0, static_cast<int>(n) - 1);
      std::vector<bool> mask(n, true);
      mask[static_cast<std::size_t>(j)] = false;
      auto a = pools.draw(rng, la, mask), b = pools.draw(rng, lb);
      if (!a || !b) continue;
      MultiVector x = partial(p.chart(), j);
      if (!lie_derivative(x, a->form).is_zero()) {
        t.fail("sampled form is not invariant", show(*a));
        continue;
      }
      auto ia = is_hamiltonian(interior(x, a->form), p);
      if (!ia.form) {
        t.fail("contraction with a symmetry is not Hamiltonian", show(*a));
        continue;
      }
      ++t.out.instances;
      Form lhs = poisson_bracket(p, *ia.form, *b);
      Form rhs = interior(x, poisson_bracket(p, *a, *b)).scaled(Rational(sign_power(deg(p, *b))));
      if (lhs != rhs) t.fail("invariance under symmetries fails", triple(*a, *b) + "; X = " + x.to_string());
    }
    out.push_back(t.done("vacuous for k = 1: contractions leave the Hamiltonian levels"));
  }
  {
    Tally t("jacobi");
    Rng rng(options.seed * 8 + 6);
    for (int i = 0; i < options.cases; ++i) {
      auto lv = triple_levels(rng, k);
      auto a = pools.draw(rng, lv[0]), b = pools.draw(rng, lv[1]), c = pools.draw(rng, lv[2]);
      if (!a || !b || !c) continue;
      ++t.out.instances;
      Form j = jacobi_sum(p, *a, *b, *c);
      bool exact = j.degree() == 0 ? j.is_zero() : is_closed(j) && exterior_derivative(poincare_homotopy(j)) == j;
      if (!exact) t.fail("cyclic sum is not exact", triple(*a, *b, *c) + "; sum = " + j.to_string());
    }
    out.push_back(t.done());
  }
  {
    Tally t("jacobi_lemma");
    Rng rng(options.seed * 8 + 7);
    for (int i = 0; i < options.cases; ++i) {
      auto lv = triple_levels(rng, k);
      auto a = pools.draw(rng, lv[0]), b = pools.draw(rng, lv[1]), c = pools.draw(rng, lv[2]);
      if (!a || !b || !c) continue;
      ++t.out.instances;
      Form d = jacobi_lemma_defect(p, *a, *b, *c);
      if (!d.is_zero()) t.fail("cyclic contraction relation fails", triple(*a, *b, *c) + "; defect = " + d.to_string());
    }
    out.push_back(t.done());
  }
  {
    Tally t("closure");
    Rng rng(options.seed * 8 + 8);
    for (int i = 0; i < options.cases; ++i) {
      auto [la, lb] = pair_levels(rng, k);
      auto a = pools.draw(rng, la), b = pools.draw(rng, lb);
      if (!a || !b) continue;
      ++t.out.instances;
      HamiltonianForm r = poisson_bracket_h(p, *a, *b);
      auto sh = p.sharp(exterior_derivative(r.form));
      if (!sh.value) {
        t.fail("bracket is not Hamiltonian", triple(*a, *b));
      } else if (!in_kernel(p, *sh.value - r.witness, 2 * k + 1 - la - lb)) {
        t.fail("sharp of the bracket differential is not -[U, V]", triple(*a, *b));
      }
    }
    out.push_back(t.done());
  }
  return out;
}

}  // namespace gradedirac
