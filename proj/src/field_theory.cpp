#include "gradedirac/field_theory.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <optional>

#include "gradedirac/linalg.hpp"
#include "gradedirac/subspace.hpp"

namespace gradedirac {

namespace {

std::vector<int> base_indices(const FieldChart& fc) {
  std::vector<int> idx;
  for (int mu = 0; mu < fc.n(); ++mu) idx.push_back(fc.x(mu));
  return idx;
}

// Polynomial on the full chart with only x, y (and parameters) allowed.
void require_xy(const FieldChart& fc, const Polynomial& f, const char* what) {
  for (int v = fc.n() + fc.m(); v < static_cast<int>(fc.full()->dim()); ++v) {
    if (f.depends_on(static_cast<std::size_t>(v))) throw DomainError(std::string(what) + " must depend on (x, y) only");
  }
}

// Coefficient of d^n x in an n-form on the base chart.
Polynomial top_coefficient(const Form& f, int n) {
  Blade b;
  for (int i = 0; i < n; ++i) b.push_back(i);
  return f.coefficient(b);
}

// Full-chart polynomial rewritten in another ring through the given images of
// its coordinates; parameters are identified.
Polynomial transfer(const Polynomial& f, const ChartPtr& from, const ChartPtr& to, std::vector<Polynomial> images) {
  for (std::size_t k = 0; k < from->nparams(); ++k) images.push_back(to->variable(to->dim() + k));
  return f.substitute(images);
}

struct StructureCache {
  std::mutex mu;
  std::map<std::pair<int, int>, std::pair<ChartPtr, std::shared_ptr<GradedPoissonStructure>>> entries;
};

StructureCache& structure_cache() {
  static StructureCache cache;
  return cache;
}

}  // namespace

FieldChart::FieldChart(int n, int m, std::vector<std::string> parameters) : n_(n), m_(m) {
  if (n < 1 || m < 1) throw DomainError("field charts need n >= 1 and m >= 1");
  std::vector<std::string> base, full;
  for (int mu = 1; mu <= n; ++mu) base.push_back("x" + std::to_string(mu));
  full = base;
  for (int i = 1; i <= m; ++i) full.push_back("y" + std::to_string(i));
  for (int mu = 1; mu <= n; ++mu) {
    for (int i = 1; i <= m; ++i) full.push_back("p" + std::to_string(mu) + "_" + std::to_string(i));
  }
  std::vector<std::string> reduced = full;
  full.push_back("p");
  full_ = make_chart(full, {}, parameters);
  reduced_ = make_chart(reduced, {}, parameters);
  base_ = make_chart(base, {}, parameters);
}

Form dn_x(const FieldChart& fc) { return volume_form(fc.full(), base_indices(fc)); }

Form dn1_x(const FieldChart& fc, int mu) { return interior(partial(fc.full(), fc.x(mu)), dn_x(fc)); }

Form canonical_omega(const FieldChart& fc) {
  const auto& c = fc.full();
  Form omega = wedge(dx(c, fc.p()), dn_x(fc));
  for (int mu = 0; mu < fc.n(); ++mu) {
    for (int i = 0; i < fc.m(); ++i) omega += wedge(wedge(dx(c, fc.pm(mu, i)), dx(c, fc.y(i))), dn1_x(fc, mu));
  }
  return omega;
}

const GradedPoissonStructure& canonical_structure(const FieldChart& fc) {
  auto& cache = structure_cache();
  std::lock_guard<std::mutex> lock(cache.mu);
  auto key = std::make_pair(fc.n(), fc.m());
  auto it = cache.entries.find(key);
  if (it == cache.entries.end() || !same_chart(it->second.first, fc.full())) {
    auto p = std::make_shared<GradedPoissonStructure>(GradedPoissonStructure::from_form(canonical_omega(fc)));
    it = cache.entries.insert_or_assign(key, std::make_pair(fc.full(), p)).first;
  }
  return *it->second.second;
}

Form restricted_observable(const FieldChart& fc, const std::vector<Polynomial>& a, const std::vector<Polynomial>& b) {
  if (static_cast<int>(a.size()) != fc.m() || static_cast<int>(b.size()) != fc.n())
    throw std::invalid_argument("need m functions A^i and n functions B^mu");
  Form alpha(fc.full(), fc.n() - 1);
  for (int mu = 0; mu < fc.n(); ++mu) {
    require_xy(fc, b[static_cast<std::size_t>(mu)], "B");
    Polynomial coef = b[static_cast<std::size_t>(mu)];
    for (int i = 0; i < fc.m(); ++i) {
      require_xy(fc, a[static_cast<std::size_t>(i)], "A");
      coef += a[static_cast<std::size_t>(i)] * fc.var(fc.pm(mu, i));
    }
    alpha += coef * dn1_x(fc, mu);
  }
  return alpha;
}

MultiVector restricted_field(const FieldChart& fc, const std::vector<Polynomial>& a, const std::vector<Polynomial>& b) {
  const auto& c = fc.full();
  MultiVector x(c, 1);
  Polynomial ap = c->zero();
  for (int mu = 0; mu < fc.n(); ++mu) {
    const auto xmu = static_cast<std::size_t>(fc.x(mu));
    ap += b[static_cast<std::size_t>(mu)].derivative(xmu);
    for (int i = 0; i < fc.m(); ++i) ap += a[static_cast<std::size_t>(i)].derivative(xmu) * fc.var(fc.pm(mu, i));
  }
  x.add_term({fc.p()}, ap);
  for (int mu = 0; mu < fc.n(); ++mu) {
    for (int j = 0; j < fc.m(); ++j) {
      const auto yj = static_cast<std::size_t>(fc.y(j));
      Polynomial bj = b[static_cast<std::size_t>(mu)].derivative(yj);
      for (int i = 0; i < fc.m(); ++i) bj += a[static_cast<std::size_t>(i)].derivative(yj) * fc.var(fc.pm(mu, i));
      x.add_term({fc.pm(mu, j)}, bj);
    }
  }
  for (int i = 0; i < fc.m(); ++i) x.add_term({fc.y(i)}, -a[static_cast<std::size_t>(i)]);
  return x;
}

void require_observable_shape(const FieldChart& fc, const Form& alpha) {
  if (!same_chart(alpha.chart(), fc.full())) throw std::invalid_argument("observable on a different chart");
  if (alpha.degree() != fc.n() - 1) throw DomainError("observables are (n-1)-forms");
  for (const auto& [b, c] : alpha.terms()) {
    for (int i : b) {
      if (i == fc.p()) throw DomainError("observables may not involve dp");
    }
    if (c.depends_on(static_cast<std::size_t>(fc.p()))) throw DomainError("observables may not depend on p");
  }
}

MultiVector observable_field(const FieldChart& fc, const Form& alpha) {
  require_observable_shape(fc, alpha);
  const auto& c = fc.full();
  const int big_n = static_cast<int>(c->dim());
  const Form omega = canonical_omega(fc);
  BladeBasis top(big_n, fc.n());
  Matrix m(top.size(), static_cast<std::size_t>(big_n));
  for (int j = 0; j < big_n; ++j) {
    Vector col = to_vector(interior(partial(c, j), omega));
    for (std::size_t r = 0; r < col.size(); ++r) m(r, static_cast<std::size_t>(j)) = col[r];
  }
  // Rows with a single nonzero entry give the solution directly.
  std::vector<std::optional<std::size_t>> private_row(static_cast<std::size_t>(big_n));
  for (std::size_t r = 0; r < m.rows(); ++r) {
    std::optional<std::size_t> only;
    int count = 0;
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (m(r, j) != 0) {
        only = j;
        ++count;
      }
    }
    if (count == 1 && !private_row[*only]) private_row[*only] = r;
  }
  bool fast = true;
  for (const auto& r : private_row) fast = fast && r.has_value();
  std::map<Exponent, Vector, ExponentOrder> by_monomial;
  const Form dalpha = exterior_derivative(alpha);
  for (const auto& [b, f] : dalpha.terms()) {
    for (const auto& [e, q] : f.terms()) {
      auto& v = by_monomial[e];
      if (v.empty()) v.assign(top.size(), 0);
      v[top.index(b)] = q;
    }
  }
  MultiVector x(c, 1);
  for (const auto& [e, v] : by_monomial) {
    std::optional<Vector> sol;
    if (fast) {
      Vector cand(static_cast<std::size_t>(big_n));
      for (std::size_t j = 0; j < cand.size(); ++j) cand[j] = v[*private_row[j]] / m(*private_row[j], j);
      if (multiply(m, cand) == v) sol = std::move(cand);
    } else {
      sol = solve(m, v);
    }
    if (!sol) {
      throw DomainError("not an observable: d alpha is not a contraction of Omega at monomial " +
                        Polynomial::monomial(e, 1).to_string(c->variable_names()));
    }
    for (int j = 0; j < big_n; ++j) {
      const Rational& q = (*sol)[static_cast<std::size_t>(j)];
      if (q != 0) x.add_term({j}, Polynomial::monomial(e, q));
    }
  }
  return x;
}

FieldComponents components(const FieldChart& fc, const MultiVector& x) {
  FieldComponents out;
  out.a = x.coefficient({fc.p()});
  out.b.resize(static_cast<std::size_t>(fc.n()));
  for (int mu = 0; mu < fc.n(); ++mu) {
    for (int i = 0; i < fc.m(); ++i) out.b[static_cast<std::size_t>(mu)].push_back(x.coefficient({fc.pm(mu, i)}));
  }
  for (int i = 0; i < fc.m(); ++i) out.c.push_back(x.coefficient({fc.y(i)}));
  return out;
}

Form hamiltonian_form(const FieldChart& fc, const Polynomial& h) {
  if (h.depends_on(static_cast<std::size_t>(fc.p()))) throw DomainError("the Hamiltonian may not depend on p");
  return (fc.var(fc.p()) + h) * dn_x(fc);
}

Form current_bracket_eta(const FieldChart& fc, const Form& alpha, const Form& eta) {
  if (eta.degree() != fc.n()) throw DomainError("eta must be an n-form");
  const Blade vol = base_indices(fc);
  for (const auto& [b, f] : eta.terms()) {
    if (b != vol) throw DomainError("eta must be semi-basic: f d^n x");
  }
  Form r = interior(observable_field(fc, alpha), exterior_derivative(eta));
  for (const auto& [b, f] : r.terms()) {
    if (b != vol) throw std::logic_error("current bracket is not semi-basic");
  }
  return r;
}

Form current_bracket_h(const FieldChart& fc, const Form& alpha, const Polynomial& h) {
  return current_bracket_eta(fc, alpha, hamiltonian_form(fc, h));
}

Form restricted_current_bracket(const FieldChart& fc, const std::vector<Polynomial>& a,
                                const std::vector<Polynomial>& b, const Polynomial& h) {
  Polynomial f = fc.full()->zero();
  for (int mu = 0; mu < fc.n(); ++mu) {
    const auto xmu = static_cast<std::size_t>(fc.x(mu));
    f += b[static_cast<std::size_t>(mu)].derivative(xmu);
    for (int i = 0; i < fc.m(); ++i) f += a[static_cast<std::size_t>(i)].derivative(xmu) * fc.var(fc.pm(mu, i));
    for (int j = 0; j < fc.m(); ++j) {
      const auto yj = static_cast<std::size_t>(fc.y(j));
      Polynomial inner = b[static_cast<std::size_t>(mu)].derivative(yj);
      for (int i = 0; i < fc.m(); ++i) inner += a[static_cast<std::size_t>(i)].derivative(yj) * fc.var(fc.pm(mu, i));
      f += h.derivative(static_cast<std::size_t>(fc.pm(mu, j))) * inner;
    }
  }
  for (int i = 0; i < fc.m(); ++i) f -= h.derivative(static_cast<std::size_t>(fc.y(i))) * a[static_cast<std::size_t>(i)];
  return f * dn_x(fc);
}

Form observable_bracket(const FieldChart& fc, const Form& alpha, const Form& beta) {
  require_observable_shape(fc, alpha);
  Form r = interior(observable_field(fc, beta), exterior_derivative(alpha));
  try {
    require_observable_shape(fc, r);
  } catch (const DomainError& e) {
    throw DomainError(std::string("bracket does not descend: ") + e.what());
  }
  return r;
}

Form observable_jacobi(const FieldChart& fc, const Form& a, const Form& b, const Form& c) {
  return observable_bracket(fc, observable_bracket(fc, a, b), c) +
         observable_bracket(fc, observable_bracket(fc, b, c), a) +
         observable_bracket(fc, observable_bracket(fc, c, a), b);
}

IdentityCheck antirep_check(const FieldChart& fc, const Form& alpha, const Form& beta, const Form& eta) {
  Form lhs = current_bracket_eta(fc, observable_bracket(fc, alpha, beta), eta);
  Form rhs = current_bracket_eta(fc, beta, current_bracket_eta(fc, alpha, eta)) -
             current_bracket_eta(fc, alpha, current_bracket_eta(fc, beta, eta));
  Form defect = lhs - rhs;
  IdentityCheck out{defect.is_zero() ? Verdict::pass() : Verdict::fail("anti-representation identity fails"), defect};
  if (!defect.is_zero()) out.verdict.with("defect", defect.to_string());
  return out;
}

std::vector<Polynomial> section_images(const FieldChart& fc, const CandidateSolution& psi, const Polynomial& h) {
  if (static_cast<int>(psi.y.size()) != fc.m() || static_cast<int>(psi.pm.size()) != fc.n())
    throw std::invalid_argument("section has the wrong arity");
  const auto& base = fc.base();
  std::vector<Polynomial> images;
  for (int mu = 0; mu < fc.n(); ++mu) images.push_back(base->variable(static_cast<std::size_t>(mu)));
  for (const auto& f : psi.y) images.push_back(f);
  for (const auto& row : psi.pm) {
    if (static_cast<int>(row.size()) != fc.m()) throw std::invalid_argument("section has the wrong arity");
    for (const auto& f : row) images.push_back(f);
  }
  images.push_back(base->zero());
  images.back() = -transfer(h, fc.full(), base, images);
  return images;
}

Polynomial compose(const FieldChart& fc, const Polynomial& f, const CandidateSolution& psi, const Polynomial& h) {
  return transfer(f, fc.full(), fc.base(), section_images(fc, psi, h));
}

bool HdwResidual::is_solution() const {
  for (const auto& row : momentum) {
    for (const auto& f : row) {
      if (!f.is_zero()) return false;
    }
  }
  for (const auto& f : field) {
    if (!f.is_zero()) return false;
  }
  return true;
}

HdwResidual hdw_residual(const FieldChart& fc, const CandidateSolution& psi, const Polynomial& h) {
  HdwResidual r;
  const auto images = section_images(fc, psi, h);
  auto comp = [&](const Polynomial& f) { return transfer(f, fc.full(), fc.base(), images); };
  r.momentum.resize(static_cast<std::size_t>(fc.n()));
  for (int mu = 0; mu < fc.n(); ++mu) {
    for (int i = 0; i < fc.m(); ++i) {
      r.momentum[static_cast<std::size_t>(mu)].push_back(
          psi.y[static_cast<std::size_t>(i)].derivative(static_cast<std::size_t>(mu)) -
          comp(h.derivative(static_cast<std::size_t>(fc.pm(mu, i)))));
    }
  }
  for (int i = 0; i < fc.m(); ++i) {
    Polynomial f = comp(h.derivative(static_cast<std::size_t>(fc.y(i))));
    for (int mu = 0; mu < fc.n(); ++mu) {
      f += psi.pm[static_cast<std::size_t>(mu)][static_cast<std::size_t>(i)].derivative(static_cast<std::size_t>(mu));
    }
    r.field.push_back(std::move(f));
  }
  return r;
}

std::vector<Polynomial> intrinsic_residual(const FieldChart& fc, const CandidateSolution& psi, const Polynomial& h) {
  const auto& red = fc.reduced();
  std::vector<Polynomial> to_reduced;
  for (std::size_t v = 0; v < red->dim(); ++v) to_reduced.push_back(red->variable(v));
  to_reduced.push_back(red->zero());
  const Polynomial hr = transfer(h, fc.full(), red, to_reduced);
  std::vector<int> xs = base_indices(fc);
  Form vol = volume_form(red, xs);
  Form dh(red, 1);
  for (std::size_t v = 0; v < red->dim(); ++v) dh.add_term({static_cast<int>(v)}, hr.derivative(v));
  Form omega_h = -wedge(dh, vol);
  for (int mu = 0; mu < fc.n(); ++mu) {
    Form dn1 = interior(partial(red, fc.x(mu)), vol);
    for (int i = 0; i < fc.m(); ++i) omega_h += wedge(wedge(dx(red, fc.pm(mu, i)), dx(red, fc.y(i))), dn1);
  }
  auto full_images = section_images(fc, psi, h);
  full_images.pop_back();
  std::vector<Polynomial> out;
  for (std::size_t v = 0; v < red->dim(); ++v) {
    Form f = interior(partial(red, static_cast<int>(v)), omega_h);
    out.push_back(top_coefficient(pullback(f, fc.base(), full_images), fc.n()));
  }
  return out;
}

ConstructedSolution construct_hdw_solution(const FieldChart& fc, const std::vector<Polynomial>& phi,
                                           const Polynomial& potential) {
  if (static_cast<int>(phi.size()) != fc.m()) throw std::invalid_argument("need one function per field");
  require_xy(fc, potential, "the potential");
  const auto& base = fc.base();
  std::vector<Polynomial> lift;
  for (int mu = 0; mu < fc.n(); ++mu) lift.push_back(fc.var(fc.x(mu)));
  ConstructedSolution out;
  out.h = potential;
  for (int i = 0; i < fc.m(); ++i) {
    for (int mu = 0; mu < fc.n(); ++mu) {
      Polynomial d = phi[static_cast<std::size_t>(i)].derivative(static_cast<std::size_t>(mu));
      out.h += transfer(d, base, fc.full(), lift) * fc.var(fc.pm(mu, i));
    }
  }
  out.psi.y = phi;
  out.psi.pm.assign(static_cast<std::size_t>(fc.n()), std::vector<Polynomial>(static_cast<std::size_t>(fc.m()), base->zero()));
  for (int i = 0; i < fc.m(); ++i) {
    Polynomial dv = compose(fc, potential.derivative(static_cast<std::size_t>(fc.y(i))), out.psi, out.h);
    out.psi.pm[0][static_cast<std::size_t>(i)] = -dv.integral(0);
  }
  return out;
}

ConservationReport conservation_check(const FieldChart& fc, const CandidateSolution& psi, const Form& alpha,
                                      const Polynomial& h) {
  ConservationReport rep;
  const auto images = section_images(fc, psi, h);
  Form bracket = current_bracket_h(fc, alpha, h);
  rep.bracket_vanishes = bracket.is_zero();
  Polynomial lhs = top_coefficient(pullback(exterior_derivative(alpha), fc.base(), images), fc.n());
  Polynomial rhs = top_coefficient(pullback(bracket, fc.base(), images), fc.n());
  rep.defect = lhs - rhs;
  const auto comps = components(fc, observable_field(fc, alpha));
  const auto res = hdw_residual(fc, psi, h);
  rep.is_solution = res.is_solution();
  rep.factorization = fc.base()->zero();
  for (int mu = 0; mu < fc.n(); ++mu) {
    for (int i = 0; i < fc.m(); ++i) {
      rep.factorization += compose(fc, comps.b[static_cast<std::size_t>(mu)][static_cast<std::size_t>(i)], psi, h) *
                           res.momentum[static_cast<std::size_t>(mu)][static_cast<std::size_t>(i)];
    }
  }
  for (int i = 0; i < fc.m(); ++i) {
    rep.factorization -= compose(fc, comps.c[static_cast<std::size_t>(i)], psi, h) * res.field[static_cast<std::size_t>(i)];
  }
  if (rep.defect != rep.factorization) {
    rep.verdict = Verdict::fail("defect does not factor through the residuals");
  } else if (rep.is_solution && !rep.defect.is_zero()) {
    rep.verdict = Verdict::fail("nonzero defect on a solution");
  } else {
    rep.verdict = Verdict::pass();
  }
  rep.verdict.with("solution", rep.is_solution ? "yes" : "no")
      .with("bracket_vanishes", rep.bracket_vanishes ? "yes" : "no")
      .with("defect", rep.defect.to_string(fc.base()->variable_names()));
  return rep;
}

}  // namespace gradedirac
