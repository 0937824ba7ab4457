#include "gradedirac/exterior.hpp"

#include <algorithm>

namespace gradedirac {

int sign_power(long long exponent) { return (exponent % 2 == 0) ? 1 : -1; }

template <ExteriorKind Kind>
Exterior<Kind>::Exterior(ChartPtr chart, int degree) : chart_(std::move(chart)), degree_(degree) {
  if (!chart_) throw std::invalid_argument("exterior element needs a chart");
  if (degree < 0) throw DomainError("negative degree");
}

template <ExteriorKind Kind>
Exterior<Kind> Exterior<Kind>::basis(ChartPtr chart, const std::vector<int>& indices) {
  Exterior r(chart, static_cast<int>(indices.size()));
  for (int i : indices) {
    if (i < 0 || i >= static_cast<int>(chart->dim())) throw std::out_of_range("basis index out of range");
  }
  if (auto sb = canonical_blade(indices)) r.add_term(sb->blade, chart->constant(sb->sign));
  return r;
}

template <ExteriorKind Kind>
Exterior<Kind> Exterior<Kind>::scalar(ChartPtr chart, const Polynomial& f) {
  Exterior r(chart, 0);
  r.add_term({}, f);
  return r;
}

template <ExteriorKind Kind>
Polynomial Exterior<Kind>::coefficient(const Blade& b) const {
  auto it = terms_.find(b);
  return it == terms_.end() ? chart_->zero() : it->second;
}

template <ExteriorKind Kind>
bool Exterior<Kind>::has_constant_coefficients() const {
  for (const auto& [b, c] : terms_) {
    if (c.total_degree() > 0) return false;
  }
  return true;
}

template <ExteriorKind Kind>
int Exterior<Kind>::coefficient_degree() const {
  int d = -1;
  for (const auto& [b, c] : terms_) d = std::max(d, c.total_degree_in(chart_->dim()));
  return d;
}

template <ExteriorKind Kind>
void Exterior<Kind>::add_term(const Blade& b, const Polynomial& f) {
  if (static_cast<int>(b.size()) != degree_) throw std::invalid_argument("blade degree mismatch");
  if (f.nvars() != chart_->nvars()) throw std::invalid_argument("coefficient ring mismatch");
  if (f.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(b, f);
  if (!inserted) {
    it->second += f;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

template <ExteriorKind Kind>
void Exterior<Kind>::check_compatible(const Exterior& o) const {
  if (!same_chart(chart_, o.chart_)) throw std::invalid_argument("operands live on different charts");
  if (degree_ != o.degree_) throw DomainError("degree mismatch in sum");
}

template <ExteriorKind Kind>
Exterior<Kind>& Exterior<Kind>::operator+=(const Exterior& o) {
  check_compatible(o);
  for (const auto& [b, c] : o.terms_) add_term(b, c);
  return *this;
}

template <ExteriorKind Kind>
Exterior<Kind>& Exterior<Kind>::operator-=(const Exterior& o) {
  check_compatible(o);
  for (const auto& [b, c] : o.terms_) add_term(b, -c);
  return *this;
}

template <ExteriorKind Kind>
Exterior<Kind> Exterior<Kind>::operator-() const {
  return map_coefficients([](const Polynomial& c) { return -c; });
}

template <ExteriorKind Kind>
Exterior<Kind> Exterior<Kind>::scaled(const Polynomial& f) const {
  return map_coefficients([&](const Polynomial& c) { return c * f; });
}

template <ExteriorKind Kind>
Exterior<Kind> Exterior<Kind>::scaled(const Rational& q) const {
  return map_coefficients([&](const Polynomial& c) { return c * q; });
}

template <ExteriorKind Kind>
std::map<Blade, Rational> Exterior<Kind>::evaluate(const std::vector<Rational>& point) const {
  std::map<Blade, Rational> out;
  for (const auto& [b, c] : terms_) {
    Rational v = c.evaluate(point);
    if (v != 0) out.emplace(b, v);
  }
  return out;
}

template <ExteriorKind Kind>
std::string Exterior<Kind>::to_string() const {
  if (terms_.empty()) return "0";
  const auto& names = chart_->variable_names();
  std::string out;
  bool first = true;
  for (const auto& [b, c] : terms_) {
    std::string basis;
    for (int i : b) {
      if (!basis.empty()) basis += "^";
      basis += (Kind == ExteriorKind::form ? "d" : "@") + names[i];
    }
    std::string coef;
    bool neg = false;
    if (c.terms().size() == 1) {
      Polynomial mag = c;
      if (c.terms().begin()->second < 0) {
        neg = true;
        mag = -c;
      }
      coef = mag.to_string(names);
      if (coef == "1" && !basis.empty()) coef.clear();
    } else {
      coef = "(" + c.to_string(names) + ")";
    }
    std::string term = coef;
    if (!basis.empty()) term += (coef.empty() ? "" : "*") + basis;
    if (first) {
      out += (neg ? "-" : "") + term;
    } else {
      out += (neg ? " - " : " + ") + term;
    }
    first = false;
  }
  return out;
}

template class Exterior<ExteriorKind::form>;
template class Exterior<ExteriorKind::multivector>;

Form dx(const ChartPtr& chart, int i) { return Form::basis(chart, {i}); }
MultiVector partial(const ChartPtr& chart, int i) { return MultiVector::basis(chart, {i}); }
Form volume_form(const ChartPtr& chart, const std::vector<int>& indices) { return Form::basis(chart, indices); }

namespace {

template <ExteriorKind Kind>
Exterior<Kind> wedge_impl(const Exterior<Kind>& a, const Exterior<Kind>& b) {
  if (!same_chart(a.chart(), b.chart())) throw std::invalid_argument("wedge across charts");
  Exterior<Kind> r(a.chart(), a.degree() + b.degree());
  for (const auto& [ba, ca] : a.terms()) {
    for (const auto& [bb, cb] : b.terms()) {
      auto m = merge_blades(ba, bb);
      if (!m) continue;
      Polynomial c = ca * cb;
      if (m->sign < 0) c = -c;
      r.add_term(m->blade, c);
    }
  }
  return r;
}

}  // namespace

Form wedge(const Form& a, const Form& b) { return wedge_impl(a, b); }
MultiVector wedge(const MultiVector& a, const MultiVector& b) { return wedge_impl(a, b); }

Form interior(const MultiVector& u, const Form& alpha) {
  if (!same_chart(u.chart(), alpha.chart())) throw std::invalid_argument("interior product across charts");
  if (u.degree() > alpha.degree()) throw DomainError("interior product: multivector degree exceeds form degree");
  Form r(alpha.chart(), alpha.degree() - u.degree());
  for (const auto& [bu, cu] : u.terms()) {
    for (const auto& [ba, ca] : alpha.terms()) {
      auto c = contract_blade(bu, ba);
      if (!c) continue;
      Polynomial coef = cu * ca;
      if (c->sign < 0) coef = -coef;
      r.add_term(c->blade, coef);
    }
  }
  return r;
}

Form exterior_derivative(const Form& alpha) {
  const auto& chart = alpha.chart();
  Form r(chart, alpha.degree() + 1);
  const int n = static_cast<int>(chart->dim());
  for (const auto& [b, c] : alpha.terms()) {
    for (int j = 0; j < n; ++j) {
      if (std::binary_search(b.begin(), b.end(), j)) continue;
      Polynomial dj = c.derivative(j);
      if (dj.is_zero()) continue;
      auto m = merge_blades({j}, b);
      if (m->sign < 0) dj = -dj;
      r.add_term(m->blade, dj);
    }
  }
  return r;
}

Polynomial apply_vector_field(const MultiVector& x, const Polynomial& f) {
  if (x.degree() != 1) throw DomainError("expected a vector field");
  Polynomial r = x.chart()->zero();
  for (const auto& [b, c] : x.terms()) r += c * f.derivative(b[0]);
  return r;
}

MultiVector lie_bracket(const MultiVector& x, const MultiVector& y) {
  if (x.degree() != 1 || y.degree() != 1) throw DomainError("lie bracket needs vector fields");
  MultiVector r(x.chart(), 1);
  for (const auto& [b, c] : y.terms()) r.add_term(b, apply_vector_field(x, c));
  for (const auto& [b, c] : x.terms()) r.add_term(b, -apply_vector_field(y, c));
  return r;
}

namespace {

// Factor f d_{i1}^...^d_{ip} as (f d_{i1}) ^ d_{i2} ^ ... ^ d_{ip}.
std::vector<MultiVector> factor_blade(const ChartPtr& chart, const Blade& b, const Polynomial& f) {
  std::vector<MultiVector> out;
  for (std::size_t i = 0; i < b.size(); ++i) {
    MultiVector v(chart, 1);
    v.add_term({b[i]}, i == 0 ? f : chart->constant(1));
    out.push_back(std::move(v));
  }
  return out;
}

MultiVector wedge_all(const ChartPtr& chart, const std::vector<const MultiVector*>& parts) {
  MultiVector r = MultiVector::scalar(chart, chart->constant(1));
  for (const auto* p : parts) r = wedge(r, *p);
  return r;
}

}  // namespace

MultiVector schouten_nijenhuis(const MultiVector& u, const MultiVector& v) {
  if (!same_chart(u.chart(), v.chart())) throw std::invalid_argument("bracket across charts");
  if (u.degree() == 0 || v.degree() == 0) throw DomainError("Schouten-Nijenhuis bracket undefined for degree 0");
  const auto& chart = u.chart();
  const int p = u.degree();
  const int q = v.degree();
  MultiVector r(chart, p + q - 1);
  // [X1^..^Xp, Y1^..^Yq] = sum (-1)^{i+j} [Xi,Yj] ^ X1..^Xi..Xp ^ Y1..^Yj..Yq
  for (const auto& [bu, cu] : u.terms()) {
    auto xs = factor_blade(chart, bu, cu);
    for (const auto& [bv, cv] : v.terms()) {
      auto ys = factor_blade(chart, bv, cv);
      for (int i = 0; i < p; ++i) {
        for (int j = 0; j < q; ++j) {
          if (i > 0 && j > 0) continue;  // brackets of constant coordinate fields vanish
          MultiVector br = lie_bracket(xs[i], ys[j]);
          if (br.is_zero()) continue;
          std::vector<const MultiVector*> parts{&br};
          for (int a = 0; a < p; ++a) {
            if (a != i) parts.push_back(&xs[a]);
          }
          for (int b = 0; b < q; ++b) {
            if (b != j) parts.push_back(&ys[b]);
          }
          MultiVector t = wedge_all(chart, parts);
          if ((i + j) % 2) t = -t;
          r += t;
        }
      }
    }
  }
  return r;
}

Form lie_derivative(const MultiVector& u, const Form& alpha) {
  const int p = u.degree();
  Form da = exterior_derivative(alpha);
  Form r(alpha.chart(), alpha.degree() - p + 1 < 0 ? 0 : alpha.degree() - p + 1);
  if (alpha.degree() - p + 1 < 0) throw DomainError("Lie derivative: multivector degree too large");
  if (p <= alpha.degree()) r += exterior_derivative(interior(u, alpha));
  Form second = interior(u, da);
  if (p % 2) {
    r += second;
  } else {
    r -= second;
  }
  return r;
}

Form poincare_homotopy(const Form& alpha) {
  const int a = alpha.degree();
  if (a < 1) throw DomainError("homotopy operator needs degree >= 1");
  const auto& chart = alpha.chart();
  const std::size_t n = chart->dim();
  const std::size_t nv = chart->nvars();
  const auto& c = chart->star_center();
  std::vector<Polynomial> shift_in(nv), shift_out(nv);
  for (std::size_t i = 0; i < nv; ++i) {
    Polynomial xi = chart->variable(i);
    if (i < n) {
      shift_in[i] = xi + chart->constant(c[i]);
      shift_out[i] = xi - chart->constant(c[i]);
    } else {
      shift_in[i] = xi;
      shift_out[i] = xi;
    }
  }
  Form r(chart, a - 1);
  for (const auto& [b, f] : alpha.terms()) {
    // Work in y = x - c, where the radial scaling is homogeneous.
    Polynomial g = f.substitute(shift_in);
    Polynomial scaled(nv);
    for (const auto& [e, q] : g.terms()) {
      unsigned deg = 0;
      for (std::size_t i = 0; i < n; ++i) deg += e[i];
      scaled.add_term(e, q / Rational(a + static_cast<int>(deg)));
    }
    for (std::size_t s = 0; s < b.size(); ++s) {
      Blade rest = b;
      rest.erase(rest.begin() + static_cast<long>(s));
      Polynomial t = scaled * chart->variable(b[s]);
      if (s % 2) t = -t;
      r.add_term(rest, t.substitute(shift_out));
    }
  }
  return r;
}

bool is_closed(const Form& alpha) { return exterior_derivative(alpha).is_zero(); }

std::optional<Form> exact_primitive(const Form& alpha) {
  if (alpha.degree() < 1 || !is_closed(alpha)) return std::nullopt;
  return poincare_homotopy(alpha);
}

bool is_exact(const Form& alpha) { return exact_primitive(alpha).has_value(); }

Form pullback(const Form& alpha, const ChartPtr& source, const std::vector<Polynomial>& images) {
  const auto& target = alpha.chart();
  if (images.size() != target->dim()) throw std::invalid_argument("pullback needs one image per target coordinate");
  if (source->nparams() != target->nparams()) throw std::invalid_argument("pullback charts disagree on parameters");
  std::vector<Polynomial> subst = images;
  for (std::size_t k = 0; k < target->nparams(); ++k) subst.push_back(source->variable(source->dim() + k));
  std::vector<Form> differentials;
  for (const auto& im : images) {
    Form d1(source, 1);
    for (std::size_t i = 0; i < source->dim(); ++i) d1.add_term({static_cast<int>(i)}, im.derivative(i));
    differentials.push_back(std::move(d1));
  }
  Form r(source, alpha.degree());
  for (const auto& [b, f] : alpha.terms()) {
    Form t = Form::scalar(source, f.substitute(subst));
    for (int i : b) t = wedge(t, differentials[i]);
    r += t;
  }
  return r;
}

}  // namespace gradedirac
