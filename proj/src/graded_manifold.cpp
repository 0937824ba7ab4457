#include "gradedirac/graded_manifold.hpp"

#include <stdexcept>

#include "gradedirac/subspace.hpp"

namespace gradedirac {

GradedSection::GradedSection(int k_, MultiVector u_, Form alpha_)
    : k(k_), p(u_.degree()), u(std::move(u_)), alpha(std::move(alpha_)) {
  if (p < 1) throw DomainError("graded sections need a multivector of degree >= 1");
  if (alpha.degree() != k + 1 - p) throw DomainError("form degree must be k + 1 - p");
  if (!same_chart(u.chart(), alpha.chart())) throw std::invalid_argument("section components on different charts");
}

GradedSection operator+(const GradedSection& a, const GradedSection& b) {
  if (a.k != b.k || a.p != b.p) throw DomainError("sum of sections at different levels");
  return GradedSection(a.k, a.u + b.u, a.alpha + b.alpha);
}

GradedSection operator*(const Rational& c, const GradedSection& s) {
  return GradedSection(s.k, s.u.scaled(c), s.alpha.scaled(c));
}

GradedSection interior(const MultiVector& x, const GradedSection& s) {
  return GradedSection(s.k, wedge(s.u, x), interior(x, s.alpha));
}

Form graded_pairing(const GradedSection& a, const GradedSection& b) {
  if (a.k != b.k) throw DomainError("pairing of sections with different k");
  if (a.p + b.p > a.k + 1) throw DomainError("pairing needs p + q <= k + 1");
  Form second = interior(b.u, a.alpha);
  return interior(a.u, b.alpha) - second.scaled(Rational(sign_power(a.p * b.p)));
}

GradedSection courant_bracket(const GradedSection& a, const GradedSection& b) {
  if (a.k != b.k) throw DomainError("bracket of sections with different k");
  const int p = a.p, q = b.p, k = a.k;
  if (p + q - 1 > k) throw DomainError("bracket needs p + q - 1 <= k");
  MultiVector uv = schouten_nijenhuis(a.u, b.u);
  Form form = lie_derivative(a.u, b.alpha).scaled(Rational(sign_power((p - 1) * q)));
  form += lie_derivative(b.u, a.alpha).scaled(Rational(sign_power(q)));
  Form inner = interior(b.u, a.alpha) + interior(a.u, b.alpha).scaled(Rational(sign_power(p * q)));
  form -= exterior_derivative(inner).scaled(Rational(sign_power(q), 2));
  return GradedSection(k, uv, form);
}

GradedSection courant_bracket_isotropic(const GradedSection& a, const GradedSection& b) {
  if (a.k != b.k) throw DomainError("bracket of sections with different k");
  const int p = a.p, q = b.p;
  if (p + q - 1 > a.k) throw DomainError("bracket needs p + q - 1 <= k");
  Form form = lie_derivative(a.u, b.alpha).scaled(Rational(sign_power((p - 1) * q)));
  form -= interior(b.u, exterior_derivative(a.alpha));
  return GradedSection(a.k, schouten_nijenhuis(a.u, b.u), form);
}

std::vector<GradedSection> multisymplectic_graph(const Form& omega, int p) {
  const int k = omega.degree() - 1;
  if (k < 1) throw DomainError("graph needs a form of degree >= 2");
  if (p < 1 || p > k) throw DomainError("graph level out of range");
  std::vector<GradedSection> out;
  for (const auto& b : blades_of_degree(static_cast<int>(omega.chart()->dim()), p)) {
    MultiVector u = MultiVector::basis(omega.chart(), b);
    out.emplace_back(k, u, interior(u, omega));
  }
  return out;
}

namespace {

std::string blade_name(const ChartPtr& chart, const Blade& b) {
  std::string s;
  for (int i : b) {
    if (!s.empty()) s += "^";
    s += "@" + chart->variable_names()[i];
  }
  return s;
}

}  // namespace

Verdict check_graph_involutive(const Form& omega) {
  const int k = omega.degree() - 1;
  if (k < 1) throw DomainError("graph needs a form of degree >= 2");
  const auto& chart = omega.chart();
  const int n = static_cast<int>(chart->dim());
  for (int p = 1; p <= k; ++p) {
    for (int q = 1; p + q - 1 <= k; ++q) {
      for (const auto& bi : blades_of_degree(n, p)) {
        MultiVector u = MultiVector::basis(chart, bi);
        GradedSection s(k, u, interior(u, omega));
        for (const auto& bj : blades_of_degree(n, q)) {
          MultiVector v = MultiVector::basis(chart, bj);
          GradedSection t(k, v, interior(v, omega));
          GradedSection c = courant_bracket(s, t);
          // The bracket stays in the graph iff its form part is i_{[U,V]} omega.
          Form defect = c.alpha - interior(c.u, omega);
          if (!defect.is_zero()) {
            return Verdict::fail("bracket of graph generators leaves the graph")
                .with("U", blade_name(chart, bi))
                .with("V", blade_name(chart, bj))
                .with("defect", defect.to_string());
          }
        }
      }
    }
  }
  return Verdict::pass();
}

GeneratedSubbundle::GeneratedSubbundle(ChartPtr chart, int k, std::vector<std::vector<GradedSection>> levels)
    : chart_(std::move(chart)), k_(k), levels_(std::move(levels)) {
  if (static_cast<int>(levels_.size()) != k) throw std::invalid_argument("need generators for p = 1..k");
  for (int p = 1; p <= k; ++p) {
    for (const auto& s : levels_[p - 1]) {
      if (s.p != p || s.k != k) throw DomainError("generator listed at the wrong level");
    }
  }
}

GeneratedSubbundle GeneratedSubbundle::from_level_one(ChartPtr chart, int k, const std::vector<GradedSection>& d1) {
  std::vector<std::vector<GradedSection>> levels(k);
  levels[0] = d1;
  const int n = static_cast<int>(chart->dim());
  for (int p = 2; p <= k; ++p) {
    for (const auto& s : d1) {
      for (const auto& b : blades_of_degree(n, p - 1)) {
        GradedSection t = interior(MultiVector::basis(chart, b), s);
        if (!t.is_zero()) levels[p - 1].push_back(std::move(t));
      }
    }
  }
  return GeneratedSubbundle(std::move(chart), k, std::move(levels));
}

GeneratedSubbundle GeneratedSubbundle::graph_of(const Form& omega) {
  const int k = omega.degree() - 1;
  std::vector<std::vector<GradedSection>> levels;
  for (int p = 1; p <= k; ++p) levels.push_back(multisymplectic_graph(omega, p));
  return GeneratedSubbundle(omega.chart(), k, std::move(levels));
}

std::vector<LevelSpace> GeneratedSubbundle::at_point(const std::vector<Rational>& point) const {
  std::vector<LevelSpace> out;
  const int n = static_cast<int>(chart_->dim());
  for (int p = 1; p <= k_; ++p) {
    std::vector<std::pair<Vector, Vector>> pairs;
    for (const auto& s : level(p)) pairs.emplace_back(to_vector_at(s.u, point), to_vector_at(s.alpha, point));
    out.push_back(LevelSpace::span(n, k_, p, pairs));
  }
  return out;
}

PolyVector flatten(const GradedSection& s) {
  const auto& chart = s.u.chart();
  const int n = static_cast<int>(chart->dim());
  PolyVector out;
  for (const auto& b : blades_of_degree(n, s.p)) out.push_back(s.u.coefficient(b));
  for (const auto& b : blades_of_degree(n, s.k + 1 - s.p)) out.push_back(s.alpha.coefficient(b));
  return out;
}

Verdict check_weak_lagrangian_at(const GeneratedSubbundle& d, const std::vector<std::vector<Rational>>& points) {
  for (const auto& pt : points) {
    Verdict v = check_weak_lagrangian(d.at_point(pt));
    if (!v.passed()) {
      std::string where;
      for (std::size_t i = 0; i < pt.size(); ++i) where += (i ? "," : "") + pt[i].get_str();
      v.with("point", "(" + where + ")");
      return v;
    }
  }
  return Verdict::pass();
}

InvolutivityReport check_involutive(const GeneratedSubbundle& d, const SpanOptions& options) {
  InvolutivityReport rep;
  const int k = d.k();
  const auto& chart = d.chart();
  std::vector<std::vector<PolyVector>> flat(k);
  for (int p = 1; p <= k; ++p) {
    for (const auto& s : d.level(p)) flat[p - 1].push_back(flatten(s));
  }
  Verdict first_failure;
  bool have_failure = false;
  Verdict first_unknown;
  bool have_unknown = false;
  for (int p = 1; p <= k; ++p) {
    for (int q = 1; p + q - 1 <= k; ++q) {
      const int r = p + q - 1;
      for (std::size_t i = 0; i < d.level(p).size(); ++i) {
        for (std::size_t j = 0; j < d.level(q).size(); ++j) {
          GradedSection c = courant_bracket(d.level(p)[i], d.level(q)[j]);
          SpanResult m = express_in_span(chart, flatten(c), flat[r - 1], options);
          Status st = m.status == Membership::member       ? Status::pass
                      : m.status == Membership::not_member ? Status::fail
                                                           : Status::inconclusive;
          if (p == 1 && q == 1) rep.level_one = combine(rep.level_one, st);
          rep.all_levels = combine(rep.all_levels, st);
          auto describe = [&](Verdict v) {
            return v.with("p", std::to_string(p))
                .with("q", std::to_string(q))
                .with("first", std::to_string(i))
                .with("second", std::to_string(j))
                .with("reason", m.witness);
          };
          if (st == Status::fail && !have_failure) {
            first_failure = describe(Verdict::fail("bracket of generators leaves the subbundle"));
            have_failure = true;
          } else if (st == Status::inconclusive && !have_unknown) {
            first_unknown = describe(Verdict::inconclusive("membership not decided within the degree bound"));
            have_unknown = true;
          }
        }
      }
    }
  }
  for (const auto& pt : options.sample_points) {
    RankProfile prof{pt, {}};
    for (int p = 1; p <= k; ++p) prof.ranks.push_back(rank_at(flat[p - 1], pt));
    rep.ranks.push_back(std::move(prof));
    auto fam = d.at_point(pt);
    for (int p = 2; p <= k; ++p) {
      if (!(d1_generated(fam[0], p) == fam[p - 1])) rep.generated_by_level_one = false;
    }
    if (!check_weak_lagrangian(fam).passed()) rep.pointwise_weak_lagrangian = false;
  }
  if (have_failure) {
    rep.verdict = first_failure;
  } else if (have_unknown) {
    rep.verdict = first_unknown;
  } else {
    rep.verdict = Verdict::pass();
  }
  // Level-one involutivity plus generation by D_1 forces every level.
  if (rep.pointwise_weak_lagrangian && rep.generated_by_level_one && rep.level_one == Status::pass &&
      rep.all_levels == Status::fail) {
    rep.verdict = Verdict::fail("level-one involutivity did not propagate to higher levels");
  }
  rep.verdict.with("level_one", to_string(rep.level_one))
      .with("all_levels", to_string(rep.all_levels))
      .with("generated_by_level_one", rep.generated_by_level_one ? "true" : "false")
      .with("pointwise_weak_lagrangian", rep.pointwise_weak_lagrangian ? "true" : "false");
  return rep;
}

}  // namespace gradedirac
