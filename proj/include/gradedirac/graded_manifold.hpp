#pragma once

#include <vector>

#include "gradedirac/exterior.hpp"
#include "gradedirac/linear_dirac.hpp"
#include "gradedirac/span_solver.hpp"
#include "gradedirac/verdict.hpp"

namespace gradedirac {

// Section (U, alpha) of E_p = Vee^p TM (+) Lambda^{k+1-p} T*M.
struct GradedSection {
  int k = 0;
  int p = 0;
  MultiVector u;
  Form alpha;

  GradedSection() = default;
  GradedSection(int k, MultiVector u, Form alpha);
  bool is_zero() const { return u.is_zero() && alpha.is_zero(); }
  friend bool operator==(const GradedSection& a, const GradedSection& b) {
    return a.k == b.k && a.p == b.p && a.u == b.u && a.alpha == b.alpha;
  }
  friend bool operator!=(const GradedSection& a, const GradedSection& b) { return !(a == b); }
};

GradedSection operator+(const GradedSection& a, const GradedSection& b);
GradedSection operator*(const Rational& c, const GradedSection& s);

// i_X (U, alpha) = (U ^ X, i_X alpha).
GradedSection interior(const MultiVector& x, const GradedSection& s);

// i_U beta - (-1)^{pq} i_V alpha, defined for p + q <= k + 1.
Form graded_pairing(const GradedSection& a, const GradedSection& b);

// ([U,V], (-1)^{(p-1)q} L_U beta + (-1)^q L_V alpha
//          - (-1)^q 1/2 d(i_V alpha + (-1)^{pq} i_U beta)), for p + q - 1 <= k.
GradedSection courant_bracket(const GradedSection& a, const GradedSection& b);
// Form valid on isotropic pairs: ([U,V], (-1)^{(p-1)q} L_U beta - i_V d alpha).
GradedSection courant_bracket_isotropic(const GradedSection& a, const GradedSection& b);

// Generators (d_I, i_{d_I} omega) of the graph of omega at level p.
std::vector<GradedSection> multisymplectic_graph(const Form& omega, int p);
// Involutivity of the graph of a (k+1)-form on coordinate generators.
Verdict check_graph_involutive(const Form& omega);

// Polynomially generated subbundle with generators per level p = 1..k.
class GeneratedSubbundle {
 public:
  GeneratedSubbundle(ChartPtr chart, int k, std::vector<std::vector<GradedSection>> levels);
  // Levels p >= 2 are spanned by (W ^ d_J, i_{d_J} alpha), |J| = p - 1.
  static GeneratedSubbundle from_level_one(ChartPtr chart, int k, const std::vector<GradedSection>& d1);
  static GeneratedSubbundle graph_of(const Form& omega);

  const ChartPtr& chart() const { return chart_; }
  int k() const { return k_; }
  const std::vector<GradedSection>& level(int p) const { return levels_.at(static_cast<std::size_t>(p - 1)); }
  // Constant linear data at a point.
  std::vector<LevelSpace> at_point(const std::vector<Rational>& point) const;

 private:
  ChartPtr chart_;
  int k_;
  std::vector<std::vector<GradedSection>> levels_;
};

PolyVector flatten(const GradedSection& s);

struct RankProfile {
  std::vector<Rational> point;
  std::vector<std::size_t> ranks;  // per level p
};

struct InvolutivityReport {
  Verdict verdict;
  Status level_one = Status::pass;
  Status all_levels = Status::pass;
  bool generated_by_level_one = true;
  bool pointwise_weak_lagrangian = true;
  std::vector<RankProfile> ranks;
};

InvolutivityReport check_involutive(const GeneratedSubbundle& d, const SpanOptions& options);
Verdict check_weak_lagrangian_at(const GeneratedSubbundle& d, const std::vector<std::vector<Rational>>& points);

}  // namespace gradedirac
