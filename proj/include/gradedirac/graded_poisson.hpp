#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gradedirac/exterior.hpp"
#include "gradedirac/linear_dirac.hpp"
#include "gradedirac/random.hpp"
#include "gradedirac/span_solver.hpp"
#include "gradedirac/verdict.hpp"

namespace gradedirac {

// Graded structure generated by top-level data: generators of S^k in
// Lambda^k T*M and representatives of sharp_k on them. Lower levels use
// S^a = span{ i_{d_J} alpha } and sharp_a(i_{d_J} alpha) = sharp_k(alpha) ^ d_J.
class GradedPoissonStructure {
 public:
  struct Level {
    int a = 0;
    std::vector<Form> generators;
    std::vector<MultiVector> images;
  };

  static GradedPoissonStructure extend_from_top(ChartPtr chart, int k, std::vector<Form> top,
                                                std::vector<MultiVector> images);
  // S^k = i_{TM} omega with sharp(i_X omega) = X.
  static GradedPoissonStructure from_form(const Form& omega);

  const ChartPtr& chart() const { return chart_; }
  int k() const { return k_; }
  const Level& level(int a) const;
  bool constant_coefficients() const { return linear_.has_value(); }
  // Linear data for constant-coefficient structures.
  const LinearGradedDirac& linear() const;

  // sharp_a(theta) for a section theta of S^a, as a polynomial representative.
  struct SharpResult {
    Membership status = Membership::inconclusive;
    std::optional<MultiVector> value;
    std::string witness;
  };
  SharpResult sharp(const Form& theta, const SpanOptions& options = {}) const;

  // K_1 = 0 at the given points (exactly, for constant structures).
  Verdict check_nondegenerate(const std::vector<std::vector<Rational>>& points = {}) const;

 private:
  GradedPoissonStructure(ChartPtr chart, int k) : chart_(std::move(chart)), k_(k) {}

  ChartPtr chart_;
  int k_ = 0;
  std::vector<Level> levels_;
  std::optional<LinearGradedDirac> linear_;
};

// An (a-1)-form with d alpha in S^a, together with sharp_a(d alpha).
struct HamiltonianForm {
  Form form;
  int level = 0;
  MultiVector witness;
};

// deg alpha = k - a.
int hamiltonian_degree(const GradedPoissonStructure& p, const HamiltonianForm& h);

struct HamiltonianCheck {
  Membership status = Membership::inconclusive;
  std::optional<HamiltonianForm> form;
  std::string witness;
};
HamiltonianCheck is_hamiltonian(const Form& alpha, const GradedPoissonStructure& p, const SpanOptions& options = {});

// {alpha, beta} = (-1)^{deg beta} i_{sharp(d beta)} d alpha; needs a + b >= k + 1.
Form poisson_bracket(const GradedPoissonStructure& p, const HamiltonianForm& alpha, const HamiltonianForm& beta);
// Same, with the witness -[U, V] attached.
HamiltonianForm poisson_bracket_h(const GradedPoissonStructure& p, const HamiltonianForm& alpha,
                                  const HamiltonianForm& beta);

// X_alpha = sharp_k(d alpha) for a Hamiltonian (k-1)-form.
MultiVector hamiltonian_vector_field(const GradedPoissonStructure& p, const HamiltonianForm& alpha);

// Bases of Hamiltonian (a-1)-forms with coefficients of bounded degree in the
// allowed coordinates, for constant-coefficient structures.
class HamiltonianSampler {
 public:
  HamiltonianSampler(const GradedPoissonStructure& p, int level, int degree, std::vector<bool> allowed = {});
  int level() const { return level_; }
  const std::vector<Form>& basis() const { return basis_; }
  // Basis elements whose differential is nonzero.
  const std::vector<Form>& nontrivial() const { return nontrivial_; }
  bool empty() const { return basis_.empty(); }
  HamiltonianForm draw(Rng& rng) const;
  HamiltonianForm make(const Form& alpha) const;

 private:
  const GradedPoissonStructure* p_;
  int level_;
  std::vector<Form> basis_;
  std::vector<Form> nontrivial_;
};

struct PropertyOutcome {
  std::string name;
  Verdict verdict;
  int instances = 0;
};

struct PropertyOptions {
  std::uint64_t seed = 0;
  int cases = 50;
  int coefficient_degree = 2;
};

// Degree additivity, graded skew-symmetry, locality, Leibniz for a = k,
// invariance under symmetries and the Jacobi identity up to an exact term,
// plus closure of the bracket on Hamiltonian forms.
std::vector<PropertyOutcome> check_bracket_properties(const GradedPoissonStructure& p, const PropertyOptions& options);

// (-1)^{deg a deg c} {{a, b}, c} + cyclic terms.
Form jacobi_sum(const GradedPoissonStructure& p, const HamiltonianForm& a, const HamiltonianForm& b,
                const HamiltonianForm& c);
// Left side minus right side of the cyclic relation
// (-1)^{(deg c - 1) deg a} i_{sharp dc} d i_{sharp db} da + cyclic
//   = (-1)^{(deg a + deg c)(deg b + 1)} d i_{sharp da} i_{sharp db} dc.
Form jacobi_lemma_defect(const GradedPoissonStructure& p, const HamiltonianForm& a, const HamiltonianForm& b,
                         const HamiltonianForm& c);

// Solutions of d(sum f^i alpha_i) = 0 with deg f^i <= bound, as a basis.
std::vector<Form> closed_section_search(const std::vector<Form>& generators, int bound);

// Generators of the image of sharp_k plus K_1 at a point.
std::vector<MultiVector> characteristic_distribution(const GradedPoissonStructure& p);
RowSpace distribution_at(const GradedPoissonStructure& p, const std::vector<Rational>& point);

// Alternating (k+1)-form on E_x written in a chosen basis of E_x.
struct LeafForm {
  int k = 0;
  std::vector<Vector> basis;  // tangent vectors spanning E_x
  std::map<Blade, Rational> coefficients;  // on increasing index tuples into `basis`
};

// omega(e_0, ..., e_k) = alpha_0(e_1, ..., e_k) with (e_0, alpha_0) in the graph;
// throws DomainError if the value depends on the choice of alpha_0.
LeafForm leaf_form_at(const GradedPoissonStructure& p, const std::vector<Rational>& point);
// omega(v_0, ..., v_k) for arbitrary tangent vectors with constant coefficients.
Rational evaluate_form(int n, int degree, const Vector& form, const std::vector<Vector>& vectors);

// Coordinate leaves spanned by `leaf` with a constant nondegenerate leaf form.
GradedPoissonStructure foliation_to_structure(const ChartPtr& chart, const std::vector<int>& leaf,
                                              const Form& leaf_form);

}  // namespace gradedirac
