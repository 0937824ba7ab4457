#pragma once

#include <string>
#include <vector>

#include "gradedirac/exterior.hpp"
#include "gradedirac/graded_poisson.hpp"
#include "gradedirac/verdict.hpp"

namespace gradedirac {

// Canonical coordinates (x^mu, y^i, p^mu_i, p) on the multimomentum bundle,
// named x1..xn, y1..ym, p{mu}_{i}, p. Indices below are 0-based.
class FieldChart {
 public:
  FieldChart(int n, int m, std::vector<std::string> parameters = {});

  int n() const { return n_; }
  int m() const { return m_; }
  // Full chart; reduced chart without p; base chart x1..xn.
  const ChartPtr& full() const { return full_; }
  const ChartPtr& reduced() const { return reduced_; }
  const ChartPtr& base() const { return base_; }

  int x(int mu) const { return mu; }
  int y(int i) const { return n_ + i; }
  int pm(int mu, int i) const { return n_ + m_ + mu * m_ + i; }
  int p() const { return n_ + m_ + n_ * m_; }

  // Variables of the full chart: coordinates, then parameters.
  Polynomial var(int index) const { return full_->variable(static_cast<std::size_t>(index)); }

 private:
  int n_, m_;
  ChartPtr full_, reduced_, base_;
};

// d^n x and d^{n-1}x_mu = i_{d/dx^mu} d^n x on the full chart.
Form dn_x(const FieldChart& fc);
Form dn1_x(const FieldChart& fc, int mu);

// dp ^ d^n x + dp^mu_i ^ dy^i ^ d^{n-1}x_mu.
Form canonical_omega(const FieldChart& fc);
// Graded Poisson structure with S^n = i_{TM} Omega.
const GradedPoissonStructure& canonical_structure(const FieldChart& fc);

// (A^i p^mu_i + B^mu) d^{n-1}x_mu with A, B functions of (x, y).
Form restricted_observable(const FieldChart& fc, const std::vector<Polynomial>& a, const std::vector<Polynomial>& b);
// Closed-form field for the restricted class:
// (d_mu A^i p^mu_i + d_mu B^mu) d/dp + (d_j A^i p^mu_i + d_j B^mu) d/dp^mu_j - A^i d/dy^i.
MultiVector restricted_field(const FieldChart& fc, const std::vector<Polynomial>& a, const std::vector<Polynomial>& b);

// Throws DomainError unless alpha is an (n-1)-form without p or dp.
void require_observable_shape(const FieldChart& fc, const Form& alpha);
// X with i_X Omega = d alpha; throws DomainError when alpha is not an observable.
MultiVector observable_field(const FieldChart& fc, const Form& alpha);

// Components of X = A d/dp + B^mu_i d/dp^mu_i + C^i d/dy^i.
struct FieldComponents {
  Polynomial a;
  std::vector<std::vector<Polynomial>> b;  // b[mu][i]
  std::vector<Polynomial> c;
};
FieldComponents components(const FieldChart& fc, const MultiVector& x);

// (p + H) d^n x; H must not depend on p.
Form hamiltonian_form(const FieldChart& fc, const Polynomial& h);
// {alpha, eta} = i_{X_alpha} d eta for eta = f d^n x.
Form current_bracket_eta(const FieldChart& fc, const Form& alpha, const Form& eta);
Form current_bracket_h(const FieldChart& fc, const Form& alpha, const Polynomial& h);
// Closed form of {alpha, h} for the restricted class.
Form restricted_current_bracket(const FieldChart& fc, const std::vector<Polynomial>& a,
                                const std::vector<Polynomial>& b, const Polynomial& h);

// Bracket of lifts, checked to descend to an observable.
Form observable_bracket(const FieldChart& fc, const Form& alpha, const Form& beta);
// [[[[a, b]], c]] + cyclic terms.
Form observable_jacobi(const FieldChart& fc, const Form& a, const Form& b, const Form& c);

struct IdentityCheck {
  Verdict verdict;
  Form defect;
};
// {[[a, b]], eta} = -{a, {b, eta}} + {b, {a, eta}}.
IdentityCheck antirep_check(const FieldChart& fc, const Form& alpha, const Form& beta, const Form& eta);

// Section x -> (x, psi^i(x), psi^mu_i(x)) with polynomials on the base chart.
struct CandidateSolution {
  std::vector<Polynomial> y;                 // psi^i
  std::vector<std::vector<Polynomial>> pm;   // psi^mu_i as pm[mu][i]
};

// Images of the full-chart variables under h o psi, in the base ring.
std::vector<Polynomial> section_images(const FieldChart& fc, const CandidateSolution& psi, const Polynomial& h);
Polynomial compose(const FieldChart& fc, const Polynomial& f, const CandidateSolution& psi, const Polynomial& h);

struct HdwResidual {
  std::vector<std::vector<Polynomial>> momentum;  // d_mu psi^i - dH/dp^mu_i, as [mu][i]
  std::vector<Polynomial> field;                  // d_mu psi^mu_i + dH/dy^i, as [i]
  bool is_solution() const;
};
HdwResidual hdw_residual(const FieldChart& fc, const CandidateSolution& psi, const Polynomial& h);

// Coefficient of psi^* i_xi Omega_h on d^n x for every coordinate field xi of
// the reduced chart, Omega_h = -dH ^ d^n x + dp^mu_i ^ dy^i ^ d^{n-1}x_mu.
std::vector<Polynomial> intrinsic_residual(const FieldChart& fc, const CandidateSolution& psi, const Polynomial& h);

// H = sum d_mu phi^i p^mu_i + V(x, y) with psi^i = phi^i, psi^1_i solving the
// divergence equation and the other psi^mu_i zero.
struct ConstructedSolution {
  Polynomial h;
  CandidateSolution psi;
};
ConstructedSolution construct_hdw_solution(const FieldChart& fc, const std::vector<Polynomial>& phi,
                                           const Polynomial& potential);

struct ConservationReport {
  Verdict verdict;
  Polynomial defect;         // psi^*(d alpha) - (h o psi)^*{alpha, h} on d^n x
  Polynomial factorization;  // sum B^mu_i R^i_mu - sum C^i R_i
  bool is_solution = false;
  bool bracket_vanishes = false;
};
ConservationReport conservation_check(const FieldChart& fc, const CandidateSolution& psi, const Form& alpha,
                                      const Polynomial& h);

}  // namespace gradedirac
