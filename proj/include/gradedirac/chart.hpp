#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gradedirac/polynomial.hpp"

namespace gradedirac {

// Coordinate chart on a star-shaped open set of R^dim. Parameters are extra
// polynomial indeterminates that behave as constants under d and under
// vector fields; they let a single computation stand for a generic family.
class Chart {
 public:
  explicit Chart(std::vector<std::string> coordinates, std::vector<Rational> star_center = {},
                 std::vector<std::string> parameters = {});

  std::size_t dim() const { return coords_.size(); }
  std::size_t nparams() const { return params_.size(); }
  std::size_t nvars() const { return coords_.size() + params_.size(); }

  const std::vector<std::string>& coordinates() const { return coords_; }
  const std::vector<std::string>& parameters() const { return params_; }
  // Coordinates followed by parameters.
  const std::vector<std::string>& variable_names() const { return names_; }
  const std::vector<Rational>& star_center() const { return center_; }
  std::optional<std::size_t> index_of(const std::string& name) const;

  Polynomial zero() const { return Polynomial(nvars()); }
  Polynomial constant(const Rational& c) const { return Polynomial::constant(nvars(), c); }
  Polynomial variable(std::size_t var) const { return Polynomial::variable(nvars(), var); }
  Polynomial variable(const std::string& name) const;

  friend bool operator==(const Chart& a, const Chart& b) {
    return a.coords_ == b.coords_ && a.params_ == b.params_ && a.center_ == b.center_;
  }

 private:
  std::vector<std::string> coords_;
  std::vector<std::string> params_;
  std::vector<std::string> names_;
  std::vector<Rational> center_;
};

using ChartPtr = std::shared_ptr<const Chart>;

ChartPtr make_chart(std::vector<std::string> coordinates, std::vector<Rational> star_center = {},
                    std::vector<std::string> parameters = {});
// Chart with coordinates x1..xn.
ChartPtr make_chart(std::size_t dim);

bool same_chart(const ChartPtr& a, const ChartPtr& b);

}  // namespace gradedirac
