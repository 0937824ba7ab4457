#include "gradedirac/chart.hpp"

#include <set>
#include <stdexcept>

namespace gradedirac {

Chart::Chart(std::vector<std::string> coordinates, std::vector<Rational> star_center,
             std::vector<std::string> parameters)
    : coords_(std::move(coordinates)), params_(std::move(parameters)), center_(std::move(star_center)) {
  if (coords_.empty()) throw std::invalid_argument("chart needs at least one coordinate");
  if (center_.empty()) center_.assign(coords_.size(), 0);
  if (center_.size() != coords_.size()) throw std::invalid_argument("star center has wrong dimension");
  names_ = coords_;
  names_.insert(names_.end(), params_.begin(), params_.end());
  std::set<std::string> seen;
  for (const auto& n : names_) {
    if (n.empty() || !seen.insert(n).second) throw std::invalid_argument("duplicate or empty variable name: " + n);
  }
}

std::optional<std::size_t> Chart::index_of(const std::string& name) const {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i] == name) return i;
  }
  return std::nullopt;
}

Polynomial Chart::variable(const std::string& name) const {
  auto i = index_of(name);
  if (!i) throw std::invalid_argument("unknown variable " + name);
  return variable(*i);
}

ChartPtr make_chart(std::vector<std::string> coordinates, std::vector<Rational> star_center,
                    std::vector<std::string> parameters) {
  return std::make_shared<const Chart>(std::move(coordinates), std::move(star_center), std::move(parameters));
}

ChartPtr make_chart(std::size_t dim) {
  std::vector<std::string> names;
  for (std::size_t i = 1; i <= dim; ++i) names.push_back("x" + std::to_string(i));
  return make_chart(std::move(names));
}

bool same_chart(const ChartPtr& a, const ChartPtr& b) { return a == b || (a && b && *a == *b); }

}  // namespace gradedirac
