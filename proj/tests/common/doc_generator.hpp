#pragma once

// Random well-formed .gdl documents for round-trip tests.

#include <map>
#include <string>
#include <vector>

#include "gradedirac/random.hpp"

namespace gradedirac::testing {

class DocumentGenerator {
 public:
  explicit DocumentGenerator(std::uint64_t seed) : rng_(seed) {}

  std::string generate() {
    out_.clear();
    bound_.clear();
    counter_ = 0;
    chart();
    const int statements = rng_.uniform(3, 10);
    for (int s = 0; s < statements; ++s) statement();
    return out_;
  }

 private:
  struct Bound {
    char kind;  // 'p', 'f', 'm', 's' (section), 'F' (family), 'D' (dirac), 'P' (poisson)
    int degree;
    std::string name;
  };

  void chart() {
    static const std::vector<std::string> pool = {"x", "y", "z", "t", "u", "v"};
    const int n = rng_.uniform(2, 4);
    coords_.assign(pool.begin(), pool.begin() + n);
    params_.clear();
    out_ += "chart M" + std::to_string(rng_.uniform(1, 9)) + " (" + join(coords_) + ")";
    if (rng_.coin()) {
      params_ = {"a", "b"};
      params_.resize(static_cast<std::size_t>(rng_.uniform(1, 2)));
      out_ += " params (" + join(params_) + ")";
    }
    if (rng_.coin()) {
      out_ += " center (";
      for (int i = 0; i < n; ++i) out_ += (i ? ", " : "") + rational(false);
      out_ += ")";
    }
    out_ += ";\n";
  }

  static std::string join(const std::vector<std::string>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v[i];
    return s;
  }

  int n() const { return static_cast<int>(coords_.size()); }
  const std::string& coord() { return coords_[static_cast<std::size_t>(rng_.uniform(0, n() - 1))]; }

  std::string rational(bool wrap_negative = true) {
    const int num = rng_.uniform(-4, 4);
    const int den = rng_.uniform(1, 3);
    std::string s = std::to_string(num);
    if (den > 1) s += "/" + std::to_string(den);
    return num < 0 && wrap_negative ? "(" + s + ")" : s;
  }

  std::string poly(int depth = 0) {
    switch (depth > 2 ? rng_.uniform(0, 1) : rng_.uniform(0, 5)) {
      case 0: return rational();
      case 1:
        if (!params_.empty() && rng_.coin()) return params_[static_cast<std::size_t>(rng_.uniform(0, static_cast<int>(params_.size()) - 1))];
        return coord();
      case 2: return poly(depth + 1) + " + " + poly(depth + 1);
      case 3: return "(" + poly(depth + 1) + ")*" + poly(depth + 1);
      case 4: return coord() + "**" + std::to_string(rng_.uniform(1, 3));
      default: {
        auto p = pick('p', -1);
        return p ? *p : "-" + coord();
      }
    }
  }

  std::string blade(const std::string& prefix, int degree) {
    std::vector<std::string> c = coords_;
    std::string s;
    for (int i = 0; i < degree; ++i) {
      const int j = rng_.uniform(0, static_cast<int>(c.size()) - 1);
      s += (i ? "^" : "") + prefix + c[static_cast<std::size_t>(j)];
      c.erase(c.begin() + j);
    }
    return s;
  }

  std::optional<std::string> pick(char kind, int degree) {
    std::vector<const Bound*> options;
    for (const auto& b : bound_) {
      if (b.kind == kind && (degree < 0 || b.degree == degree)) options.push_back(&b);
    }
    if (options.empty()) return std::nullopt;
    return options[static_cast<std::size_t>(rng_.uniform(0, static_cast<int>(options.size()) - 1))]->name;
  }

  std::string form(int degree, int depth = 0) {
    if (degree == 0) return poly(depth + 1);
    const int choice = depth > 1 ? 0 : rng_.uniform(0, 5);
    if (choice == 1 && degree >= 1) return "d(" + form(degree - 1, depth + 1) + ")";
    if (choice == 2 && degree + 1 <= n()) return "i(" + mv(1, depth + 1) + ", " + form(degree + 1, depth + 1) + ")";
    if (choice == 3) {
      if (auto p = pick('f', degree)) return *p;
    }
    if (choice == 4 && degree >= 2) return "(" + form(1, depth + 1) + ")^(" + form(degree - 1, depth + 1) + ")";
    if (choice == 5) return form(degree, depth + 1) + " - " + form(degree, depth + 1);
    return "(" + poly(depth + 1) + ")*" + blade("d", degree);
  }

  std::string mv(int degree, int depth = 0) {
    const int choice = depth > 1 ? 0 : rng_.uniform(0, 3);
    if (choice == 1) {
      if (auto p = pick('m', degree)) return *p;
    }
    if (choice == 2 && degree == 1) return "sn(" + mv(1, depth + 1) + ", " + mv(1, depth + 1) + ")";
    if (choice == 3) return mv(degree, depth + 1) + " + " + mv(degree, depth + 1);
    return "(" + poly(depth + 1) + ")*" + blade("@", degree);
  }

  std::string fresh(const std::string& stem) { return stem + std::to_string(++counter_); }

  void statement() {
    switch (rng_.uniform(0, 9)) {
      case 0: {
        const std::string name = fresh("f");
        out_ += "poly " + name + " = " + poly() + ";\n";
        bound_.push_back({'p', 0, name});
        break;
      }
      case 1:
      case 2: {
        const int k = rng_.uniform(1, n());
        const std::string name = fresh("w");
        out_ += "form " + std::string(rng_.coin() ? "a" + std::to_string(k) + " " : "") + name + " = " + form(k) + ";\n";
        bound_.push_back({'f', k, name});
        break;
      }
      case 3: {
        const int p = rng_.uniform(1, n());
        const std::string name = fresh("u");
        out_ += "mv " + std::string(rng_.coin() ? "p" + std::to_string(p) + " " : "") + name + " = " + mv(p) + ";\n";
        bound_.push_back({'m', p, name});
        break;
      }
      case 4: {
        const int k = rng_.uniform(1, std::max(1, n() - 1));
        const int p = rng_.uniform(1, k);
        const std::string name = fresh("s");
        out_ += "section " + name + " = (" + mv(p) + ", " + form(k + 1 - p) + ");\n";
        bound_.push_back({'s', k * 10 + p, name});
        break;
      }
      case 5: {
        const int k = rng_.uniform(1, n());
        const std::string name = fresh("S");
        out_ += "family " + name + " {";
        for (int j = rng_.uniform(1, 2); j > 0; --j) out_ += " " + form(k) + ";";
        out_ += " };\n";
        bound_.push_back({'F', k, name});
        break;
      }
      case 6: {
        const int k = rng_.uniform(1, std::max(1, n() - 1));
        const std::string name = fresh("D");
        out_ += "dirac " + name + " k=" + std::to_string(k) + " {\n";
        for (int j = rng_.uniform(1, 2); j > 0; --j) out_ += "  (" + blade("@", 1) + ", " + form(k) + ");\n";
        out_ += "};\n";
        bound_.push_back({'D', k, name});
        break;
      }
      case 7: {
        const std::string name = fresh("P");
        const std::string a = coord();
        std::string b = coord();
        while (b == a) b = coord();
        out_ += "poisson " + name + " = omega(d" + a + "^d" + b + ");\n";
        bound_.push_back({'P', 1, name});
        break;
      }
      default: directive(); break;
    }
  }

  void directive() {
    switch (rng_.uniform(0, 8)) {
      case 0: out_ += "check closed " + form(rng_.uniform(1, n())) + ";\n"; break;
      case 1: out_ += "compute d " + form(rng_.uniform(0, n() - 1)) + ";\n"; break;
      case 2: {
        const int p = rng_.uniform(1, 2), q = rng_.uniform(1, 2);
        if (p + q - 1 <= n()) out_ += "compute sn " + mv(p) + ", " + mv(q) + ";\n";
        break;
      }
      case 3: out_ += "compute lie " + mv(1) + ", " + form(rng_.uniform(0, n())) + ";\n"; break;
      case 4: {
        const int k = rng_.uniform(1, n());
        out_ += "check equal " + form(k) + ", " + form(k) + ";\n";
        break;
      }
      case 5: {
        if (auto f = pick('F', -1)) {
          out_ += "check closed-sections " + *f + " bound " + std::to_string(rng_.uniform(0, 2));
          if (rng_.coin()) out_ += " expect " + std::to_string(rng_.uniform(0, 2));
          out_ += ";\n";
        }
        break;
      }
      case 6:
        if (n() >= 3) out_ += "check involutive graph(" + form(rng_.uniform(2, n())) + ");\n";
        break;
      case 7:
        if (auto d = pick('D', -1)) out_ += std::string(rng_.coin() ? "check involutive " : "check weak-lagrangian ") + *d + ";\n";
        break;
      default:
        if (auto p = pick('P', -1)) out_ += "compute bracket " + coord() + ", " + coord() + " in " + *p + ";\n";
        break;
    }
  }

  Rng rng_;
  std::string out_;
  std::vector<std::string> coords_, params_;
  std::vector<Bound> bound_;
  int counter_ = 0;
};

}  // namespace gradedirac::testing
