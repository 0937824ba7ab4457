// One line per acceptance criterion. All comparisons are exact over the
// rationals, so the only pinned numbers are case counts and sizes.
#include <array>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "../common/doc_generator.hpp"
#include "gradedirac/dsl/parser.hpp"
#include "gradedirac/dsl/printer.hpp"
#include "gradedirac/graded_poisson.hpp"
#include "gradedirac/suites.hpp"

using namespace gradedirac;

namespace {

constexpr double kTolerance = 0.0;  // exact equality throughout
constexpr int kSnCases = 200;
constexpr int kGraphCases = 100;  // 50 exact + 50 non-closed
constexpr int kLinearCases = 100;
constexpr int kLemmaCases = 100;
constexpr int kPoissonCases = 50;
constexpr int kClosedSectionBound = 3;
constexpr int kAntirepCases = 50;
constexpr int kConservationCases = 50;
constexpr int kRoundTripDocuments = 1000;
constexpr std::size_t kMinCorpus = 10;

struct Line {
  int id;
  std::string title;
  bool pass;
  std::string detail;
  double seconds;
};

std::string details_of(const Verdict& v) {
  std::string s = v.message;
  for (const auto& [k, val] : v.details) s += (s.empty() ? "" : "; ") + k + "=" + val;
  return s;
}

template <class F>
Line timed(int id, std::string title, F&& body) {
  const auto start = std::chrono::steady_clock::now();
  Line line{id, std::move(title), false, {}, 0};
  try {
    auto [pass, detail] = body();
    line.pass = pass;
    line.detail = detail;
  } catch (const std::exception& e) {
    line.detail = std::string("exception: ") + e.what();
  }
  line.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return line;
}

std::pair<bool, std::string> suite(const std::string& name, int cases, std::map<std::string, int> params = {}) {
  SuiteOptions o;
  o.cases = cases;
  o.params = std::move(params);
  const SuiteOutcome out = run_suite(name, o);
  return {out.verdict.passed() && out.cases == cases, name + ": " + std::to_string(out.cases) + " cases; " + details_of(out.verdict)};
}

struct Exec {
  int code;
  std::string output;
};

Exec execute(const std::string& command) {
  Exec r{-1, {}};
  FILE* pipe = popen((command + " 2>&1").c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  std::size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.output.append(buf.data(), got);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

}  // namespace

int main() {
  std::vector<Line> lines;

  lines.push_back(timed(1, "Schouten-Nijenhuis identities", [] { return suite("sn-identities", kSnCases); }));
  lines.push_back(timed(2, "graph involutive iff closed", [] { return suite("graph-theorem", kGraphCases); }));
  lines.push_back(timed(3, "linear structure round trip", [] { return suite("linear-roundtrip", kLinearCases); }));
  lines.push_back(timed(4, "auxiliary lemma", [] { return suite("auxiliary-lemma", kLemmaCases); }));
  lines.push_back(timed(5, "Poisson bracket properties", [] {
    bool pass = true;
    std::string detail;
    for (int n = 1; n <= 2; ++n) {
      for (int m = 1; m <= 2; ++m) {
        auto [ok, d] = suite("poisson-properties", kPoissonCases, {{"n", n}, {"m", m}});
        pass = pass && ok;
        detail += "[n=" + std::to_string(n) + " m=" + std::to_string(m) + (ok ? " pass] " : " FAIL: " + d + "] ");
      }
    }
    return std::make_pair(pass, detail);
  }));
  lines.push_back(timed(6, "closed sections of <(dx + y dz)^dt>", [] {
    auto c = make_chart({"x", "y", "z", "t"});
    const Form alpha = wedge(dx(c, 0) + c->variable("y") * dx(c, 2), dx(c, 3));
    const auto basis = closed_section_search({alpha}, kClosedSectionBound);
    return std::make_pair(basis.empty(), "bound " + std::to_string(kClosedSectionBound) + ": " +
                                             std::to_string(basis.size()) + " nonzero closed sections");
  }));
  lines.push_back(timed(7, "currents bracket and antirepresentation", [] {
    bool pass = true;
    std::string detail;
    for (int n = 1; n <= 3; ++n) {
      for (int m = 1; m <= 2; ++m) {
        auto [ok, d] = suite("currents-symbolic", 1, {{"n", n}, {"m", m}});
        pass = pass && ok;
        if (!ok) detail += "[n=" + std::to_string(n) + " m=" + std::to_string(m) + " " + d + "] ";
      }
    }
    auto [ok, d] = suite("antirep", kAntirepCases);
    pass = pass && ok;
    detail += "symbolic n<=3, m<=2 " + std::string(pass ? "match" : "mismatch") + "; " + d;
    return std::make_pair(pass, detail);
  }));
  lines.push_back(timed(8, "conservation along solutions", [] { return suite("conservation", kConservationCases); }));
  lines.push_back(timed(9, "CLI corpus, round trip, byte stability", [] {
    namespace fs = std::filesystem;
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(GRADEDIRAC_CORPUS)) {
      if (e.path().extension() == ".gdl") files.push_back(e.path());
    }
    std::sort(files.begin(), files.end());
    bool pass = files.size() >= kMinCorpus;
    std::string detail = std::to_string(files.size()) + " corpus documents";
    for (const auto& f : files) {
      const std::string cmd = std::string(GRADEDIRAC_CLI) + " check --format structured --seed 3 " + f.string();
      const Exec a = execute(cmd), b = execute(cmd);
      if (a.code != 0) {
        pass = false;
        detail += "; " + f.filename().string() + " exit " + std::to_string(a.code);
      } else if (a.output != b.output) {
        pass = false;
        detail += "; " + f.filename().string() + " report differs between runs";
      }
    }
    int round_trips = 0;
    for (int i = 0; i < kRoundTripDocuments; ++i) {
      const std::string text = gradedirac::testing::DocumentGenerator(static_cast<std::uint64_t>(i) + 100000).generate();
      try {
        const auto doc = dsl::parse(text);
        const std::string printed = dsl::print(doc);
        const auto again = dsl::parse(printed);
        if (again == doc && dsl::print(again) == printed) ++round_trips;
      } catch (const std::exception&) {
      }
    }
    pass = pass && round_trips == kRoundTripDocuments;
    detail += "; round trip " + std::to_string(round_trips) + "/" + std::to_string(kRoundTripDocuments);
    return std::make_pair(pass, detail);
  }));

  bool all = true;
  for (const auto& l : lines) {
    all = all && l.pass;
    std::printf("criterion %d %-42s %s (tolerance %g, %.1fs) %s\n", l.id, l.title.c_str(), l.pass ? "PASS" : "FAIL",
                kTolerance, l.seconds, l.detail.c_str());
  }
  std::printf("acceptance: %s\n", all ? "PASS" : "FAIL");
  return all ? 0 : 1;
}
