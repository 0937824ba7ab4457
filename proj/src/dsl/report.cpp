#include "gradedirac/dsl/report.hpp"

#include <cstdio>

#include "json.hpp"

namespace gradedirac::dsl {

using nlohmann::ordered_json;

int exit_code(const Report& r) {
  switch (r.status) {
    case Status::pass: return 0;
    case Status::fail: return 1;
    case Status::inconclusive: return 2;
  }
  return 1;
}

std::string to_json(const Report& r) {
  ordered_json j;
  j["source"] = r.source;
  j["seed"] = r.seed;
  j["cases"] = r.cases;
  j["status"] = to_string(r.status);
  j["warnings"] = r.warnings;
  ordered_json list = ordered_json::array();
  for (const auto& d : r.directives) {
    ordered_json e;
    e["index"] = d.index;
    e["line"] = d.pos.line;
    e["column"] = d.pos.column;
    e["directive"] = d.directive;
    e["status"] = to_string(d.status);
    e["message"] = d.message;
    ordered_json w = ordered_json::array();
    for (const auto& [k, v] : d.witnesses) w.push_back({{"key", k}, {"value", v}});
    e["witnesses"] = w;
    if (d.milliseconds) e["timing_ms"] = *d.milliseconds;
    list.push_back(e);
  }
  j["directives"] = list;
  return j.dump(2) + "\n";
}

std::string to_text(const Report& r) {
  std::string out;
  for (const auto& w : r.warnings) out += "warning: " + w + "\n";
  for (const auto& d : r.directives) {
    out += "[" + std::string(to_string(d.status)) + "] " + to_string(d.pos) + " " + d.directive;
    if (!d.message.empty()) out += "\n    " + d.message;
    out += "\n";
    for (const auto& [k, v] : d.witnesses) out += "    " + k + ": " + v + "\n";
    if (d.milliseconds) {
      char buf[64];
      std::snprintf(buf, sizeof buf, "    time: %.3f ms\n", *d.milliseconds);
      out += buf;
    }
  }
  int counts[3] = {0, 0, 0};
  for (const auto& d : r.directives) ++counts[static_cast<int>(d.status)];
  out += std::string("result: ") + to_string(r.status) + " (" + std::to_string(counts[0]) + " pass, " +
         std::to_string(counts[1]) + " fail, " + std::to_string(counts[2]) + " inconclusive)\n";
  return out;
}

std::string parse_error_json(const std::string& source, const ParseError& e) {
  ordered_json j;
  j["source"] = source;
  j["status"] = "parse-error";
  j["line"] = e.position().line;
  j["column"] = e.position().column;
  j["message"] = e.message();
  j["expected"] = e.expected();
  return j.dump(2) + "\n";
}

}  // namespace gradedirac::dsl
