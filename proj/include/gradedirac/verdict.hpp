#pragma once

#include <string>
#include <utility>
#include <vector>

namespace gradedirac {

enum class Status { pass, fail, inconclusive };

const char* to_string(Status s);

// Outcome of a check. Details are ordered key/value pairs so that reports
// are reproducible.
struct Verdict {
  Status status = Status::pass;
  std::string message;
  std::vector<std::pair<std::string, std::string>> details;

  bool passed() const { return status == Status::pass; }
  Verdict& with(std::string key, std::string value) {
    details.emplace_back(std::move(key), std::move(value));
    return *this;
  }
  static Verdict pass(std::string msg = {}) { return {Status::pass, std::move(msg), {}}; }
  static Verdict fail(std::string msg) { return {Status::fail, std::move(msg), {}}; }
  static Verdict inconclusive(std::string msg) { return {Status::inconclusive, std::move(msg), {}}; }
};

// fail dominates inconclusive, which dominates pass.
Status combine(Status a, Status b);

}  // namespace gradedirac
