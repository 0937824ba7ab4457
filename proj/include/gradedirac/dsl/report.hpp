#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gradedirac/dsl/lexer.hpp"
#include "gradedirac/verdict.hpp"

namespace gradedirac::dsl {

struct DirectiveReport {
  std::size_t index = 0;
  Position pos;
  std::string directive;  // canonical text
  Status status = Status::pass;
  std::string message;
  std::vector<std::pair<std::string, std::string>> witnesses;
  std::optional<double> milliseconds;
};

struct Report {
  std::string source;
  std::uint64_t seed = 0;
  int cases = 0;
  std::vector<std::string> warnings;
  std::vector<DirectiveReport> directives;
  Status status = Status::pass;
};

// 0 pass, 1 fail, 2 inconclusive.
int exit_code(const Report& r);
constexpr int kParseErrorExit = 64;

std::string to_json(const Report& r);
// Text view derived from the same data.
std::string to_text(const Report& r);
// Structured form of a parse failure.
std::string parse_error_json(const std::string& source, const ParseError& e);

}  // namespace gradedirac::dsl
