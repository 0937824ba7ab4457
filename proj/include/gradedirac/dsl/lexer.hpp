#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace gradedirac::dsl {

struct Position {
  int line = 1;
  int column = 1;
};

std::string to_string(const Position& p);

enum class TokenKind { identifier, integer, symbol, end };

struct Token {
  TokenKind kind = TokenKind::end;
  std::string text;
  Position pos;
  bool space_before = false;  // whitespace or a comment precedes the token
};

// Positioned syntax or evaluation error; `expected` lists acceptable tokens.
class ParseError : public std::runtime_error {
 public:
  ParseError(Position pos, const std::string& message, std::vector<std::string> expected = {});
  const Position& position() const { return pos_; }
  const std::string& message() const { return message_; }
  const std::vector<std::string>& expected() const { return expected_; }

 private:
  Position pos_;
  std::string message_;
  std::vector<std::string> expected_;
};

// '#' starts a comment running to the end of the line.
std::vector<Token> tokenize(std::string_view text);

}  // namespace gradedirac::dsl
