#include "gradedirac/dsl/lexer.hpp"

#include <cctype>

namespace gradedirac::dsl {

namespace {

std::string format_error(const Position& pos, const std::string& message, const std::vector<std::string>& expected) {
  std::string out = to_string(pos) + ": " + message;
  if (!expected.empty()) {
    out += "; expected ";
    for (std::size_t i = 0; i < expected.size(); ++i) out += (i ? ", " : "") + expected[i];
  }
  return out;
}

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

}  // namespace

std::string to_string(const Position& p) { return std::to_string(p.line) + ":" + std::to_string(p.column); }

ParseError::ParseError(Position pos, const std::string& message, std::vector<std::string> expected)
    : std::runtime_error(format_error(pos, message, expected)),
      pos_(pos),
      message_(message),
      expected_(std::move(expected)) {}

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  Position pos;
  std::size_t i = 0;
  bool space = true;
  auto advance = [&](std::size_t count) {
    for (std::size_t j = 0; j < count; ++j) {
      if (text[i] == '\n') {
        ++pos.line;
        pos.column = 1;
      } else {
        ++pos.column;
      }
      ++i;
    }
  };
  while (i < text.size()) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      space = true;
      continue;
    }
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') advance(1);
      space = true;
      continue;
    }
    Token t;
    t.pos = pos;
    t.space_before = space;
    space = false;
    if (ident_start(c)) {
      std::size_t j = i;
      while (j < text.size() && ident_char(text[j])) ++j;
      t.kind = TokenKind::identifier;
      t.text = std::string(text.substr(i, j - i));
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      if (j < text.size() && ident_start(text[j])) {
        throw ParseError(pos, "malformed number '" + std::string(text.substr(i, j - i + 1)) + "'");
      }
      t.kind = TokenKind::integer;
      t.text = std::string(text.substr(i, j - i));
    } else {
      t.kind = TokenKind::symbol;
      const std::string_view two = text.substr(i, 2);
      if (two == "**" || two == "->") {
        t.text = std::string(two);
      } else if (std::string_view(";,(){}[]<>=+-*/^@").find(c) != std::string_view::npos) {
        t.text = std::string(1, c);
      } else {
        throw ParseError(pos, std::string("unexpected character '") + c + "'");
      }
    }
    advance(t.text.size());
    out.push_back(std::move(t));
  }
  Token end;
  end.kind = TokenKind::end;
  end.pos = pos;
  end.space_before = space;
  out.push_back(end);
  return out;
}

}  // namespace gradedirac::dsl
