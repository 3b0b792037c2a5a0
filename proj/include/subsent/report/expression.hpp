#pragma once

#include <cctype>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "subsent/corpus.hpp"
#include "subsent/detail/text.hpp"
#include "subsent/error.hpp"

namespace subsent::report {

/// Syntax error at a 0-based character offset of the expression text.
class ExpressionSyntaxError : public Error {
 public:
  ExpressionSyntaxError(std::size_t position, const std::string& what)
      : Error(ErrorKind::Syntax, "at position " + std::to_string(position) + ": " + what), position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

namespace detail_expr {

struct Token {
  enum class Kind { Name, And, Not, End } kind;
  std::string text;
  std::size_t position;
};

inline bool is_name_char(char c) {
  return !std::isspace(static_cast<unsigned char>(c)) && c != '"' && c != '(' && c != ')';
}

inline std::vector<Token> lex(std::string_view text) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    if (c == '"') {
      std::string name;
      ++i;
      bool closed = false;
      while (i < text.size()) {
        if (text[i] == '\\' && i + 1 < text.size()) {
          name.push_back(text[i + 1]);
          i += 2;
        } else if (text[i] == '"') {
          closed = true;
          ++i;
          break;
        } else {
          name.push_back(text[i++]);
        }
      }
      if (!closed) throw ExpressionSyntaxError(start, "unterminated quoted name");
      if (detail::trim(name).empty()) throw ExpressionSyntaxError(start, "empty disease name");
      tokens.push_back({Token::Kind::Name, name, start});
      continue;
    }
    if (!is_name_char(c)) throw ExpressionSyntaxError(start, std::string("unexpected character '") + c + "'");
    while (i < text.size() && is_name_char(text[i])) ++i;
    std::string word(text.substr(start, i - start));
    auto upper = detail::to_lower(word);
    if (upper == "and") {
      tokens.push_back({Token::Kind::And, word, start});
    } else if (upper == "not") {
      tokens.push_back({Token::Kind::Not, word, start});
    } else {
      tokens.push_back({Token::Kind::Name, word, start});
    }
  }
  tokens.push_back({Token::Kind::End, "", text.size()});
  return tokens;
}

}  // namespace detail_expr

/// Parses `expr := term | expr AND term | expr NOT term` (left-associative).
/// Keywords are case-insensitive; names are bare words or "double quoted".
/// AND builds an intersection, NOT a set difference.
inline corpus::SubsetExpression parse_subset_expression(std::string_view text) {
  using detail_expr::Token;
  auto tokens = detail_expr::lex(text);
  std::size_t at = 0;
  auto expect_name = [&]() {
    const auto& tok = tokens[at];
    if (tok.kind != Token::Kind::Name) {
      throw ExpressionSyntaxError(tok.position, tok.kind == Token::Kind::End
                                                    ? "expected a disease name, found end of input"
                                                    : "expected a disease name, found '" + tok.text + "'");
    }
    ++at;
    return corpus::SubsetExpression::leaf(tok.text);
  };
  auto expr = expect_name();
  while (tokens[at].kind != Token::Kind::End) {
    const auto& op = tokens[at];
    if (op.kind == Token::Kind::Name) {
      throw ExpressionSyntaxError(op.position, "expected AND or NOT before '" + op.text + "'");
    }
    ++at;
    auto rhs = expect_name();
    expr = op.kind == Token::Kind::And ? corpus::SubsetExpression::both(expr, rhs)
                                       : corpus::SubsetExpression::minus(expr, rhs);
  }
  return expr;
}

}  // namespace subsent::report
