#pragma once

#include <cctype>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "koopinv/polyfunc.hpp"

namespace koopinv {

// Expression grammar (binding from loosest to tightest):
//   expr   := term (('+' | '-') term)*
//   term   := factor ('*' factor)*
//   factor := '-' factor | power
//   power  := atom ('^' INT)*
//   atom   := INT | VAR | PARAM | '(' expr ')'
// Variables are `x` for one variable or `x1`..`xn`; the parameter symbol
// (default `a`) is only available when parsing parametric input. Implicit
// multiplication is rejected: `3x` is a syntax error.

namespace detail {

struct Token {
  enum class Kind { Int, Ident, Plus, Minus, Star, Caret, LParen, RParen, End };
  Kind kind;
  std::size_t pos;
  std::uint64_t value = 0;   // Int
  std::string text;          // Ident
};

class Tokenizer {
 public:
  explicit Tokenizer(std::string_view src) : src_(src) { advance(); }

  const Token& peek() const { return current_; }

  Token next() {
    Token t = current_;
    advance();
    return t;
  }

 private:
  void advance() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    const std::size_t start = pos_;
    if (pos_ >= src_.size()) {
      current_ = {Token::Kind::End, start};
      return;
    }
    const char c = src_[pos_];
    switch (c) {
      case '+': ++pos_; current_ = {Token::Kind::Plus, start}; return;
      case '-': ++pos_; current_ = {Token::Kind::Minus, start}; return;
      case '*': ++pos_; current_ = {Token::Kind::Star, start}; return;
      case '^': ++pos_; current_ = {Token::Kind::Caret, start}; return;
      case '(': ++pos_; current_ = {Token::Kind::LParen, start}; return;
      case ')': ++pos_; current_ = {Token::Kind::RParen, start}; return;
      default: break;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::uint64_t v = 0;
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
        const std::uint64_t digit = src_[pos_] - '0';
        if (v > (UINT64_MAX - digit) / 10) throw SyntaxError(start, "a smaller integer literal");
        v = v * 10 + digit;
        ++pos_;
      }
      current_ = {Token::Kind::Int, start, v};
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::string name;
      while (pos_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[pos_])) ||
                                    src_[pos_] == '_')) {
        name.push_back(src_[pos_]);
        ++pos_;
      }
      current_ = {Token::Kind::Ident, start, 0, std::move(name)};
      return;
    }
    throw SyntaxError(start, "a term, operator, or parenthesis");
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  Token current_;
};

template <ScalarField K>
struct ParamAtom {
  static std::optional<K> make(const Field&) { return std::nullopt; }
};

template <>
struct ParamAtom<RationalFunc> {
  static std::optional<RationalFunc> make(const Field& field) {
    return RationalFunc::variable(field);
  }
};

template <ScalarField K>
class ExprParser {
 public:
  ExprParser(std::string_view src, Field field, std::uint32_t nvars,
             std::optional<std::string> param)
      : tok_(src), field_(field), nvars_(nvars), param_(std::move(param)) {}

  FuncPoly<K> parse() {
    FuncPoly<K> result = expr();
    if (tok_.peek().kind != Token::Kind::End) {
      throw SyntaxError(tok_.peek().pos, "'+', '-', '*', '^', or end of input");
    }
    return result;
  }

 private:
  using P = FuncPoly<K>;

  P expr() {
    P acc = term();
    while (true) {
      const auto kind = tok_.peek().kind;
      if (kind == Token::Kind::Plus) {
        tok_.next();
        acc = acc + term();
      } else if (kind == Token::Kind::Minus) {
        tok_.next();
        acc = acc - term();
      } else {
        return acc;
      }
    }
  }

  P term() {
    P acc = factor();
    while (tok_.peek().kind == Token::Kind::Star) {
      tok_.next();
      acc = acc * factor();
    }
    return acc;
  }

  P factor() {
    if (tok_.peek().kind == Token::Kind::Minus) {
      tok_.next();
      return -factor();
    }
    return power();
  }

  P power() {
    P base = atom();
    while (tok_.peek().kind == Token::Kind::Caret) {
      tok_.next();
      const Token& t = tok_.peek();
      if (t.kind == Token::Kind::Minus) throw NegativeExponentError(t.pos);
      if (t.kind != Token::Kind::Int) throw SyntaxError(t.pos, "a non-negative integer exponent");
      base = base.pow(tok_.next().value);
    }
    return base;
  }

  P atom() {
    const Token t = tok_.next();
    switch (t.kind) {
      case Token::Kind::Int: {
        K c = P(field_, nvars_).mint_one().embed(t.value % field_.p());
        return P::constant(field_, nvars_, std::move(c));
      }
      case Token::Kind::Ident:
        return ident(t);
      case Token::Kind::LParen: {
        P inner = expr();
        const Token close = tok_.next();
        if (close.kind != Token::Kind::RParen) throw SyntaxError(close.pos, "')'");
        return inner;
      }
      default:
        throw SyntaxError(t.pos, "an integer, variable, '-' or '('");
    }
  }

  P ident(const Token& t) {
    if (param_ && t.text == *param_) {
      auto c = ParamAtom<K>::make(field_);
      if (c) return P::constant(field_, nvars_, std::move(*c));
      throw UnknownVariableError(t.pos, t.text);
    }
    if (nvars_ == 1 && t.text == "x") {
      return P::coordinate(field_, 1, 0, P(field_, nvars_).mint_one());
    }
    if (nvars_ >= 1 && t.text.size() >= 2 && t.text[0] == 'x') {
      std::uint64_t idx = 0;
      bool digits = true;
      for (std::size_t i = 1; i < t.text.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(t.text[i]))) {
          digits = false;
          break;
        }
        idx = idx * 10 + (t.text[i] - '0');
        if (idx > nvars_) break;
      }
      if (digits && idx >= 1 && idx <= nvars_ && t.text[1] != '0') {
        return P::coordinate(field_, nvars_, static_cast<std::uint32_t>(idx - 1),
                             P(field_, nvars_).mint_one());
      }
    }
    throw UnknownVariableError(t.pos, t.text);
  }

  Tokenizer tok_;
  Field field_;
  std::uint32_t nvars_;
  std::optional<std::string> param_;
};

}  // namespace detail

/// Parses one polynomial expression into canonical reduced form. Pass a
/// parameter symbol to enable the symbolic constant (K must then be
/// RationalFunc).
template <ScalarField K>
FuncPoly<K> parse_poly(std::string_view src, Field field, std::uint32_t nvars,
                       std::optional<std::string> param = std::nullopt) {
  return detail::ExprParser<K>(src, field, nvars, std::move(param)).parse();
}

/// Parses an n-component map "expr; expr; ...", component order = index.
template <ScalarField K>
PolyMap<K> parse_map(std::string_view src, Field field, std::uint32_t nvars,
                     std::optional<std::string> param = std::nullopt) {
  std::vector<FuncPoly<K>> comps;
  std::size_t start = 0;
  while (true) {
    const std::size_t sep = src.find(';', start);
    const std::string_view piece =
        sep == std::string_view::npos ? src.substr(start) : src.substr(start, sep - start);
    comps.push_back(parse_poly<K>(piece, field, nvars, param));
    if (sep == std::string_view::npos) break;
    start = sep + 1;
  }
  if (comps.size() != nvars) throw ArityMismatchError(nvars, comps.size());
  return PolyMap<K>(field, std::move(comps));
}

}  // namespace koopinv
