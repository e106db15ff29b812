#pragma once

#include <cctype>
#include <string>

#include "affode/expr.hpp"

namespace affode {

// Recursive-descent parser for ODE right-hand sides and plain expressions.
//
//   expr   := term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := atom ('^' integer)?
//   atom   := number | ident | "y'" | '(' expr ')' | '-' atom
//   number := integer ('/' integer)?
//   ident  := letter (letter|digit)*
//
// `y'` and `p` both denote the derivative coordinate. The bundle and group
// parameter names (u1, u2, u3, t1, v1, v3) resolve to their symbols; any
// other identifier becomes a free constant. Errors carry the byte offset.
class Parser {
 public:
  static Expr parse(const std::string& text) {
    Parser p(text);
    p.skip_ws();
    Expr e = p.parse_expr();
    p.skip_ws();
    if (p.pos_ != text.size())
      fail(Errc::parse_error, "unexpected input at offset " + std::to_string(p.pos_),
           p.pos_);
    return e;
  }

 private:
  explicit Parser(const std::string& text) : text_(text) {}

  Expr parse_expr() {
    Expr acc = parse_term();
    while (true) {
      skip_ws();
      if (accept('+')) {
        acc = acc + parse_term();
      } else if (accept('-')) {
        acc = acc - parse_term();
      } else {
        return acc;
      }
    }
  }

  Expr parse_term() {
    Expr acc = parse_factor();
    while (true) {
      skip_ws();
      if (accept('*')) {
        acc = acc * parse_factor();
      } else if (accept('/')) {
        Expr d = parse_factor();
        if (d.is_zero()) fail(Errc::parse_error, "division by zero", pos_);
        acc = acc / d;
      } else {
        return acc;
      }
    }
  }

  Expr parse_factor() {
    Expr base = parse_atom();
    skip_ws();
    if (accept('^')) {
      skip_ws();
      bool neg = accept('-');
      long e = parse_integer();
      if (neg) e = -e;
      if (e < 0 && base.is_zero())
        fail(Errc::parse_error, "zero raised to a negative power", pos_);
      return base.pow(e);
    }
    return base;
  }

  Expr parse_atom() {
    skip_ws();
    if (pos_ >= text_.size()) fail(Errc::parse_error, "unexpected end of input", pos_);
    char c = text_[pos_];
    if (c == '-') {
      ++pos_;
      return -parse_atom();
    }
    if (c == '(') {
      ++pos_;
      Expr e = parse_expr();
      skip_ws();
      if (!accept(')')) fail(Errc::parse_error, "expected ')'", pos_);
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return parse_number();
    if (std::isalpha(static_cast<unsigned char>(c))) return parse_ident();
    fail(Errc::parse_error, std::string("unexpected character '") + c + "'", pos_);
  }

  Expr parse_number() {
    Int n = parse_big_integer();
    std::size_t save = pos_;
    skip_ws();
    if (accept('/')) {
      skip_ws();
      if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        Int d = parse_big_integer();
        if (d == 0)
          fail(Errc::parse_error, "division-by-zero literal", pos_);
        return Expr::from_fraction(Polynomial::constant(n), Polynomial::constant(d));
      }
      pos_ = save;  // the '/' belongs to the enclosing term
    } else {
      pos_ = save;
    }
    return Expr::integer(n);
  }

  Expr parse_ident() {
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_]))))
      ++pos_;
    std::string name = text_.substr(start, pos_ - start);
    if (name == "y" && pos_ < text_.size() && text_[pos_] == '\'') {
      ++pos_;
      return Expr::variable(Symbol::p());
    }
    if (name == "x") return Expr::variable(Symbol::x());
    if (name == "y") return Expr::variable(Symbol::y());
    if (name == "p") return Expr::variable(Symbol::p());
    if (name == "u1") return Expr::variable(Symbol::u1());
    if (name == "u2") return Expr::variable(Symbol::u2());
    if (name == "u3") return Expr::variable(Symbol::u3());
    if (name == "t1") return Expr::variable(Symbol::t1());
    if (name == "v1") return Expr::variable(Symbol::v1());
    if (name == "v3") return Expr::variable(Symbol::v3());
    return Expr::variable(Symbol::free_const(name));
  }

  long parse_integer() {
    if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
      fail(Errc::parse_error, "expected integer", pos_);
    long v = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      v = v * 10 + (text_[pos_] - '0');
      if (v > 1000000) fail(Errc::parse_error, "exponent too large", pos_);
      ++pos_;
    }
    return v;
  }

  Int parse_big_integer() {
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
    if (pos_ == start) fail(Errc::parse_error, "expected integer", pos_);
    return Int(text_.substr(start, pos_ - start));
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }

  bool accept(char c) {
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  const std::string& text_;
  std::size_t pos_ = 0;
};

inline Expr parse_expr(const std::string& text) { return Parser::parse(text); }

}  // namespace affode
