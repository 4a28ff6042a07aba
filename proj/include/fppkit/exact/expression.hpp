#pragma once

#include <cctype>
#include <functional>
#include <string>
#include <string_view>

#include "fppkit/exact/integer.hpp"

namespace fppkit::exact {

// Recursive-descent parser for ring expressions:
//   expr  := term (('+'|'-') term)*
//   term  := unary (('*' unary) | ('/' integer))*
//   unary := '-' unary | '+' unary | power
//   power := atom ('^' integer)?
//   atom  := integer ('/' integer)? | identifier | '(' expr ')'
// E must support +, -, * and unary -. Identifiers are resolved by `symbol`.
template <class E>
class ExpressionParser {
 public:
  using RationalFn = std::function<E(const Rational&)>;
  using SymbolFn = std::function<E(const std::string&)>;

  ExpressionParser(RationalFn from_rational, SymbolFn symbol)
      : from_rational_(std::move(from_rational)), symbol_(std::move(symbol)) {}

  E parse(std::string_view text) {
    s_ = text;
    pos_ = 0;
    E v = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw InvalidInput("parse error at column " + std::to_string(pos_ + 1) + ": " + what + " in '" + std::string(s_) + "'");
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  E expr() {
    E acc = term();
    for (;;) {
      if (eat('+')) acc = acc + term();
      else if (eat('-')) acc = acc - term();
      else return acc;
    }
  }
  E term() {
    E acc = unary();
    for (;;) {
      if (eat('*')) {
        acc = acc * unary();
      } else if (eat('/')) {
        // only numeric divisors; "a/b" literals are handled in atom()
        skip();
        std::string d = digits();
        if (d.empty()) fail("division is only supported by an integer constant");
        Integer den(d);
        if (den == 0) fail("division by zero");
        acc = acc * from_rational_(Rational(Integer(1), den));
      } else {
        return acc;
      }
    }
  }
  E unary() {
    if (eat('-')) return -unary();
    if (eat('+')) return unary();
    return power();
  }
  E power() {
    E base = atom();
    if (!eat('^')) return base;
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected exponent");
    unsigned long e = std::stoul(std::string(s_.substr(start, pos_ - start)));
    if (e == 0) return from_rational_(Rational(1));
    E acc = base;
    for (unsigned long i = 1; i < e; ++i) acc = acc * base;
    return acc;
  }
  std::string digits() {
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    return std::string(s_.substr(start, pos_ - start));
  }
  E atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      E v = expr();
      if (!eat(')')) fail("expected ')'");
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      Integer num(digits());
      std::size_t save = pos_;
      skip();
      if (pos_ < s_.size() && s_[pos_] == '/') {
        ++pos_;
        skip();
        std::string d = digits();
        if (d.empty()) fail("expected denominator");
        Integer den(d);
        if (den == 0) fail("zero denominator");
        Rational q(num, den);
        q.canonicalize();
        return from_rational_(q);
      }
      pos_ = save;
      return from_rational_(Rational(num));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      return symbol_(std::string(s_.substr(start, pos_ - start)));
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  RationalFn from_rational_;
  SymbolFn symbol_;
  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace fppkit::exact
