#pragma once
// Small recursive-descent parser for + - * / ^ ( ) with integer literals and
// identifiers. Value must support ring operations and construction from Scalar.

#include <cctype>
#include <functional>
#include <stdexcept>
#include <string>

#include "qkg/coeffring.hpp"

namespace qkg::detail {

template <class Value>
class ExprParser {
 public:
  using Ident = std::function<Value(const std::string&)>;
  using Divide = std::function<Value(const Value&, const Value&)>;
  using Power = std::function<Value(const Value&, int)>;

  ExprParser(const std::string& s, Ident ident, Divide div, Power pow)
      : s_(s), ident_(std::move(ident)), div_(std::move(div)), pow_(std::move(pow)) {}

  Value parse() {
    Value v = expr();
    skip();
    if (i_ != s_.size()) fail("trailing input");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw std::invalid_argument("parse error at " + std::to_string(i_) + ": " + why);
  }
  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  bool eat(char c) {
    skip();
    if (i_ < s_.size() && s_[i_] == c) {
      ++i_;
      return true;
    }
    return false;
  }
  Value expr() {
    Value v = term();
    for (;;) {
      if (eat('+'))
        v = v + term();
      else if (eat('-'))
        v = v - term();
      else
        return v;
    }
  }
  Value term() {
    Value v = unary();
    for (;;) {
      if (eat('*'))
        v = v * unary();
      else if (eat('/'))
        v = div_(v, unary());
      else
        return v;
    }
  }
  Value unary() {
    if (eat('-')) return Value(Scalar()) - unary();
    if (eat('+')) return unary();
    return power();
  }
  Value power() {
    Value v = atom();
    if (eat('^')) {
      skip();
      bool neg = eat('-');
      skip();
      std::size_t st = i_;
      while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
      if (st == i_) fail("exponent expected");
      int e = std::stoi(s_.substr(st, i_ - st));
      v = pow_(v, neg ? -e : e);
    }
    return v;
  }
  Value atom() {
    skip();
    if (i_ >= s_.size()) fail("unexpected end");
    if (eat('(')) {
      Value v = expr();
      if (!eat(')')) fail("')' expected");
      return v;
    }
    char c = s_[i_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t st = i_;
      while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
      return number(s_.substr(st, i_ - st));
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t st = i_;
      while (i_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[i_]))) ++i_;
      return ident_(s_.substr(st, i_ - st));
    }
    fail(std::string("unexpected '") + c + "'");
  }
  Value number(const std::string& digits) {
    return Value(Scalar(GQ(mpq_class(mpz_class(digits)))));
  }

  std::string s_;
  std::size_t i_ = 0;
  Ident ident_;
  Divide div_;
  Power pow_;
};

}  // namespace qkg::detail
