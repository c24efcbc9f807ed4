#include "favlab/expr.hpp"

#include <cctype>
#include <string>

#include <boost/math/constants/constants.hpp>

#include "favlab/error.hpp"

namespace favlab {
namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Real parse() {
    Real v = sum();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw Error(Errc::invalid_argument, "expression \"" + std::string(text_) + "\": " + what);
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Real sum() {
    Real v = product();
    for (;;) {
      if (accept('+')) {
        v += product();
      } else if (accept('-')) {
        v -= product();
      } else {
        return v;
      }
    }
  }

  Real product() {
    Real v = unary();
    for (;;) {
      if (accept('*')) {
        v *= unary();
      } else if (accept('/')) {
        Real d = unary();
        if (d == 0) fail("division by zero");
        v /= d;
      } else {
        return v;
      }
    }
  }

  Real unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return atom();
  }

  Real atom() {
    skip_space();
    if (accept('(')) {
      Real v = sum();
      if (!accept(')')) fail("missing ')'");
      return v;
    }
    if (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      const std::string_view name = text_.substr(start, pos_ - start);
      if (name == "pi") return boost::math::constants::pi<Real>();
      if (name == "sqrt") {
        if (!accept('(')) fail("sqrt needs '('");
        Real v = sum();
        if (!accept(')')) fail("missing ')'");
        if (v < 0) fail("sqrt of a negative number");
        return boost::multiprecision::sqrt(v);
      }
      fail("unknown name '" + std::string(name) + "'");
    }
    return number();
  }

  Real number() {
    const std::size_t start = pos_;
    auto digits = [&] {
      std::size_t n = 0;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        ++pos_;
        ++n;
      }
      return n;
    };
    std::size_t n = digits();
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      n += digits();
    }
    if (n == 0) fail(pos_ < text_.size() ? "expected a number" : "unexpected end");
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      ++pos_;
      if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) ++pos_;
      if (digits() == 0) fail("bad exponent");
    }
    return Real(std::string(text_.substr(start, pos_ - start)));
  }

  std::string_view text_;
  std::size_t pos_{0};
};

}  // namespace

Real eval_expr(std::string_view text) { return Parser(text).parse(); }

double eval_expr_double(std::string_view text) { return eval_expr(text).convert_to<double>(); }

}  // namespace favlab
