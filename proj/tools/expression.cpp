#include "expression.hpp"

#include <cctype>

namespace rosen::cli {

ExpressionError::ExpressionError(const std::string& what, std::size_t position)
    : std::invalid_argument(what + " at position " + std::to_string(position)), position_(position) {}

namespace {

class Parser {
 public:
  Parser(std::string_view text, const Real& lam, Precision prec) : s_(text), lam_(lam), prec_(prec) {}

  Real parse() {
    Real value = expr();
    skip_space();
    if (i_ != s_.size()) fail("unexpected '" + std::string(1, s_[i_]) + "'");
    return value;
  }

 private:
  Real expr() {
    Real value = term();
    for (;;) {
      if (accept('+')) {
        value += term();
      } else if (accept('-')) {
        value -= term();
      } else {
        return value;
      }
    }
  }

  Real term() {
    Real value = unary();
    for (;;) {
      if (accept('*')) {
        value *= unary();
      } else if (accept('/')) {
        const std::size_t at = i_;
        const Real rhs = unary();
        if (rhs.is_zero()) throw ExpressionError("division by zero", at);
        value /= rhs;
      } else {
        return value;
      }
    }
  }

  Real unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return primary();
  }

  Real primary() {
    skip_space();
    if (i_ == s_.size()) fail("unexpected end of expression");
    if (accept('(')) {
      Real value = expr();
      expect(')');
      return value;
    }
    const char c = s_[i_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c))) {
      const std::size_t at = i_;
      const std::string name = identifier();
      if (name == "pi") return Real::pi(prec_);
      if (name == "lambda") return lam_.with_precision(prec_);
      if (name == "sqrt") {
        expect('(');
        skip_space();
        const std::size_t arg_at = i_;
        std::string digits;
        while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) digits += s_[i_++];
        if (digits.empty()) throw ExpressionError("sqrt takes a non-negative integer literal", arg_at);
        expect(')');
        return sqrt(Real::parse(digits, prec_));
      }
      throw ExpressionError("unknown name '" + name + "'", at);
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  Real number() {
    const std::size_t start = i_;
    const auto digits = [&] {
      std::size_t n = 0;
      while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_, ++n;
      return n;
    };
    std::size_t n = digits();
    if (i_ < s_.size() && s_[i_] == '.') {
      ++i_;
      n += digits();
    }
    if (n == 0) throw ExpressionError("malformed number", start);
    if (i_ < s_.size() && (s_[i_] == 'e' || s_[i_] == 'E')) {
      ++i_;
      if (i_ < s_.size() && (s_[i_] == '+' || s_[i_] == '-')) ++i_;
      if (digits() == 0) throw ExpressionError("malformed exponent", start);
    }
    return Real::parse(s_.substr(start, i_ - start), prec_);
  }

  std::string identifier() {
    std::string name;
    while (i_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[i_]))) name += s_[i_++];
    return name;
  }

  void skip_space() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }

  bool accept(char c) {
    skip_space();
    if (i_ < s_.size() && s_[i_] == c) {
      ++i_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  [[noreturn]] void fail(const std::string& what) const { throw ExpressionError(what, i_); }

  std::string_view s_;
  const Real& lam_;
  Precision prec_;
  std::size_t i_ = 0;
};

}  // namespace

Real evaluate_expression(std::string_view text, const Real& lam, Precision prec) {
  return Parser(text, lam, prec).parse();
}

}  // namespace rosen::cli
