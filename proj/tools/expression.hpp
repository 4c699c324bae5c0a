#pragma once

// Arithmetic on special points: decimal literals, pi, lambda, sqrt(integer),
// + - * / with the usual precedence, unary minus and parentheses.

#include <stdexcept>
#include <string>
#include <string_view>

#include "rosen/real.hpp"

namespace rosen::cli {

class ExpressionError : public std::invalid_argument {
 public:
  ExpressionError(const std::string& what, std::size_t position);
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// Evaluates `text` at `prec` with `lambda` bound to `lam`.
Real evaluate_expression(std::string_view text, const Real& lam, Precision prec);

}  // namespace rosen::cli
