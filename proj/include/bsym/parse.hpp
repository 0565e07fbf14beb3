#pragma once

#include <string_view>

#include "bsym/expr.hpp"

namespace bsym {

// Parses the expression grammar
//
//   expr   := ["+"|"-"] term (("+"|"-") term)*
//   term   := factor (("*"|"/") factor)*
//   factor := base ("^" exponent)?
//   exponent := signed_int | parameter | "(" signed_int ["/" int] ")"
//   base   := number | ident | call | "(" expr ")"
//
// Identifiers: x t u, u_[xt]+, g g' g'' g''', nu p b eps, aN,
// xi/alpha/beta with optional _[xt]+ partial suffix, phi with primes,
// and the calls log(u), exp(c*u), g(u), g'(0). Whitespace is
// insignificant; errors carry the byte offset.
Expr parse_expr(std::string_view text);

}  // namespace bsym
