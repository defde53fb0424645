#pragma once

#include "riemext/detail/poly.hpp"

namespace riemext::detail {

/// Canonical quotient num/den. Invariants: den is nonzero, its leading term
/// has coefficient 1 and no exponential factor, and gcd(num, den) = 1 as far
/// as exponential kernels allow (see gcd()). num == 0 implies den == 1.
struct RatFunc {
  Poly num;
  Poly den;
};

/// Builds a canonical Expr from an arbitrary quotient (reduces by gcd).
Expr make_expr(Poly num, Poly den);
/// Builds a canonical Expr from a quotient already known to be reduced.
Expr make_reduced(Poly num, Poly den);
Expr from_poly(Poly p);

}  // namespace riemext::detail
