#pragma once

#include <vector>

#include "tropdiv/rational.hpp"

namespace tropdiv {

using RationalMatrix = std::vector<std::vector<Rational>>;
using IntegerMatrix = std::vector<std::vector<Integer>>;

Rational determinant(RationalMatrix a);
// Fraction-free elimination; exact for integer matrices.
Integer bareiss_determinant(IntegerMatrix a);
// Solves a x = b for nonsingular square a; throws DomainError if singular.
std::vector<Rational> solve(RationalMatrix a, std::vector<Rational> b);
RationalMatrix inverse(const RationalMatrix& a);

// Diagonal of the Smith normal form, including zeros for rank deficiency.
std::vector<Integer> smith_diagonal(IntegerMatrix a);

}  // namespace tropdiv
