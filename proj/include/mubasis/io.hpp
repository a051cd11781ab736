#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "mubasis/poly.hpp"

namespace mubasis::io {

// Expression grammar (whitespace insignificant):
//   expr   := ['+'|'-'] term (('+'|'-') term)*
//   term   := factor (['*'] factor)*
//   factor := integer ['/' integer] | var ['^' integer]
// Variables are s and t (plus u when nvars == 3). "**" is rejected.
Poly parse_poly(std::string_view text, int nvars = 2);

// "(e1, e2, ..., ek)" -> k polynomials.
PolyVector parse_tuple(std::string_view text, int nvars = 2);

// "((..),(..),...)" -> list of tuples.
std::vector<PolyVector> parse_tuple_list(std::string_view text, int nvars = 2);

std::string format_tuple(const PolyVector& v);

}  // namespace mubasis::io
