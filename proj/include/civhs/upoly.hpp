#ifndef CIVHS_UPOLY_HPP
#define CIVHS_UPOLY_HPP

#include <vector>
#include "civhs/rational.hpp"
#include "civhs/multipoly.hpp"

namespace civhs::upoly {

// coeffs[i] is the coefficient of x^i; trimmed so the zero polynomial is {}
using UPoly = std::vector<Rat>;

int deg(const UPoly& p);  // -1 for zero
UPoly trim(UPoly p);
UPoly add(const UPoly& a, const UPoly& b);
UPoly sub(const UPoly& a, const UPoly& b);
UPoly mul(const UPoly& a, const UPoly& b);
UPoly scale(const UPoly& a, const Rat& c);
UPoly derivative(const UPoly& a);
Rat eval(const UPoly& a, const Rat& x);
UPoly rem(UPoly a, const UPoly& b);
bool divides(const UPoly& a, const UPoly& b);  // a | b
UPoly quotient_exact(const UPoly& b, const UPoly& a);
UPoly monic_gcd(UPoly a, UPoly b);
Rat resultant(UPoly a, UPoly b);
bool is_square_free(const UPoly& a);

// Rational roots by divisor enumeration of the integer-cleared ends.
// complete=false when the factorization or enumeration hit its budget, in
// which case roots may be missing (never wrong).
std::vector<Rat> rational_roots(const UPoly& p, bool* complete);

// ---- bivariate helpers over MultiPoly (2 variables) ----

// y^j coefficient as a polynomial in x (var selects which variable is "y")
UPoly coeff_poly(const exact::MultiPoly& f, int var, int j);
UPoly specialize(const exact::MultiPoly& f, int var, const Rat& value);  // plug into var, poly in the other

// Res_y(f, g) as a polynomial in x via evaluation/interpolation (var = index
// of the eliminated variable)
UPoly bivariate_resultant(const exact::MultiPoly& f, const exact::MultiPoly& g, int var);

bool is_square_free_bivariate(const exact::MultiPoly& f);

}  // namespace civhs::upoly

#endif
