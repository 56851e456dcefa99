#pragma once

#include <vector>

#include "smrel/algnum.hpp"
#include "smrel/intpoly.hpp"
#include "smrel/qforms.hpp"

namespace smrel::classpoly {

struct ClassPolyDiag {
    Prec precision_used = 0;  /* working precision of the accepted pass */
    int retries = 0;          /* precision doublings that were needed */
    double max_residual = 0;  /* worst |coeff - nearest integer| + radius */
};

/* The monic integer polynomial whose roots are exactly the j-invariants of
 * the reduced forms of discriminant D.  Every coefficient ball must round
 * to an integer with total residual < 1/4, otherwise the working precision
 * doubles; fails precision only if that never settles. */
IntPoly hilbert_class_poly(long D, ClassPolyDiag* diag = nullptr);

/* j(tau_f) for each reduced form f of D, in reduced_forms(D) order,
 * with absolute error at most 2^-p */
std::vector<CBall> singular_moduli_balls(long D, Prec p);

/* the same values as algebraic numbers (defining polynomial is the class
 * polynomial), in reduced_forms(D) order */
std::vector<algnum::AlgebraicNumber> singular_moduli(long D);

/* discriminants of class number one up to |D| <= bound, with the exact
 * integer value of j */
struct RationalModulus {
    long D;
    mpz_class j;
};
std::vector<RationalModulus> rational_singular_moduli(long bound);

}  // namespace smrel::classpoly
