#pragma once

#include <vector>

#include "smrel/algnum.hpp"
#include "smrel/ball.hpp"

namespace smrel::heights {

/* absolute logarithmic Weil height with a rigorous error bound */
struct HeightValue {
    Real value;
    Mag error;

    HeightValue() : value(64) { value.set_zero(); }
    bool is_exact_zero() const { return value.sign() == 0 && error.is_zero(); }
    double upper() const { return value.to_double() + error.to_double(); }
};

/* h(a) = (1/d) (log|lead| + sum log max(1, |root_i|)) over the defining
 * polynomial, from certified root enclosures.  Exact 0 for roots of unity,
 * near-exact log max(|p|,|q|) for rationals.  Error at most 2^-p. */
HeightValue weil_height(const algnum::AlgebraicNumber& a, Prec p = 64);

/* (1/37) d^-2 (log d)^-1 for d >= 2, as a tight interval */
HeightValue bound_lehmer(long d, Prec p = 64);

/* heuristic sizing radius d^n log d (prod h_j) / min_i h_i, scaled by a
 * surrogate constant; never load-bearing for certification */
struct SearchRadius {
    mpz_class radius;   /* ceiling, >= 1 */
    double real_value;  /* the unrounded heuristic value */
};
SearchRadius exponent_search_radius(long n, long d,
                                    const std::vector<double>& hts,
                                    double surrogate = 1.0);

}  // namespace smrel::heights
