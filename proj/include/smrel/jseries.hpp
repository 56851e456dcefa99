#pragma once

#include <gmpxx.h>

#include <vector>

namespace smrel::jseries {

/* Coefficients of the q-expansion j(z) = q^-1 + 744 + 196884 q + ...
 * Returns c_{-1}, c_0, ..., c_{kmax} (so kmax + 2 entries); out[i] = c_{i-1}.
 * Computed as E4^3 divided by q * prod (1-q^n)^24, all over Z. */
std::vector<mpz_class> j_q_coeffs(long kmax);

/* sum of cubes of divisors, for 1 <= n (sieved internally by callers that
 * need a range; this one is the direct definition) */
mpz_class sigma3(long n);

}  // namespace smrel::jseries
