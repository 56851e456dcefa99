#pragma once

#include <gmpxx.h>

#include <map>
#include <optional>
#include <vector>

namespace smrel::factored {

/* A nonzero rational as sign * prod p^e over primes.  Exponents are never
 * zero in the map. */
struct FactoredRational {
    int sign = 1;
    std::map<long, long> exps;

    /* trial division; nullopt when a cofactor above the bound remains */
    static std::optional<FactoredRational> factor(const mpq_class& q,
                                                  long prime_bound = 1000000);

    mpq_class value() const;
    bool is_unit() const { return exps.empty(); }  /* +-1 */

    /* this * o^k */
    void mul_pow(const FactoredRational& o, long k);
};

/* sorted union of all primes appearing in the inputs */
std::vector<long> prime_support(const std::vector<FactoredRational>& v);

}  // namespace smrel::factored
