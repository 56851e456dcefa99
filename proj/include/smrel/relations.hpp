#pragma once

#include <optional>
#include <vector>

#include "smrel/algnum.hpp"
#include "smrel/factored.hpp"

namespace smrel::relations {

using algnum::AlgebraicNumber;

/* order m with a^m = 1, decided exactly: the defining polynomial must be
 * the m-th cyclotomic polynomial for some m <= 2 deg^2 */
std::optional<unsigned long> root_of_unity_order(const AlgebraicNumber& a);
bool is_root_of_unity(const AlgebraicNumber& a);

/* (m, k) with the value equal to e^(2 pi i k/m), gcd(k, m) = 1; (1, 0)
 * for the value 1.  nullopt when the value is not a root of unity. */
std::optional<std::pair<unsigned long, unsigned long>>
root_of_unity_decomposition(const AlgebraicNumber& a);

struct RelationCertificate {
    /* integer exponents with prod member_i^exponents_i = 1, not all zero */
    std::vector<mpz_class> exponents;
    /* "exact" (symbolic identity) or "certified_numeric" (Liouville gap) */
    std::string mode;
    Prec numeric_precision = 0;  /* working precision when certified_numeric */
    bool minimal = false;        /* set only after subset independence ran */

    /* informational, exact rational route only: the primitive generator of
     * the plain exponent kernel, and the sign of the product it produces.
     * When that sign is -1, `exponents` is its double. */
    std::vector<mpz_class> kernel_generator;
    int kernel_sign = 1;
};

struct Options {
    bool force_numeric = false;  /* skip the exact route even for rationals */
    long prime_bound = 1000000;  /* trial division ceiling for the exact route */
    Prec max_precision = 4096;   /* escalation ceiling for numeric work */
};

/* Relations with target exactly 1.  Exact kernel route when every member
 * factors over small primes; otherwise lattice reduction over certified
 * (log|a|, arg a) columns plus a 2*pi column, every candidate re-verified.
 * Returns nullopt only when "no relation with max |a_i| <= exponent_bound"
 * has itself been certified (via the Gram-Schmidt floor of the lattice).
 * Throws indeterminate when neither side can be settled. */
std::optional<RelationCertificate> find_relation(
    const std::vector<AlgebraicNumber>& members, const mpz_class& exponent_bound,
    const Options& opt = {});

/* exact route on already-factored inputs; never indeterminate */
std::optional<RelationCertificate> find_relation_exact(
    const std::vector<factored::FactoredRational>& members);

enum class Verify { exact, certified_numeric, refuted };

/* checks prod member_i^e_i = 1: symbolically when all members are rational
 * (or roots of unity), otherwise by a ball product against a Liouville-type
 * separation e^{-D (h+log 2)}.  Throws indeterminate if precision runs out. */
Verify verify_relation(const std::vector<AlgebraicNumber>& members,
                       const std::vector<mpz_class>& exponents,
                       const Options& opt = {});

/* dependent, and every proper subset independent */
bool is_minimal_dependent(const std::vector<AlgebraicNumber>& members,
                          const mpz_class& exponent_bound,
                          const Options& opt = {});

}  // namespace smrel::relations
