#include "smrel/factored.hpp"

#include <set>

#include "smrel/util.hpp"

namespace smrel::factored {

namespace {

/* divide out every prime <= bound; returns false if a cofactor remains */
bool strip(mpz_class n, long sgn_exp, long bound,
           std::map<long, long>& exps) {
    if (n < 0) n = -n;
    for (long p = 2; p <= bound && n > 1; p == 2 ? p = 3 : p += 2) {
        if (!mpz_divisible_ui_p(n.get_mpz_t(), (unsigned long)p)) continue;
        long e = 0;
        while (mpz_divisible_ui_p(n.get_mpz_t(), (unsigned long)p)) {
            mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), (unsigned long)p);
            ++e;
        }
        exps[p] += e * sgn_exp;
        if (exps[p] == 0) exps.erase(p);
        /* remaining cofactor prime? then done regardless of the bound */
        if (n > 1 && mpz_probab_prime_p(n.get_mpz_t(), 32) &&
            mpz_fits_slong_p(n.get_mpz_t())) {
            long q = mpz_get_si(n.get_mpz_t());
            if (q <= bound) {
                exps[q] += sgn_exp;
                if (exps[q] == 0) exps.erase(q);
                return true;
            }
        }
    }
    return n == 1;
}

}  // namespace

std::optional<FactoredRational> FactoredRational::factor(const mpq_class& q,
                                                         long prime_bound) {
    if (q == 0) fail_domain("zero has no factorization");
    FactoredRational f;
    f.sign = sgn(q) < 0 ? -1 : 1;
    if (!strip(q.get_num(), +1, prime_bound, f.exps)) return std::nullopt;
    if (!strip(q.get_den(), -1, prime_bound, f.exps)) return std::nullopt;
    return f;
}

mpq_class FactoredRational::value() const {
    mpz_class num = 1, den = 1;
    for (const auto& [p, e] : exps) {
        mpz_class pw;
        mpz_ui_pow_ui(pw.get_mpz_t(), (unsigned long)p,
                      (unsigned long)(e > 0 ? e : -e));
        if (e > 0)
            num *= pw;
        else
            den *= pw;
    }
    mpq_class v(num * sign, den);
    v.canonicalize();
    return v;
}

void FactoredRational::mul_pow(const FactoredRational& o, long k) {
    if (k == 0) return;
    if (o.sign < 0 && (k % 2 != 0)) sign = -sign;
    for (const auto& [p, e] : o.exps) {
        exps[p] += e * k;
        if (exps[p] == 0) exps.erase(p);
    }
}

std::vector<long> prime_support(const std::vector<FactoredRational>& v) {
    std::set<long> s;
    for (const auto& f : v)
        for (const auto& [p, e] : f.exps) s.insert(p);
    return std::vector<long>(s.begin(), s.end());
}

}  // namespace smrel::factored
