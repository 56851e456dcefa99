#include "smrel/jseries.hpp"

#include "smrel/util.hpp"

namespace smrel::jseries {

namespace {

using Series = std::vector<mpz_class>;  // dense, index = exponent of q

Series mul_mod(const Series& a, const Series& b, size_t T) {
    Series out(T);
    for (size_t i = 0; i < a.size() && i < T; ++i) {
        if (a[i] == 0) continue;
        size_t lim = std::min(b.size(), T - i);
        for (size_t j = 0; j < lim; ++j) {
            if (b[j] == 0) continue;
            out[i + j] += a[i] * b[j];
        }
    }
    return out;
}

/* Euler's pentagonal number series prod (1 - q^n) mod q^T */
Series euler_product(size_t T) {
    Series p(T);
    p[0] = 1;
    for (long k = 1;; ++k) {
        long g1 = k * (3 * k - 1) / 2;
        long g2 = k * (3 * k + 1) / 2;
        if ((size_t)g1 >= T && (size_t)g2 >= T) break;
        long s = (k % 2 == 0) ? 1 : -1;
        if ((size_t)g1 < T) p[g1] += s;
        if ((size_t)g2 < T) p[g2] += s;
    }
    return p;
}

}  // namespace

mpz_class sigma3(long n) {
    mpz_class s = 0;
    for (long d = 1; d * d <= n; ++d) {
        if (n % d != 0) continue;
        mpz_class dd = d;
        s += dd * dd * dd;
        long e = n / d;
        if (e != d) {
            mpz_class ee = e;
            s += ee * ee * ee;
        }
    }
    return s;
}

std::vector<mpz_class> j_q_coeffs(long kmax) {
    if (kmax < -1) fail_domain("j_q_coeffs needs kmax >= -1");
    size_t T = (size_t)kmax + 2;  // work mod q^T; c_k sits at index k+1

    /* numerator E4^3 with E4 = 1 + 240 sum sigma3(n) q^n */
    Series e4(T);
    {
        /* sieve sigma3 over the window */
        std::vector<mpz_class> s3(T);
        for (size_t d = 1; d < T; ++d) {
            mpz_class d3 = mpz_class(d) * d * d;
            for (size_t m = d; m < T; m += d) s3[m] += d3;
        }
        e4[0] = 1;
        for (size_t n = 1; n < T; ++n) e4[n] = 240 * s3[n];
    }
    Series num = mul_mod(mul_mod(e4, e4, T), e4, T);

    /* denominator without the leading q: prod (1-q^n)^24 */
    Series p1 = euler_product(T);
    Series p2 = mul_mod(p1, p1, T);
    Series p4 = mul_mod(p2, p2, T);
    Series p8 = mul_mod(p4, p4, T);
    Series p16 = mul_mod(p8, p8, T);
    Series den = mul_mod(p16, p8, T);

    /* long division: out * den = num, den[0] = 1 */
    Series out(T);
    for (size_t n = 0; n < T; ++n) {
        mpz_class acc = num[n];
        for (size_t i = 1; i <= n; ++i)
            if (den[i] != 0) acc -= den[i] * out[n - i];
        out[n] = acc;
    }
    return out;  // out[i] = c_{i-1} after shifting by the q in q*prod(...)
}

}  // namespace smrel::jseries
