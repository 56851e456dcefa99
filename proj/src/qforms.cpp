#include "smrel/qforms.hpp"

#include <cstdlib>
#include <numeric>

#include "smrel/util.hpp"

namespace smrel::qforms {

namespace {
/* keeps every intermediate product of the form enumeration inside 64 bits */
constexpr long kMaxAbsDisc = 1L << 40;
}  // namespace

bool is_discriminant(long D) {
    if (D >= 0 || -D > kMaxAbsDisc) return false;
    long r = ((D % 4) + 4) % 4;
    return r == 0 || r == 1;
}

void check_discriminant(long D) {
    if (!is_discriminant(D))
        fail_domain("not a negative discriminant (need D < 0, D = 0 or 1 mod 4, |D| <= 2^40)");
}

long QuadForm::discriminant() const {
    long long d = (long long)b * b - 4LL * a * c;
    return (long)d;
}

bool QuadForm::is_reduced() const {
    long ab = std::labs(b);
    if (!(ab <= a && a <= c)) return false;
    if (b < 0 && (ab == a || a == c)) return false;
    return true;
}

QuadForm QuadForm::make(long a, long b, long c) {
    const long lim = 1L << 30;
    if (std::labs(a) > lim || std::labs(b) > lim || std::labs(c) > lim)
        fail_domain("form coefficients out of range");
    if (a <= 0) fail_domain("form is not positive definite");
    QuadForm f{a, b, c};
    if (f.discriminant() >= 0) fail_domain("form is not positive definite");
    long g = std::gcd(std::gcd(a, b), c);
    if (g != 1) fail_domain("form is not primitive");
    return f;
}

std::vector<long> enumerate_discriminants(long bound) {
    if (bound < 3) fail_domain("discriminant bound must be at least 3");
    if (bound > kMaxAbsDisc) fail_domain("discriminant bound too large");
    std::vector<long> out;
    for (long n = 3; n <= bound; ++n) {
        long r = n % 4;  // n = |D|, D = -n, so need -n = 0 or 1 mod 4
        if (r == 0 || r == 3) out.push_back(-n);
    }
    return out;
}

std::vector<QuadForm> reduced_forms(long D) {
    check_discriminant(D);
    std::vector<QuadForm> out;
    long absD = -D;
    for (long a = 1; 3 * a * a <= absD; ++a) {
        for (long b = -a; b <= a; ++b) {
            if (((b - D) % 2) != 0) continue;  // b must match D's parity
            long long num = (long long)b * b - D;
            if (num % (4LL * a) != 0) continue;
            long c = (long)(num / (4LL * a));
            if (c < a) continue;
            if (b < 0 && (-b == a || a == c)) continue;  // boundary convention
            if (std::gcd(std::gcd(a, b), c) != 1) continue;
            out.push_back(QuadForm{a, b, c});
        }
    }
    return out;  // already lexicographic in (a, b): a ascending, then b
}

long class_number(long D) {
    check_discriminant(D);
    /* Count by the opposite nesting (b outer, then divisors of the norm)
     * so this does not share its shape with reduced_forms(). */
    long absD = -D;
    long parity = absD % 2;  // |b| = |D| mod 2
    long count = 0;
    for (long b = parity; 3 * b * b <= absD; b += 2) {
        long long n4 = (long long)b * b + absD;
        long long n = n4 / 4;
        for (long a = b > 0 ? b : 1; (long long)a * a <= n; ++a) {
            if (n % a != 0) continue;
            long c = (long)(n / a);
            if (std::gcd(std::gcd(a, b), c) != 1) continue;
            if (b == 0 || b == a || a == c)
                count += 1;  // only b >= 0 is reduced
            else
                count += 2;  // both signs of b
        }
    }
    return count;
}

CMPoint cm_point(const QuadForm& f) {
    if (f.a <= 0 || f.discriminant() >= 0)
        fail_domain("cm_point needs a positive definite form");
    if (!f.is_reduced()) fail_domain("cm_point needs a reduced form");
    return CMPoint{f};
}

CBall CMPoint::ball(Prec p) const {
    long absD = -form.discriminant();
    CBall z(p);
    mpfr_set_si(z.re.get(), -form.b, MPFR_RNDN);
    mpfr_div_si(z.re.get(), z.re.get(), 2 * form.a, MPFR_RNDN);
    mpfr_sqrt_ui(z.im.get(), (unsigned long)absD, MPFR_RNDN);
    mpfr_div_si(z.im.get(), z.im.get(), 2 * form.a, MPFR_RNDN);
    /* at most two roundings per component, each relative 2^-p */
    Mag m = hypot_up(z.re.get(), z.im.get());
    m.set_mul_2exp(m, -(long)p);
    m.set_mul(m, Mag::from_d(3.0));
    z.rad.set(m);
    return z;
}

}  // namespace smrel::qforms
