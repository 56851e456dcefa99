#include "smrel/heights.hpp"

#include <cmath>

#include "smrel/intpoly.hpp"
#include "smrel/relations.hpp"
#include "smrel/roots.hpp"
#include "smrel/util.hpp"

namespace smrel::heights {

namespace {

/* |z| over the ball, as directed full-precision reals (not 32-bit mags) */
void mod_bounds(const CBall& z, Real& lo, Real& up) {
    Prec p = lo.prec();
    Real t1(p), t2(p);
    /* upper: sqrt(re^2 + im^2) rounded up, plus radius */
    mpfr_sqr(t1.get(), z.re.get(), MPFR_RNDU);
    mpfr_sqr(t2.get(), z.im.get(), MPFR_RNDU);
    mpfr_add(t1.get(), t1.get(), t2.get(), MPFR_RNDU);
    mpfr_sqrt(up.get(), t1.get(), MPFR_RNDU);
    mpfr_add(up.get(), up.get(), z.rad.get(), MPFR_RNDU);
    /* lower: sqrt rounded down, minus radius, floored at 0 */
    mpfr_sqr(t1.get(), z.re.get(), MPFR_RNDD);
    mpfr_sqr(t2.get(), z.im.get(), MPFR_RNDD);
    mpfr_add(t1.get(), t1.get(), t2.get(), MPFR_RNDD);
    mpfr_sqrt(lo.get(), t1.get(), MPFR_RNDD);
    mpfr_sub(lo.get(), lo.get(), z.rad.get(), MPFR_RNDD);
    if (lo.sign() < 0) lo.set_zero();
}

/* midpoint/halfwidth of [lo, up], carried at the inputs' working precision
 * so the representation slop shrinks as callers escalate precision instead
 * of being pinned to the requested accuracy */
HeightValue from_interval(Real& lo, Real& up) {
    if (lo.sign() < 0) lo.set_zero();  /* heights are nonnegative */
    Prec wp = lo.prec();
    HeightValue h;
    h.value.reset_prec(wp);
    h.value.add(lo, up);
    h.value.mul_2exp(h.value, -1);
    Real w(wp);
    w.sub(up, lo, MPFR_RNDU);
    h.error = Mag::from_abs(w.get());
    h.error.set_mul_2exp(h.error, -1);
    Mag slop = Mag::from_abs(h.value.get());
    slop.set_mul_2exp(slop, -(long)wp + 2);
    h.error.add(slop);
    return h;
}

}  // namespace

HeightValue weil_height(const algnum::AlgebraicNumber& a, Prec p) {
    if (a.is_zero()) fail_domain("height of zero is undefined");

    if (a.is_rational()) {
        mpq_class r = a.rational_value();
        mpz_class m = r.get_num() < 0 ? mpz_class(-r.get_num()) : r.get_num();
        if (r.get_den() > m) m = r.get_den();
        HeightValue h;
        if (m == 1) return h;  /* +-1: exactly zero */
        /* the value is ~log m, so widen by the bit length of that magnitude
         * to keep the absolute error under 2^-p however large m is */
        long bits = (long)mpz_sizeinbase(m.get_mpz_t(), 2);
        long lb = 0;
        while ((1L << lb) < bits) ++lb;
        Prec wp = p + 16 + (Prec)lb;
        Real lo(wp), up(wp);
        mpfr_set_z(up.get(), m.get_mpz_t(), MPFR_RNDU);
        mpfr_log(up.get(), up.get(), MPFR_RNDU);
        mpfr_set_z(lo.get(), m.get_mpz_t(), MPFR_RNDD);
        mpfr_log(lo.get(), lo.get(), MPFR_RNDD);
        return from_interval(lo, up);
    }

    if (relations::root_of_unity_order(a)) return HeightValue{};  /* exact 0 */

    const IntPoly& f = a.min_poly();
    long d = f.degree();
    for (int attempt = 0; attempt < 5; ++attempt) {
        Prec wp = (p + 48) << attempt;
        std::vector<CBall> rts = roots::certified_roots(f, wp);
        Real lo(wp), up(wp), t(wp), rl(wp), ru(wp);
        mpfr_set_z(up.get(), f.lc().get_mpz_t(), MPFR_RNDU);
        mpfr_log(up.get(), up.get(), MPFR_RNDU);
        mpfr_set_z(lo.get(), f.lc().get_mpz_t(), MPFR_RNDD);
        mpfr_log(lo.get(), lo.get(), MPFR_RNDD);
        for (const CBall& z : rts) {
            mod_bounds(z, rl, ru);
            if (mpfr_cmp_ui(ru.get(), 1) > 0) {
                mpfr_log(t.get(), ru.get(), MPFR_RNDU);
                mpfr_add(up.get(), up.get(), t.get(), MPFR_RNDU);
            }
            if (mpfr_cmp_ui(rl.get(), 1) > 0) {
                mpfr_log(t.get(), rl.get(), MPFR_RNDD);
                mpfr_add(lo.get(), lo.get(), t.get(), MPFR_RNDD);
            }
        }
        mpfr_div_si(up.get(), up.get(), d, MPFR_RNDU);
        mpfr_div_si(lo.get(), lo.get(), d, MPFR_RNDD);
        HeightValue h = from_interval(lo, up);
        if (h.error.le_two_exp(-(long)p)) return h;
    }
    fail_precision("height interval did not reach the requested accuracy");
}

HeightValue bound_lehmer(long d, Prec p) {
    if (d < 2) fail_domain("the height lower bound needs degree >= 2");
    if (d > 1000000) fail_domain("degree out of range");
    Prec wp = p + 16;
    Real lo(wp), up(wp);
    /* 1 / (37 d^2 log d), both directions */
    mpfr_set_si(up.get(), d, MPFR_RNDD);
    mpfr_log(up.get(), up.get(), MPFR_RNDD);
    mpfr_mul_si(up.get(), up.get(), 37 * d * d, MPFR_RNDD);
    mpfr_ui_div(up.get(), 1, up.get(), MPFR_RNDU);
    mpfr_set_si(lo.get(), d, MPFR_RNDU);
    mpfr_log(lo.get(), lo.get(), MPFR_RNDU);
    mpfr_mul_si(lo.get(), lo.get(), 37 * d * d, MPFR_RNDU);
    mpfr_ui_div(lo.get(), 1, lo.get(), MPFR_RNDD);
    return from_interval(lo, up);
}

SearchRadius exponent_search_radius(long n, long d,
                                    const std::vector<double>& hts,
                                    double surrogate) {
    if (n < 2) fail_domain("search radius needs n >= 2");
    if (d < 2) fail_domain("search radius needs d >= 2");
    if (hts.empty() || (long)hts.size() != n)
        fail_domain("need one height per member");
    if (!(surrogate > 0)) fail_domain("surrogate constant must be positive");
    double mn = hts[0];
    double logprod = 0.0;
    for (double h : hts) {
        if (!(h > 0)) fail_domain("heights must be positive");
        mn = std::min(mn, h);
        logprod += std::log(h);
    }
    double lv = (double)n * std::log((double)d) + std::log(std::log((double)d)) +
                logprod - std::log(mn) + std::log(surrogate);
    if (lv > 700.0) fail_budget("search radius overflows any sensible budget");
    SearchRadius r;
    r.real_value = std::exp(lv);
    mpfr_t t;
    mpfr_init2(t, 64);
    mpfr_set_d(t, r.real_value, MPFR_RNDU);
    mpfr_ceil(t, t);
    mpfr_get_z(r.radius.get_mpz_t(), t, MPFR_RNDN);
    mpfr_clear(t);
    if (r.radius < 1) r.radius = 1;
    return r;
}

}  // namespace smrel::heights
