#include "smrel/ball.hpp"

namespace smrel {

Mag hypot_up(mpfr_srcptr x, mpfr_srcptr y) {
    Mag m;
    mpfr_hypot(m.get(), x, y, MPFR_RNDU);
    return m;
}

Mag hypot_down(mpfr_srcptr x, mpfr_srcptr y) {
    Mag m;
    mpfr_hypot(m.get(), x, y, MPFR_RNDD);
    return m;
}

namespace {

/* upper bound for the midpoint rounding error of `ops` MPFR operations whose
 * results are bounded by m: ops * m * 2^-p */
Mag round_term(const Mag& m, long ops, Prec p) {
    Mag t;
    t.set_mul_2exp(m, -static_cast<long>(p));
    t.mul_ui(static_cast<unsigned long>(ops));
    return t;
}

Mag abs_up_mid(const Real& re, const Real& im) { return hypot_up(re.get(), im.get()); }

}  // namespace

CBall CBall::of_si(long x, Prec p) {
    CBall b(p);
    b.re.set_si(x);
    return b;  /* exact */
}

CBall CBall::of_z(const mpz_class& x, Prec p) {
    CBall b(p);
    int inexact = mpfr_set_z(b.re.get(), x.get_mpz_t(), MPFR_RNDN);
    if (inexact != 0) b.rad = round_term(Mag::from_abs(b.re.get()), 1, p);
    return b;
}

CBall CBall::of_q(const mpq_class& x, Prec p) {
    CBall b(p);
    int inexact = mpfr_set_q(b.re.get(), x.get_mpq_t(), MPFR_RNDN);
    if (inexact != 0) b.rad = round_term(Mag::from_abs(b.re.get()), 1, p);
    return b;
}

CBall CBall::of_q_pair(const mpq_class& x, const mpq_class& y, Prec p) {
    CBall b(p);
    int ir = mpfr_set_q(b.re.get(), x.get_mpq_t(), MPFR_RNDN);
    int ii = mpfr_set_q(b.im.get(), y.get_mpq_t(), MPFR_RNDN);
    if (ir != 0 || ii != 0) {
        Mag m = Mag::from_abs(b.re.get());
        m.add_abs(b.im.get());
        b.rad = round_term(m, 1, p);
    }
    return b;
}

CBall CBall::two_pi(Prec p) {
    CBall b(p);
    mpfr_const_pi(b.re.get(), MPFR_RNDN);
    mpfr_mul_2si(b.re.get(), b.re.get(), 1, MPFR_RNDN);
    b.rad = round_term(Mag::from_abs(b.re.get()), 2, p);
    return b;
}

Mag CBall::abs_up() const {
    Mag m = abs_up_mid(re, im);
    m.add(rad);
    return m;
}

Mag CBall::abs_low() const {
    Mag lo = hypot_down(re.get(), im.get());
    mpfr_sub(lo.get(), lo.get(), rad.get(), MPFR_RNDD);
    if (mpfr_sgn(lo.get()) < 0) lo.set_zero();
    return lo;
}

bool CBall::contains_zero() const { return abs_low().is_zero(); }

Mag CBall::dist_to_one_low() const {
    /* RNDZ keeps |d| <= |re - 1|, so the hypot below is a true lower bound */
    mpfr_t d;
    mpfr_init2(d, 64);
    mpfr_sub_ui(d, re.get(), 1, MPFR_RNDZ);
    Mag lo = hypot_down(d, im.get());
    mpfr_clear(d);
    mpfr_sub(lo.get(), lo.get(), rad.get(), MPFR_RNDD);
    if (mpfr_sgn(lo.get()) < 0) lo.set_zero();
    return lo;
}

void CBall::set(const CBall& a) {
    re = a.re;
    im = a.im;
    rad = a.rad;
}

void CBall::round_to(Prec p) {
    Real nre(p), nim(p);
    nre.set(re);
    nim.set(im);
    Mag m = abs_up_mid(nre, nim);
    rad.add(round_term(m, 2, p));
    re = std::move(nre);
    im = std::move(nim);
}

void CBall::set_add(const CBall& a, const CBall& b) {
    Prec p = prec();
    re.add(a.re, b.re);
    im.add(a.im, b.im);
    Mag r = a.rad;
    r.add(b.rad);
    Mag m = Mag::from_abs(re.get());
    m.add_abs(im.get());
    r.add(round_term(m, 1, p));
    rad = std::move(r);
}

void CBall::set_sub(const CBall& a, const CBall& b) {
    Prec p = prec();
    re.sub(a.re, b.re);
    im.sub(a.im, b.im);
    Mag r = a.rad;
    r.add(b.rad);
    Mag m = Mag::from_abs(re.get());
    m.add_abs(im.get());
    r.add(round_term(m, 1, p));
    rad = std::move(r);
}

void CBall::set_neg(const CBall& a) {
    re.neg(a.re);
    im.neg(a.im);
    rad = a.rad;
}

void CBall::set_conj(const CBall& a) {
    re.set(a.re);
    im.neg(a.im);
    rad = a.rad;
}

void CBall::set_mul(const CBall& a, const CBall& b) {
    Prec p = prec();
    Mag ma = abs_up_mid(a.re, a.im);
    Mag mb = abs_up_mid(b.re, b.im);

    Real t1(p), t2(p), nre(p), nim(p);
    t1.mul(a.re, b.re);
    t2.mul(a.im, b.im);
    nre.sub(t1, t2);
    t1.mul(a.re, b.im);
    t2.mul(a.im, b.re);
    nim.add(t1, t2);

    /* |a||db| + |b||da| + da*db + rounding */
    Mag r, t;
    r.set_mul(ma, b.rad);
    t.set_mul(mb, a.rad);
    r.add(t);
    t.set_mul(a.rad, b.rad);
    r.add(t);
    t.set_mul(ma, mb);
    r.add(round_term(t, 8, p));

    re = std::move(nre);
    im = std::move(nim);
    rad = std::move(r);
}

void CBall::set_mul_z(const CBall& a, const mpz_class& k) {
    Prec p = prec();
    Real nre(p), nim(p);
    mpfr_mul_z(nre.get(), a.re.get(), k.get_mpz_t(), MPFR_RNDN);
    mpfr_mul_z(nim.get(), a.im.get(), k.get_mpz_t(), MPFR_RNDN);
    Mag kk;
    mpfr_set_z(kk.get(), k.get_mpz_t(), MPFR_RNDU);
    mpfr_abs(kk.get(), kk.get(), MPFR_RNDU);
    Mag r;
    r.set_mul(a.rad, kk);
    Mag m = Mag::from_abs(nre.get());
    m.add_abs(nim.get());
    r.add(round_term(m, 1, p));
    re = std::move(nre);
    im = std::move(nim);
    rad = std::move(r);
}

void CBall::set_mul_q(const CBall& a, const mpq_class& k) {
    CBall kb = CBall::of_q(k, prec());
    set_mul(a, kb);
}

void CBall::set_mul_si(const CBall& a, long k) {
    set_mul_z(a, mpz_class(k));
}

void CBall::set_mul_2exp(const CBall& a, long e) {
    re.mul_2exp(a.re, e);
    im.mul_2exp(a.im, e);
    rad.set_mul_2exp(a.rad, e);  /* exact scaling */
}

void CBall::set_inv(const CBall& a) {
    Prec p = prec();
    Mag mid_lo = hypot_down(a.re.get(), a.im.get());
    Mag ball_lo = a.abs_low();
    if (ball_lo.is_zero())
        fail_precision("inverse of a ball containing zero");

    Real den(p), nre(p), nim(p), t(p);
    t.mul(a.re, a.re);
    den.mul(a.im, a.im);
    den.add(den, t);
    nre.div(a.re, den);
    nim.div(a.im, den);
    nim.neg(nim);

    Mag r;
    Mag prod;
    prod.set_mul(mid_lo, ball_lo);
    r.set_div_lower(a.rad, prod);
    Mag m = Mag::from_abs(nre.get());
    m.add_abs(nim.get());
    r.add(round_term(m, 8, p));

    re = std::move(nre);
    im = std::move(nim);
    rad = std::move(r);
}

void CBall::set_div(const CBall& a, const CBall& b) {
    CBall binv(prec());
    binv.set_inv(b);
    set_mul(a, binv);
}

void CBall::set_exp(const CBall& a) {
    Prec p = prec();
    /* envelope: e^(sup Re) over the whole input ball */
    Mag env;
    mpfr_set(env.get(), a.re.get(), MPFR_RNDU);  /* may be negative here */
    mpfr_add(env.get(), env.get(), a.rad.get(), MPFR_RNDU);
    mpfr_exp(env.get(), env.get(), MPFR_RNDU);

    Real e(p), s(p), c(p), nre(p), nim(p);
    e.exp(a.re);
    mpfr_sin_cos(s.get(), c.get(), a.im.get(), MPFR_RNDN);
    nre.mul(e, c);
    nim.mul(e, s);

    Mag r;
    r.set_mul(env, a.rad.expm1_up());
    r.add(round_term(env, 8, p));

    re = std::move(nre);
    im = std::move(nim);
    rad = std::move(r);
}

void CBall::set_sqrt_z(const mpz_class& n, Prec p) {
    if (n < 0) fail_domain("set_sqrt_z: negative radicand");
    re.reset_prec(p);
    im.reset_prec(p);
    im.set_zero();
    rad.set_zero();
    mpfr_t t;
    mpfr_init2(t, p + 64);
    int i1 = mpfr_set_z(t, n.get_mpz_t(), MPFR_RNDN);
    int i2 = mpfr_sqrt(re.get(), t, MPFR_RNDN);
    mpfr_clear(t);
    if (i1 != 0 || i2 != 0) rad = round_term(Mag::from_abs(re.get()), 3, p);
}

void CBall::set_pow_si(const CBall& a, long n) {
    Prec p = prec();
    if (n == 0) {
        *this = CBall::of_si(1, p);
        return;
    }
    bool invert = n < 0;
    unsigned long e = invert ? static_cast<unsigned long>(-(n + 1)) + 1UL
                             : static_cast<unsigned long>(n);
    CBall base(p);
    base.set(a);
    CBall acc = CBall::of_si(1, p);
    while (e > 0) {
        if (e & 1UL) acc.mul(base);
        e >>= 1;
        if (e > 0) {
            CBall sq(p);
            sq.set_mul(base, base);
            base = std::move(sq);
        }
    }
    if (invert) {
        CBall inv(p);
        inv.set_inv(acc);
        *this = std::move(inv);
    } else {
        *this = std::move(acc);
    }
}

std::string CBall::str() const {
    std::string s = "(" + re.str(20) + ", " + im.str(20) + ") +/- ";
    char* m = nullptr;
    mpfr_asprintf(&m, "%.3Re", rad.get());
    s += m;
    mpfr_free_str(m);
    return s;
}

}  // namespace smrel
