#pragma once

#include "smrel/real.hpp"

namespace smrel {

/* Complex ball: midpoint (re, im) at working precision, plus a Mag radius
 * bounding |true value - midpoint| in the complex modulus.  Every operation
 * propagates the radius rigorously (including the midpoint rounding error,
 * which is at most |result| * 2^-prec per MPFR operation at RNDN). */
struct CBall {
    Real re, im;
    Mag rad;

    explicit CBall(Prec p = 64) : re(p), im(p) {
        re.set_zero();
        im.set_zero();
    }

    Prec prec() const { return re.prec(); }

    static CBall of_si(long x, Prec p);
    static CBall of_z(const mpz_class& x, Prec p);
    static CBall of_q(const mpq_class& x, Prec p);
    /* exact rational midpoint components rounded at precision p */
    static CBall of_q_pair(const mpq_class& x, const mpq_class& y, Prec p);
    /* 2*pi as a real ball at precision p */
    static CBall two_pi(Prec p);

    bool is_exact() const { return rad.is_zero(); }

    /* |z| upper / lower bounds */
    Mag abs_up() const;
    Mag abs_low() const;  /* max(0, |mid| - rad), still a Mag (a plain bound) */
    bool contains_zero() const;

    /* distance from the ball to the point 1, from below (0 if 1 inside) */
    Mag dist_to_one_low() const;

    void set(const CBall& a);
    /* re-round midpoint at a (usually lower) precision, radius adjusted */
    void round_to(Prec p);

    void set_add(const CBall& a, const CBall& b);
    void set_sub(const CBall& a, const CBall& b);
    void set_neg(const CBall& a);
    void set_conj(const CBall& a);
    void set_mul(const CBall& a, const CBall& b);
    void set_mul_z(const CBall& a, const mpz_class& k);
    void set_mul_q(const CBall& a, const mpq_class& k);
    void set_mul_si(const CBall& a, long k);
    void set_mul_2exp(const CBall& a, long e);
    void set_inv(const CBall& a);
    void set_div(const CBall& a, const CBall& b);
    void set_exp(const CBall& a);
    void set_sqrt_z(const mpz_class& n, Prec p);  /* real sqrt of n >= 0, as a ball */
    void set_pow_si(const CBall& a, long n);

    void add(const CBall& a) { CBall t(prec()); t.set_add(*this, a); *this = t; }
    void mul(const CBall& a) { CBall t(prec()); t.set_mul(*this, a); *this = t; }

    /* inflate the radius by e (used when absorbing exterior error terms) */
    void add_error(const Mag& e) { rad.add(e); }

    std::string str() const;
};

/* hypot helpers with directed rounding (32-bit results) */
Mag hypot_up(mpfr_srcptr x, mpfr_srcptr y);
Mag hypot_down(mpfr_srcptr x, mpfr_srcptr y);

}  // namespace smrel
