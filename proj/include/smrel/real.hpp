#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <string>

#include "smrel/util.hpp"

namespace smrel {

using Prec = mpfr_prec_t;

/* Nonnegative magnitude, 32-bit mantissa, every operation rounded toward
 * +infinity.  Used for ball radii and tail bounds: whatever is stored is a
 * proven upper bound.  MPFR's huge exponent range means radii like 2^-10^6
 * never underflow to zero the way doubles would. */
class Mag {
  public:
    static constexpr Prec kPrec = 32;

    Mag() { mpfr_init2(m_, kPrec); mpfr_set_zero(m_, 1); }
    Mag(const Mag& o) { mpfr_init2(m_, kPrec); mpfr_set(m_, o.m_, MPFR_RNDU); }
    Mag(Mag&& o) noexcept { mpfr_init2(m_, kPrec); mpfr_swap(m_, o.m_); }
    Mag& operator=(const Mag& o) {
        if (this != &o) mpfr_set(m_, o.m_, MPFR_RNDU);
        return *this;
    }
    Mag& operator=(Mag&& o) noexcept {
        if (this != &o) mpfr_swap(m_, o.m_);
        return *this;
    }
    ~Mag() { mpfr_clear(m_); }

    static Mag from_d(double d);
    static Mag two_exp(long e);        /* exactly 2^e */
    static Mag from_abs(mpfr_srcptr x);/* |x| rounded up */

    void set_zero() { mpfr_set_zero(m_, 1); }
    void set_inf() { mpfr_set_inf(m_, 1); }
    bool is_zero() const { return mpfr_zero_p(m_); }
    bool is_inf() const { return mpfr_inf_p(m_); }

    void set(const Mag& a) { mpfr_set(m_, a.m_, MPFR_RNDU); }
    void set_add(const Mag& a, const Mag& b) { mpfr_add(m_, a.m_, b.m_, MPFR_RNDU); }
    void set_mul(const Mag& a, const Mag& b) { mpfr_mul(m_, a.m_, b.m_, MPFR_RNDU); }
    void set_max(const Mag& a, const Mag& b) { mpfr_max(m_, a.m_, b.m_, MPFR_RNDU); }
    void set_mul_2exp(const Mag& a, long e) { mpfr_mul_2si(m_, a.m_, e, MPFR_RNDU); }

    void add(const Mag& a) { mpfr_add(m_, m_, a.m_, MPFR_RNDU); }
    void add_abs(mpfr_srcptr x);       /* += |x| rounded up */
    void mul(const Mag& a) { mpfr_mul(m_, m_, a.m_, MPFR_RNDU); }
    void mul_2exp(long e) { mpfr_mul_2si(m_, m_, e, MPFR_RNDU); }
    void mul_ui(unsigned long k) { mpfr_mul_ui(m_, m_, k, MPFR_RNDU); }

    /* this = a / b, where b is interpreted as a LOWER bound of the true
     * denominator (so the quotient stays an upper bound).  b must be > 0. */
    void set_div_lower(const Mag& a, const Mag& b_lower);

    /* this = a^k, rounded up. */
    void set_pow_ui(const Mag& a, unsigned long k);

    /* this = a / (1 - r), valid and finite only when r < 1; used for
     * geometric tail sums.  Fails (domain) if r >= 1. */
    void set_geometric(const Mag& a, const Mag& r);

    /* e^this bounded above (returns a fresh Mag). */
    Mag exp_up() const;
    /* e^this - 1 bounded above. */
    Mag expm1_up() const;

    int cmp(const Mag& o) const { return mpfr_cmp(m_, o.m_); }
    bool le_two_exp(long e) const;
    double to_double() const { return mpfr_get_d(m_, MPFR_RNDU); }

    mpfr_srcptr get() const { return m_; }
    mpfr_ptr get() { return m_; }

  private:
    mpfr_t m_;
};

/* Value-semantic wrapper for mpfr_t.  Arithmetic mirrors the C interface
 * (mutating "set" style) and the raw handle is exposed for the places where
 * a module wants a specific MPFR call; precision travels with the value. */
class Real {
  public:
    explicit Real(Prec p = 64) { mpfr_init2(v_, p < MPFR_PREC_MIN ? MPFR_PREC_MIN : p); }
    Real(const Real& o) {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    Real(Real&& o) noexcept {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_swap(v_, o.v_);
    }
    Real& operator=(const Real& o);
    Real& operator=(Real&& o) noexcept {
        if (this != &o) mpfr_swap(v_, o.v_);
        return *this;
    }
    ~Real() { mpfr_clear(v_); }

    static Real of_si(long x, Prec p);
    static Real of_z(const mpz_class& x, Prec p);
    static Real of_q(const mpq_class& x, Prec p, mpfr_rnd_t r = MPFR_RNDN);
    static Real parse(const std::string& s, Prec p, mpfr_rnd_t r = MPFR_RNDN);
    static Real pi(Prec p);

    Prec prec() const { return mpfr_get_prec(v_); }
    /* changes precision, destroying the value */
    void reset_prec(Prec p) { mpfr_set_prec(v_, p); }

    mpfr_srcptr get() const { return v_; }
    mpfr_ptr get() { return v_; }

    void set(const Real& a, mpfr_rnd_t r = MPFR_RNDN) { mpfr_set(v_, a.v_, r); }
    void set_si(long a) { mpfr_set_si(v_, a, MPFR_RNDN); }
    void set_z(const mpz_class& a, mpfr_rnd_t r = MPFR_RNDN) { mpfr_set_z(v_, a.get_mpz_t(), r); }
    void set_zero() { mpfr_set_zero(v_, 1); }

    void add(const Real& a, const Real& b, mpfr_rnd_t r = MPFR_RNDN) { mpfr_add(v_, a.v_, b.v_, r); }
    void sub(const Real& a, const Real& b, mpfr_rnd_t r = MPFR_RNDN) { mpfr_sub(v_, a.v_, b.v_, r); }
    void mul(const Real& a, const Real& b, mpfr_rnd_t r = MPFR_RNDN) { mpfr_mul(v_, a.v_, b.v_, r); }
    void div(const Real& a, const Real& b, mpfr_rnd_t r = MPFR_RNDN) { mpfr_div(v_, a.v_, b.v_, r); }
    void neg(const Real& a) { mpfr_neg(v_, a.v_, MPFR_RNDN); }
    void abs(const Real& a) { mpfr_abs(v_, a.v_, MPFR_RNDN); }
    void sqrt(const Real& a, mpfr_rnd_t r = MPFR_RNDN) { mpfr_sqrt(v_, a.v_, r); }
    void log(const Real& a, mpfr_rnd_t r = MPFR_RNDN) { mpfr_log(v_, a.v_, r); }
    void exp(const Real& a, mpfr_rnd_t r = MPFR_RNDN) { mpfr_exp(v_, a.v_, r); }
    void atan2(const Real& y, const Real& x, mpfr_rnd_t r = MPFR_RNDN) { mpfr_atan2(v_, y.v_, x.v_, r); }
    void mul_2exp(const Real& a, long e) { mpfr_mul_2si(v_, a.v_, e, MPFR_RNDN); }
    void mul_si(const Real& a, long k, mpfr_rnd_t r = MPFR_RNDN) { mpfr_mul_si(v_, a.v_, k, r); }
    void div_si(const Real& a, long k, mpfr_rnd_t r = MPFR_RNDN) { mpfr_div_si(v_, a.v_, k, r); }

    int sign() const { return mpfr_sgn(v_); }
    bool is_nan() const { return mpfr_nan_p(v_); }
    static int cmp(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_); }
    int cmp_si(long x) const { return mpfr_cmp_si(v_, x); }
    double to_double(mpfr_rnd_t r = MPFR_RNDN) const { return mpfr_get_d(v_, r); }

    /* nearest integer (ties to even, which is irrelevant for our uses) */
    mpz_class round_to_z() const;

    /* decimal string with enough digits to round-trip at this precision */
    std::string str() const;
    std::string str(size_t digits) const;

  private:
    mpfr_t v_;
};

}  // namespace smrel
