#include "smrel/real.hpp"

#include <cstdio>
#include <memory>

namespace smrel {

std::string content_hash_hex(const std::string& payload) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(fnv1a(payload.data(), payload.size())));
    return std::string(buf);
}

Mag Mag::from_d(double d) {
    Mag m;
    if (d < 0) fail_internal("Mag::from_d: negative magnitude");
    mpfr_set_d(m.m_, d, MPFR_RNDU);
    return m;
}

Mag Mag::two_exp(long e) {
    Mag m;
    mpfr_set_si(m.m_, 1, MPFR_RNDU);
    mpfr_mul_2si(m.m_, m.m_, e, MPFR_RNDU);
    return m;
}

Mag Mag::from_abs(mpfr_srcptr x) {
    Mag m;
    mpfr_abs(m.m_, x, MPFR_RNDU);
    return m;
}

void Mag::add_abs(mpfr_srcptr x) {
    Mag t = from_abs(x);
    add(t);
}

void Mag::set_div_lower(const Mag& a, const Mag& b_lower) {
    if (!(mpfr_sgn(b_lower.m_) > 0))
        fail_internal("Mag::set_div_lower: nonpositive denominator bound");
    mpfr_div(m_, a.m_, b_lower.m_, MPFR_RNDU);
}

void Mag::set_pow_ui(const Mag& a, unsigned long k) {
    mpfr_pow_ui(m_, a.m_, k, MPFR_RNDU);
}

void Mag::set_geometric(const Mag& a, const Mag& r) {
    if (mpfr_cmp_ui(r.m_, 1) >= 0)
        fail(ErrorKind::precision_exhausted, "geometric tail ratio >= 1");
    mpfr_t den;
    mpfr_init2(den, kPrec);
    mpfr_ui_sub(den, 1, r.m_, MPFR_RNDD);  /* 1-r rounded DOWN keeps quotient an upper bound */
    mpfr_div(m_, a.m_, den, MPFR_RNDU);
    mpfr_clear(den);
}

Mag Mag::exp_up() const {
    Mag out;
    mpfr_exp(out.m_, m_, MPFR_RNDU);
    return out;
}

Mag Mag::expm1_up() const {
    Mag out;
    mpfr_expm1(out.m_, m_, MPFR_RNDU);
    return out;
}

bool Mag::le_two_exp(long e) const {
    Mag t = two_exp(e);
    return mpfr_cmp(m_, t.m_) <= 0;
}

Real& Real::operator=(const Real& o) {
    if (this != &o) {
        mpfr_set_prec(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
}

Real Real::of_si(long x, Prec p) {
    Real r(p);
    mpfr_set_si(r.v_, x, MPFR_RNDN);
    return r;
}

Real Real::of_z(const mpz_class& x, Prec p) {
    Real r(p);
    mpfr_set_z(r.v_, x.get_mpz_t(), MPFR_RNDN);
    return r;
}

Real Real::of_q(const mpq_class& x, Prec p, mpfr_rnd_t rnd) {
    Real r(p);
    mpfr_set_q(r.v_, x.get_mpq_t(), rnd);
    return r;
}

Real Real::parse(const std::string& s, Prec p, mpfr_rnd_t rnd) {
    Real r(p);
    if (mpfr_set_str(r.v_, s.c_str(), 10, rnd) != 0)
        fail_parse("unparseable numeric literal: " + s);
    return r;
}

Real Real::pi(Prec p) {
    Real r(p);
    mpfr_const_pi(r.v_, MPFR_RNDN);
    return r;
}

mpz_class Real::round_to_z() const {
    mpfr_t t;
    mpfr_init2(t, mpfr_get_prec(v_));
    mpfr_rint(t, v_, MPFR_RNDN);
    mpz_class z;
    mpfr_get_z(z.get_mpz_t(), t, MPFR_RNDN);
    mpfr_clear(t);
    return z;
}

std::string Real::str() const {
    /* prec * log10(2) + a couple of guard digits round-trips */
    size_t digits = static_cast<size_t>(prec() * 0.3010299957) + 3;
    return str(digits);
}

std::string Real::str(size_t digits) const {
    if (mpfr_nan_p(v_)) return "nan";
    if (mpfr_zero_p(v_)) return "0";
    char* s = nullptr;
    if (mpfr_asprintf(&s, "%.*Re", static_cast<int>(digits), v_) < 0)
        fail_internal("mpfr_asprintf failed");
    std::string out(s);
    mpfr_free_str(s);
    return out;
}

}  // namespace smrel
