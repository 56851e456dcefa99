#include "smrel/algnum.hpp"

#include <cmath>

#include "smrel/roots.hpp"
#include "smrel/util.hpp"

namespace smrel::algnum {

namespace {

bool overlap(const CBall& a, const CBall& b) {
    CBall d(std::max(a.prec(), b.prec()));
    d.set_sub(a, b);
    return d.contains_zero();
}

double log2_norm2(const IntPoly& f) {
    /* log2 of the 2-norm of the coefficient vector, overestimated */
    double m = 0.0;
    for (long i = 0; i <= f.degree(); ++i) {
        const mpz_class& c = f[(size_t)i];
        if (c == 0) continue;
        long e;
        double x = mpz_get_d_2exp(&e, c.get_mpz_t());
        m = std::max(m, std::log2(std::fabs(x)) + (double)e);
    }
    return m + 0.5 * std::log2((double)f.degree() + 1.0) + 1e-6;
}

}  // namespace

AlgebraicNumber AlgebraicNumber::make(const IntPoly& poly, const CBall& box) {
    if (poly.degree() < 1) fail_domain("defining polynomial must be nonconstant");
    AlgebraicNumber a;
    a.poly_ = poly.primitive_part();
    if (!a.poly_.is_squarefree())
        fail_domain("defining polynomial must be squarefree");
    if (a.poly_.degree() == 1) {
        mpq_class r(-a.poly_[0], a.poly_[1]);
        r.canonicalize();
        /* the box still has to point at this root */
        CBall v = CBall::of_q(r, box.prec());
        if (!overlap(v, box)) fail_domain("box does not contain a root");
        a.box_ = v;
        a.level_ = box.prec();
        return a;
    }
    for (Prec p = 64; p <= 1024; p *= 2) {
        std::vector<CBall> certs = roots::certified_roots(a.poly_, p);
        long hit = -1, hits = 0;
        for (long i = 0; i < (long)certs.size(); ++i)
            if (overlap(certs[(size_t)i], box)) {
                hit = i;
                ++hits;
            }
        if (hits == 0) fail_domain("box does not contain a root");
        if (hits == 1) {
            a.box_ = certs[(size_t)hit];
            a.level_ = p;
            return a;
        }
    }
    fail_indeterminate("box does not isolate a single root");
}

AlgebraicNumber AlgebraicNumber::from_rational(const mpq_class& r) {
    mpz_class num = r.get_num(), den = r.get_den();
    AlgebraicNumber a;
    a.poly_ = IntPoly::monomial(den, 1).add(IntPoly::constant(-num));
    a.box_ = CBall::of_q(r, 64);
    a.level_ = 64;
    return a;
}

AlgebraicNumber AlgebraicNumber::from_integer(const mpz_class& n) {
    return from_rational(mpq_class(n));
}

bool AlgebraicNumber::is_zero() const {
    return poly_.degree() == 1 && poly_[0] == 0;
}

mpq_class AlgebraicNumber::rational_value() const {
    if (poly_.degree() != 1) fail_domain("not a rational number");
    mpq_class r(-poly_[0], poly_[1]);
    r.canonicalize();
    return r;
}

CBall AlgebraicNumber::enclosure(Prec p) const {
    if (poly_.degree() < 1) fail_internal("empty algebraic number");
    if (poly_.degree() == 1) return CBall::of_q(rational_value(), p);
    if (level_ >= p) return box_;
    std::vector<CBall> certs = roots::certified_roots(poly_, p);
    long hit = -1, hits = 0;
    for (long i = 0; i < (long)certs.size(); ++i)
        if (overlap(certs[(size_t)i], box_)) {
            hit = i;
            ++hits;
        }
    if (hits == 1) {
        box_ = certs[(size_t)hit];
        level_ = p;
        return box_;
    }
    /* a neighbouring root's ball grazes the current box: bump precision
     * until the true root's ball alone survives */
    for (Prec q = p * 2; q <= p * 16; q *= 2) {
        std::vector<CBall> finer = roots::certified_roots(poly_, q);
        long h2 = -1, n2 = 0;
        for (long i = 0; i < (long)finer.size(); ++i)
            if (overlap(finer[(size_t)i], box_)) {
                h2 = i;
                ++n2;
            }
        if (n2 == 1) {
            box_ = finer[(size_t)h2];
            level_ = q;
            return box_;
        }
    }
    fail_precision("could not re-isolate the tracked root");
}

bool AlgebraicNumber::same_value(const AlgebraicNumber& o) const {
    if (poly_ != o.poly_) return false;
    if (poly_.degree() == 1) return true;  /* same degree-1 poly, same root */

    /* Mahler-type separation: distinct roots of a squarefree integer f of
     * degree d differ by more than sqrt(3) d^-(d+2)/2 ||f||_2^-(d-1). */
    double d = (double)poly_.degree();
    double log2sep =
        0.79 - 0.5 * (d + 2.0) * std::log2(d) - (d - 1.0) * log2_norm2(poly_);
    long need = (long)(-log2sep) + 8;
    if (need < 64) need = 64;

    /* enclosure radii are relative; absorb the value's magnitude */
    double scale = std::log2(box_.abs_up().to_double() + 2.0);
    Prec p = (Prec)(need + (long)scale + 8);
    CBall a = enclosure(p), b = o.enclosure(p);
    return overlap(a, b);
}

}  // namespace smrel::algnum
