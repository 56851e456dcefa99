#include "smrel/roots.hpp"

#include <algorithm>
#include <cmath>

#include "smrel/util.hpp"

namespace smrel::roots {

namespace {

/* plain complex midpoint arithmetic for the iteration itself; the
 * certification afterwards is what makes the result rigorous */
struct Cx {
    Real re, im;
    explicit Cx(Prec p) : re(p), im(p) {
        re.set_zero();
        im.set_zero();
    }
};

void cx_sub(Cx& out, const Cx& a, const Cx& b) {
    out.re.sub(a.re, b.re);
    out.im.sub(a.im, b.im);
}

void cx_mul(Cx& out, const Cx& a, const Cx& b, Real& t1, Real& t2) {
    t1.mul(a.re, b.re);
    t2.mul(a.im, b.im);
    Real nre(out.re.prec());
    nre.sub(t1, t2);
    t1.mul(a.re, b.im);
    t2.mul(a.im, b.re);
    out.im.add(t1, t2);
    out.re = std::move(nre);
}

void cx_div(Cx& out, const Cx& a, const Cx& b, Real& t1, Real& t2, Real& den) {
    t1.mul(b.re, b.re);
    t2.mul(b.im, b.im);
    den.add(t1, t2);
    t1.mul(a.re, b.re);
    t2.mul(a.im, b.im);
    Real nre(out.re.prec());
    nre.add(t1, t2);
    nre.div(nre, den);
    t1.mul(a.im, b.re);
    t2.mul(a.re, b.im);
    out.im.sub(t1, t2);
    out.im.div(out.im, den);
    out.re = std::move(nre);
}

/* f(z) with integer coefficients, Horner */
void eval_at(const IntPoly& f, const Cx& z, Cx& out, Real& t1, Real& t2) {
    long d = f.degree();
    out.re.set_z(f[d]);
    out.im.set_zero();
    for (long k = d - 1; k >= 0; --k) {
        cx_mul(out, out, z, t1, t2);
        mpfr_add_z(out.re.get(), out.re.get(), f[k].get_mpz_t(), MPFR_RNDN);
    }
}

double log2_abs(const mpz_class& x) {
    if (x == 0) return -1e9;
    long e;
    double m = mpz_get_d_2exp(&e, x.get_mpz_t());
    return std::log2(std::fabs(m)) + (double)e;
}

}  // namespace

std::vector<CBall> certified_roots(const IntPoly& f, Prec p) {
    long d = f.degree();
    if (d < 0) fail_domain("zero polynomial has no well-defined roots");
    if (d == 0) return {};
    if (d == 1) {
        mpq_class r(-f[0], f[1]);
        r.canonicalize();
        std::vector<CBall> out;
        out.push_back(CBall::of_q(r, p));
        return out;
    }

    IntPoly fp = f.derivative();

    /* Fujiwara-style radius: 2 * max |c_k / c_d|^{1/(d-k)} */
    double lr = 0.0;
    double lcd = log2_abs(f.lc());
    for (long k = 0; k < d; ++k) {
        if (f[k] == 0) continue;
        double t = (log2_abs(f[k]) - lcd) / (double)(d - k);
        lr = std::max(lr, t);
    }
    lr += 1.0;
    if (lr > 4000.0) fail_precision("root radius bound out of range");

    Prec wp = p + 64;
    std::vector<Cx> z;
    z.reserve(d);
    {
        const double tau = 6.283185307179586;
        for (long i = 0; i < d; ++i) {
            Cx c(wp);
            double ang = tau * ((double)i + 0.3183) / (double)d;
            double rad = lr * (0.85 + 0.15 * (double)(i % 5) / 4.0);
            mpfr_set_d(c.re.get(), std::cos(ang), MPFR_RNDN);
            mpfr_set_d(c.im.get(), std::sin(ang), MPFR_RNDN);
            mpfr_mul_2si(c.re.get(), c.re.get(), (long)rad, MPFR_RNDN);
            mpfr_mul_2si(c.im.get(), c.im.get(), (long)rad, MPFR_RNDN);
            z.push_back(std::move(c));
        }
    }

    for (int round = 0; round < 9; ++round) {
        /* Aberth-Ehrlich sweeps at precision wp */
        Real t1(wp), t2(wp), den(wp);
        Cx fv(wp), fpv(wp), ratio(wp), s(wp), diff(wp), inv(wp), w(wp), one(wp);
        one.re.set_si(1);
        long sweeps = 120 + 40 * d;
        for (long it = 0; it < sweeps; ++it) {
            bool settled = true;
            for (long i = 0; i < d; ++i) {
                eval_at(f, z[i], fv, t1, t2);
                if (mpfr_zero_p(fv.re.get()) && mpfr_zero_p(fv.im.get()))
                    continue;  /* exactly on a root */
                eval_at(fp, z[i], fpv, t1, t2);
                if (mpfr_zero_p(fpv.re.get()) && mpfr_zero_p(fpv.im.get())) {
                    /* stationary point: nudge deterministically */
                    mpfr_nextabove(z[i].re.get());
                    settled = false;
                    continue;
                }
                cx_div(ratio, fv, fpv, t1, t2, den);
                s.re.set_zero();
                s.im.set_zero();
                for (long j = 0; j < d; ++j) {
                    if (j == i) continue;
                    cx_sub(diff, z[i], z[j]);
                    cx_div(inv, one, diff, t1, t2, den);
                    s.re.add(s.re, inv.re);
                    s.im.add(s.im, inv.im);
                }
                cx_mul(w, ratio, s, t1, t2);
                w.re.sub(one.re, w.re);
                w.im.neg(w.im);
                cx_div(w, ratio, w, t1, t2, den);
                if (w.re.is_nan() || w.im.is_nan()) {
                    mpfr_set_d(z[i].re.get(), 0.7548 * (double)(i + 1), MPFR_RNDN);
                    mpfr_set_d(z[i].im.get(), 1.1327 * (double)(i + 1), MPFR_RNDN);
                    settled = false;
                    continue;
                }
                cx_sub(z[i], z[i], w);
                /* converged when the step is far below the value's scale */
                Mag step = hypot_up(w.re.get(), w.im.get());
                Mag scale = hypot_up(z[i].re.get(), z[i].im.get());
                scale.add(Mag::from_d(1.0));
                scale.set_mul_2exp(scale, -(long)wp + 8);
                if (step.cmp(scale) > 0) settled = false;
            }
            if (settled) break;
        }

        /* certification */
        std::vector<CBall> cert;
        cert.reserve(d);
        bool ok = true;
        for (long i = 0; i < d && ok; ++i) {
            CBall zb(wp);
            zb.re.set(z[i].re);
            zb.im.set(z[i].im);
            CBall fb = f.eval_ball(zb);
            CBall fpb = fp.eval_ball(zb);
            if (fpb.contains_zero()) {
                ok = false;
                break;
            }
            Mag num = fb.abs_up();
            Mag denm = fpb.abs_low();
            Mag r;
            r.set_div_lower(num, denm);
            r.mul_ui((unsigned long)d);
            /* certify to half the advertised 2^-p * (1 + |z|) so the final
             * center rounding below still fits inside the bound */
            Mag tgt = hypot_up(z[i].re.get(), z[i].im.get());
            tgt.add(Mag::from_d(1.0));
            tgt.set_mul_2exp(tgt, -(long)p - 1);
            if (r.cmp(tgt) > 0) {
                ok = false;
                break;
            }
            zb.rad = r;
            cert.push_back(zb);
        }
        if (ok) {
            /* pairwise disjoint (difference ball excludes zero) */
            for (long i = 0; i < d && ok; ++i)
                for (long j = i + 1; j < d && ok; ++j) {
                    CBall dz(wp);
                    dz.set_sub(cert[i], cert[j]);
                    if (dz.contains_zero()) ok = false;
                }
        }
        if (ok) {
            std::sort(cert.begin(), cert.end(), [](const CBall& a, const CBall& b) {
                int c = Real::cmp(a.re, b.re);
                if (c != 0) return c < 0;
                return Real::cmp(a.im, b.im) < 0;
            });
            /* two guard bits keep the rounding allowance at |z| * 2^-p / 2,
             * which together with the certified half-target meets the bound */
            for (CBall& c : cert) c.round_to(p + 2);
            return cert;
        }

        /* carry the approximations to double the precision */
        wp *= 2;
        for (Cx& c : z) {
            Cx n(wp);
            n.re.set(c.re);
            n.im.set(c.im);
            c = std::move(n);
        }
    }
    fail_precision("could not certify disjoint root enclosures (is the polynomial squarefree?)");
}

}  // namespace smrel::roots
