#include "smrel/classpoly.hpp"

#include <cmath>

#include "smrel/jfun.hpp"
#include "smrel/util.hpp"

namespace smrel::classpoly {

namespace {

/* coefficient sizes are governed by sum over forms of pi sqrt|D| / a */
Prec initial_precision(long D, const std::vector<qforms::QuadForm>& forms) {
    double s = 0.0;
    for (const auto& f : forms) s += 1.0 / (double)f.a;
    double bits = 4.5324 * std::sqrt((double)-D) * s;  /* pi / ln 2 */
    return (Prec)(bits) + 64 + 8 * (Prec)forms.size();
}

std::vector<CBall> roots_at(long D, const std::vector<qforms::QuadForm>& forms,
                            Prec wp) {
    std::vector<CBall> out;
    out.reserve(forms.size());
    for (const auto& f : forms) {
        CBall tau = qforms::cm_point(f).ball(wp);
        out.push_back(jfun::j_eval_eta(tau, wp));
    }
    return out;
}

}  // namespace

IntPoly hilbert_class_poly(long D, ClassPolyDiag* diag) {
    std::vector<qforms::QuadForm> forms = qforms::reduced_forms(D);
    if (forms.empty()) fail_internal("no reduced forms for a valid discriminant");

    Prec wp = initial_precision(D, forms);
    for (int retry = 0; retry < 7; ++retry, wp *= 2) {
        std::vector<CBall> js = roots_at(D, forms, wp);

        /* expand prod (x - j_i) over balls */
        std::vector<CBall> c;
        c.emplace_back(wp);
        c[0] = CBall::of_si(1, wp);
        for (const CBall& r : js) {
            std::vector<CBall> n(c.size() + 1, CBall(wp));
            for (size_t k = 0; k < c.size(); ++k) {
                CBall t(wp);
                t.set_mul(r, c[k]);
                n[k].set_sub(n[k], t);     /* n[k] -= r * c[k] */
                n[k + 1].add(c[k]);        /* n[k+1] += c[k] */
            }
            c = std::move(n);
        }

        /* every coefficient must pin down an integer */
        std::vector<mpz_class> ic(c.size());
        bool ok = true;
        double worst = 0.0;
        for (size_t k = 0; k < c.size(); ++k) {
            mpz_class n = c[k].re.round_to_z();
            Real d(wp);
            mpfr_sub_z(d.get(), c[k].re.get(), n.get_mpz_t(), MPFR_RNDA);
            Mag resid = Mag::from_abs(d.get());
            resid.add(c[k].rad);
            resid.add_abs(c[k].im.get());
            double rd = resid.to_double();
            worst = std::max(worst, rd);
            if (!(rd < 0.25)) {
                ok = false;
                break;
            }
            ic[k] = n;
        }
        if (ok) {
            if (diag) {
                diag->precision_used = wp;
                diag->retries = retry;
                diag->max_residual = worst;
            }
            IntPoly h{std::move(ic)};
            if (h.degree() != (long)forms.size())
                fail_internal("class polynomial degree mismatch");
            return h;
        }
    }
    fail_precision("class polynomial coefficients did not settle");
}

std::vector<CBall> singular_moduli_balls(long D, Prec p) {
    std::vector<qforms::QuadForm> forms = qforms::reduced_forms(D);
    /* |j| can reach e^{pi sqrt|D|}; make the absolute target reachable */
    Prec wp = p + 64 + (Prec)(4.54 * std::sqrt((double)-D));
    Mag target = Mag::two_exp(-(long)p);
    for (int retry = 0; retry < 6; ++retry, wp *= 2) {
        std::vector<CBall> js = roots_at(D, forms, wp);
        bool ok = true;
        for (const CBall& j : js)
            if (j.rad.cmp(target) > 0) ok = false;
        if (ok) return js;
    }
    fail_precision("singular moduli did not reach the requested accuracy");
}

std::vector<algnum::AlgebraicNumber> singular_moduli(long D) {
    ClassPolyDiag diag;
    IntPoly h = hilbert_class_poly(D, &diag);
    std::vector<algnum::AlgebraicNumber> out;
    if (h.degree() == 1) {
        /* rational: identification through the polynomial alone */
        out.push_back(algnum::AlgebraicNumber::from_integer(-h[0]));
        return out;
    }
    /* the precision that separated the product's coefficients also keeps
     * the j balls disjoint, so each ball isolates its root */
    std::vector<CBall> js =
        singular_moduli_balls(D, std::min<Prec>(diag.precision_used, 512));
    for (const CBall& j : js)
        out.push_back(algnum::AlgebraicNumber::make(h, j));
    return out;
}

std::vector<RationalModulus> rational_singular_moduli(long bound) {
    std::vector<RationalModulus> out;
    for (long D : qforms::enumerate_discriminants(bound)) {
        if (qforms::class_number(D) != 1) continue;
        IntPoly h = hilbert_class_poly(D);
        if (h.degree() != 1) fail_internal("class number disagrees with the polynomial");
        out.push_back(RationalModulus{D, -h[0]});
    }
    return out;
}

}  // namespace smrel::classpoly
