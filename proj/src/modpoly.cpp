#include "smrel/modpoly.hpp"

#include <cmath>
#include <complex>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <sstream>

#include "smrel/classpoly.hpp"
#include "smrel/jfun.hpp"
#include "smrel/jseries.hpp"
#include "smrel/qforms.hpp"
#include "smrel/relations.hpp"
#include "smrel/util.hpp"

namespace smrel::modpoly {

namespace {

struct Rep {
    long a, b, d;  /* upper-triangular (a, b; 0, d), ad = n, 0 <= b < d */
};

std::vector<Rep> level_reps(long n) {
    std::vector<Rep> reps;
    for (long d : divisors_of(n)) {
        long a = n / d;
        for (long b = 0; b < d; ++b)
            if (std::gcd(std::gcd(a, b), d) == 1) reps.push_back({a, b, d});
    }
    if ((long)reps.size() != psi_index(n))
        fail_internal("sublattice representative count mismatch");
    return reps;
}

/* finite window of a series in Q = q^(1/n) with coefficients in Z[zeta_n];
 * a[i] carries the coefficient of Q^(lo + i) */
struct QSeries {
    long lo = 0;
    std::vector<IntPoly> a;
};

/* product truncated at exponent hi_cap */
QSeries mul_trunc(const QSeries& x, const QSeries& y, const CycloRing& ring,
                  long hi_cap) {
    QSeries out;
    out.lo = x.lo + y.lo;
    long len = hi_cap - out.lo + 1;
    if (len <= 0 || x.a.empty() || y.a.empty()) {
        out.a.clear();
        return out;
    }
    out.a.assign((size_t)len, IntPoly());
    for (size_t i = 0; i < x.a.size() && (long)i < len; ++i) {
        if (x.a[i].is_zero()) continue;
        size_t jmax = std::min(y.a.size(), (size_t)(len - (long)i));
        for (size_t j = 0; j < jmax; ++j) {
            if (y.a[j].is_zero()) continue;
            out.a[i + j] = out.a[i + j].add(ring.mul(x.a[i], y.a[j]));
        }
    }
    return out;
}

void sub_inplace(QSeries& x, const QSeries& y) {
    if (y.a.empty()) return;
    long lo = x.a.empty() ? y.lo : std::min(x.lo, y.lo);
    long hi_x = x.lo + (long)x.a.size() - 1;
    long hi_y = y.lo + (long)y.a.size() - 1;
    long hi = x.a.empty() ? hi_y : std::max(hi_x, hi_y);
    std::vector<IntPoly> merged((size_t)(hi - lo + 1));
    for (size_t i = 0; i < x.a.size(); ++i) merged[x.lo - lo + i] = x.a[i];
    for (size_t i = 0; i < y.a.size(); ++i) {
        size_t k = y.lo - lo + i;
        merged[k] = merged[k].sub(y.a[i]);
    }
    x.lo = lo;
    x.a = std::move(merged);
}

void trim_hi(QSeries& x, long hi_cap) {
    long len = hi_cap - x.lo + 1;
    if (len < 0) len = 0;
    if ((long)x.a.size() > len) x.a.resize((size_t)len);
}

/* powers of the j q-expansion; jp[m][i] is the coefficient of q^(i - m).
 * Row m spans [-m, gq + (top - m)]: the slack (top - m) shrinks by one per
 * multiplication, absorbing the q^-1 pole so jp[m] is exact on all of
 * [-m, gq] even at the top of the window. */
std::vector<std::vector<mpz_class>> j_power_table(
    const std::vector<mpz_class>& jc, long top, long gq) {
    std::vector<std::vector<mpz_class>> jp((size_t)top + 1);
    jp[0] = {1};  /* exponent window [0, 0] suffices for the constant */
    if (top >= 1) {
        jp[1].assign((size_t)(top + gq + 1), 0);
        for (long i = 0; i <= top + gq && i < (long)jc.size(); ++i)
            jp[1][(size_t)i] = jc[(size_t)i];  /* c_(i-1) at q^(i-1) */
    }
    for (long m = 2; m <= top; ++m) {
        std::vector<mpz_class> out((size_t)(top + gq + 1), 0);
        const auto& prev = jp[(size_t)m - 1];
        const auto& one = jp[1];
        for (size_t i = 0; i < prev.size(); ++i) {
            if (prev[i] == 0) continue;
            size_t jmax = std::min(one.size(), out.size() - i);
            for (size_t j = 0; j < jmax; ++j)
                if (one[j] != 0) out[i + j] += prev[i] * one[j];
        }
        jp[(size_t)m] = std::move(out);
    }
    return jp;
}

/* rewrite an integer q-series known to be a polynomial in j as that
 * polynomial; every window coefficient must cancel, which is the
 * construction's internal consistency check */
std::vector<mpz_class> peel_to_j_poly(
    const QSeries& c, long n, long psi,
    const std::vector<std::vector<mpz_class>>& jp, long gq) {
    /* collapse Q-exponents to q-exponents on [-psi, gq] */
    std::vector<mpz_class> f((size_t)(psi + gq + 1), 0);
    for (size_t i = 0; i < c.a.size(); ++i) {
        if (c.a[i].is_zero()) continue;
        if (c.a[i].degree() > 0)
            fail_internal("series coefficient not a rational integer");
        long e = c.lo + (long)i;
        if (((e % n) + n) % n != 0)
            fail_internal("fractional exponent survived the product");
        long t = e / n;  /* exact */
        if (t < -psi || t > gq) fail_internal("exponent outside the window");
        f[(size_t)(t + psi)] = c.a[i][0];
    }
    std::vector<mpz_class> g((size_t)psi + 1, 0);
    for (long m = psi; m >= 0; --m) {
        g[(size_t)m] = f[(size_t)(psi - m)];
        if (g[(size_t)m] == 0) continue;
        const auto& pw = jp[(size_t)m];  /* exponents -m .. gq */
        for (size_t i = 0; i < pw.size(); ++i) {
            long t = (long)i - m;
            if (t > gq) break;
            f[(size_t)(t + psi)] -= g[(size_t)m] * pw[i];
        }
    }
    for (const auto& v : f)
        if (v != 0) fail_internal("series is not a polynomial in j");
    return g;
}

void check_symmetry(const ModularPolynomial& f) {
    long dx = f.deg_x(), dy = f.deg_y();
    if (dx != dy) fail_internal("modular polynomial is not square");
    for (long i = 0; i <= dx; ++i)
        for (long j = 0; j < i; ++j)
            if (f.coeff[(size_t)i][(size_t)j] != f.coeff[(size_t)j][(size_t)i])
                fail_internal("modular polynomial is not symmetric");
}

bool round_coeff(const CBall& c, mpz_class& out) {
    Real r(c.re.prec());
    r.set(c.re);
    mpz_class z = r.round_to_z();
    Real d(c.re.prec());
    d.set(c.re);
    mpfr_sub_z(d.get(), d.get(), z.get_mpz_t(), MPFR_RNDA);
    Mag res = Mag::from_abs(d.get());
    res.add_abs(c.im.get());
    res.add(c.rad);
    if (res.cmp(Mag::from_d(0.25)) >= 0) return false;
    out = std::move(z);
    return true;
}

}  // namespace

mpz_class ModularPolynomial::length() const {
    mpz_class s = 0;
    for (const auto& row : coeff)
        for (const auto& v : row) s += abs(v);
    return s;
}

ModularPolynomial build_by_q_expansion(long n) {
    if (n < 1) fail_domain("level must be positive");
    if (n == 1) {
        ModularPolynomial f;
        f.level = 1;
        f.coeff = {{0, -1}, {1, 0}};  /* X - Y */
        return f;
    }
    long psi = psi_index(n);
    if (psi > 48) fail_budget("level too large for exact construction");
    std::vector<Rep> reps = level_reps(n);
    long p_tot = 0;
    for (const Rep& r : reps) p_tot += r.a * r.a;
    if (p_tot != n * psi)
        fail_internal("total valuation disagrees with the index");
    long g_cap = 2 * n;            /* two extra integral q-orders of check */
    long gq = g_cap / n;
    CycloRing ring((unsigned long)n);
    std::vector<mpz_class> jc = jseries::j_q_coeffs((size_t)(p_tot + g_cap));

    /* prod holds the X-coefficients of the partial product of (X - S_r) */
    std::vector<QSeries> prod(1);
    prod[0].lo = 0;
    prod[0].a = {IntPoly::constant(1)};
    long s_done = 0;
    for (const Rep& r : reps) {
        long aa = r.a * r.a;
        s_done += aa;
        long hi_cap = g_cap + p_tot - s_done;

        QSeries s;
        s.lo = -aa;
        long hi_s = g_cap + p_tot - aa;
        s.a.assign((size_t)(hi_s + aa + 1), IntPoly());
        for (long k = -1; aa * k <= hi_s; ++k) {
            const mpz_class& ck = jc[(size_t)(k + 1)];
            if (ck == 0) continue;
            long e = ((n / r.d) % n) * (r.b % n) % n;
            e = e * (((k % n) + n) % n) % n;
            s.a[(size_t)(aa * k + aa)] = ring.zeta_pow(e).mul_z(ck);
        }

        std::vector<QSeries> next(prod.size() + 1);
        for (size_t k = 0; k < prod.size(); ++k) {
            next[k + 1] = prod[k];
            trim_hi(next[k + 1], hi_cap);
            sub_inplace(next[k], mul_trunc(prod[k], s, ring, hi_cap));
        }
        prod = std::move(next);
    }

    auto jp = j_power_table(jc, psi, gq);
    ModularPolynomial f;
    f.level = n;
    f.coeff.assign((size_t)psi + 1, std::vector<mpz_class>((size_t)psi + 1, 0));
    for (long i = 0; i <= psi; ++i) {
        std::vector<mpz_class> g = peel_to_j_poly(prod[(size_t)i], n, psi, jp, gq);
        for (long j = 0; j <= psi; ++j)
            f.coeff[(size_t)i][(size_t)j] = std::move(g[(size_t)j]);
    }
    check_symmetry(f);
    return f;
}

ModularPolynomial build_by_cm_interpolation(long n) {
    if (n < 2) fail_domain("interpolation route needs level at least 2");
    long psi = psi_index(n);
    std::vector<classpoly::RationalModulus> nodes =
        classpoly::rational_singular_moduli(200);
    if ((long)nodes.size() < psi + 1)
        fail_budget("not enough rational interpolation nodes for this level");
    nodes.resize((size_t)psi + 1);
    std::vector<Rep> reps = level_reps(n);

    /* exact integer values of the one-variable sections at each node */
    std::vector<std::vector<mpz_class>> sect((size_t)psi + 1);
    for (size_t t = 0; t < nodes.size(); ++t) {
        qforms::QuadForm principal = qforms::reduced_forms(nodes[t].D).at(0);
        bool done = false;
        for (Prec p = 320; p <= 8192 && !done; p *= 2) {
            CBall tau = qforms::cm_point(principal).ball(p);
            std::vector<CBall> c;
            c.emplace_back(p);
            c[0].set(CBall::of_si(1, p));
            for (const Rep& r : reps) {
                CBall z(p);
                z.set_mul_q(tau, mpq_class(r.a, r.d));
                CBall sh = CBall::of_q(mpq_class(r.b, r.d), p);
                z.add(sh);
                CBall jv = jfun::j_eval(z, p);
                std::vector<CBall> next;
                next.reserve(c.size() + 1);
                for (size_t k = 0; k <= c.size(); ++k) next.emplace_back(p);
                for (size_t k = 0; k < c.size(); ++k) {
                    next[k + 1].add(c[k]);
                    CBall m(p);
                    m.set_mul(c[k], jv);
                    CBall d(p);
                    d.set_sub(next[k], m);
                    next[k].set(d);
                }
                c = std::move(next);
            }
            std::vector<mpz_class> exact(c.size());
            done = true;
            for (size_t k = 0; k < c.size() && done; ++k)
                done = round_coeff(c[k], exact[k]);
            if (done) sect[t] = std::move(exact);
        }
        if (!done)
            fail_precision("section coefficients did not settle to integers");
    }

    /* Lagrange interpolation of each X-coefficient through the nodes */
    ModularPolynomial f;
    f.level = n;
    f.coeff.assign((size_t)psi + 1, std::vector<mpz_class>((size_t)psi + 1, 0));
    for (long i = 0; i <= psi; ++i) {
        std::vector<mpq_class> acc((size_t)psi + 2, mpq_class(0));
        for (size_t t = 0; t < nodes.size(); ++t) {
            /* basis polynomial prod_{s != t} (Y - y_s) / (y_t - y_s) */
            std::vector<mpq_class> basis = {mpq_class(1)};
            mpq_class den(1);
            for (size_t s = 0; s < nodes.size(); ++s) {
                if (s == t) continue;
                std::vector<mpq_class> nx(basis.size() + 1, mpq_class(0));
                for (size_t u = 0; u < basis.size(); ++u) {
                    nx[u + 1] += basis[u];
                    nx[u] -= basis[u] * nodes[s].j;
                }
                basis = std::move(nx);
                den *= mpq_class(nodes[t].j - nodes[s].j);
            }
            mpq_class w = mpq_class(sect[t][(size_t)i]) / den;
            for (size_t u = 0; u < basis.size(); ++u) acc[u] += basis[u] * w;
        }
        for (long j = 0; j <= psi + 1; ++j) {
            mpq_class v = acc[(size_t)j];
            v.canonicalize();
            if (v.get_den() != 1)
                fail_internal("interpolated coefficient is not an integer");
            if (j > psi) {
                if (v != 0) fail_internal("interpolation degree overflow");
                continue;
            }
            f.coeff[(size_t)i][(size_t)j] = v.get_num();
        }
    }
    check_symmetry(f);
    return f;
}

const ModularPolynomial& modular_polynomial(long n, long n_max) {
    if (n < 1) fail_domain("level must be positive");
    if (n > n_max) fail_domain("level exceeds the configured maximum");
    static std::mutex mu;
    static std::map<long, std::unique_ptr<const ModularPolynomial>> cache;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(n);
        if (it != cache.end()) return *it->second;
    }
    auto built = std::make_unique<const ModularPolynomial>(build_by_q_expansion(n));
    std::lock_guard<std::mutex> lock(mu);
    return *cache.emplace(n, std::move(built)).first->second;
}

std::string to_text(const ModularPolynomial& f) {
    std::ostringstream os;
    os << "level " << f.level << "\n";
    for (long i = 0; i <= f.deg_x(); ++i)
        for (long j = 0; j <= f.deg_y(); ++j)
            if (f.coeff[(size_t)i][(size_t)j] != 0)
                os << i << " " << j << " "
                   << f.coeff[(size_t)i][(size_t)j].get_str() << "\n";
    return os.str();
}

CBall eval_ball(const ModularPolynomial& f, const CBall& x, const CBall& y,
                Prec p) {
    long dx = f.deg_x(), dy = f.deg_y();
    std::vector<CBall> yp;
    yp.reserve((size_t)dy + 1);
    yp.push_back(CBall::of_si(1, p));
    for (long j = 1; j <= dy; ++j) {
        CBall t(p);
        t.set_mul(yp.back(), y);
        yp.push_back(std::move(t));
    }
    CBall acc = CBall::of_si(0, p);
    for (long i = dx; i >= 0; --i) {
        CBall row = CBall::of_si(0, p);
        for (long j = 0; j <= dy; ++j) {
            const mpz_class& c = f.coeff[(size_t)i][(size_t)j];
            if (c == 0) continue;
            CBall t(p);
            t.set_mul_z(yp[(size_t)j], c);
            row.add(t);
        }
        CBall nx(p);
        nx.set_mul(acc, x);
        nx.add(row);
        acc.set(nx);
    }
    return acc;
}

mpq_class eval_exact(const ModularPolynomial& f, const mpq_class& x,
                     const mpq_class& y) {
    long dx = f.deg_x(), dy = f.deg_y();
    std::vector<mpq_class> yp((size_t)dy + 1);
    yp[0] = 1;
    for (long j = 1; j <= dy; ++j) yp[(size_t)j] = yp[(size_t)j - 1] * y;
    mpq_class acc(0);
    for (long i = dx; i >= 0; --i) {
        mpq_class row(0);
        for (long j = 0; j <= dy; ++j)
            if (f.coeff[(size_t)i][(size_t)j] != 0)
                row += mpq_class(f.coeff[(size_t)i][(size_t)j]) * yp[(size_t)j];
        acc = acc * x + row;
    }
    return acc;
}

IntPoly eval_cyclotomic(const ModularPolynomial& f, unsigned long ring,
                        unsigned long e1, unsigned long e2) {
    if (ring == 0) fail_domain("cyclotomic ring order must be positive");
    std::vector<mpz_class> raw(ring, 0);
    for (long i = 0; i <= f.deg_x(); ++i)
        for (long j = 0; j <= f.deg_y(); ++j) {
            const mpz_class& c = f.coeff[(size_t)i][(size_t)j];
            if (c == 0) continue;
            unsigned long e =
                (e1 % ring * (unsigned long)i + e2 % ring * (unsigned long)j) %
                ring;
            raw[e] += c;
        }
    CycloRing r(ring);
    return r.reduce(IntPoly(std::move(raw)));
}

std::optional<long> is_isogenous(const AlgebraicNumber& x,
                                 const AlgebraicNumber& y, long n_max,
                                 Prec max_precision) {
    if (n_max < 1) fail_domain("level budget must be positive");
    if (x.same_value(y)) return 1;  /* level 1 is the diagonal X - Y */

    auto u1 = relations::root_of_unity_decomposition(x);
    std::optional<std::pair<unsigned long, unsigned long>> u2;
    if (u1) u2 = relations::root_of_unity_decomposition(y);

    for (long n = 2; n <= n_max; ++n) {
        const ModularPolynomial& f = modular_polynomial(n, n_max);
        if (x.is_rational() && y.is_rational()) {
            if (eval_exact(f, x.rational_value(), y.rational_value()) == 0)
                return n;
            continue;
        }
        if (u1 && u2) {
            unsigned long g = std::gcd(u1->first, u2->first);
            unsigned long l = u1->first / g * u2->first;
            IntPoly v = eval_cyclotomic(f, l, u1->second * (l / u1->first),
                                        u2->second * (l / u2->first));
            if (v.is_zero()) return n;
            continue;
        }
        /* numeric pre-screen, then Liouville-gap certification */
        bool nonzero = false;
        for (Prec p = 128; p <= 1024 && !nonzero; p *= 2) {
            CBall v = eval_ball(f, x.enclosure(p), y.enclosure(p), p);
            if (!v.abs_low().is_zero()) nonzero = true;
        }
        if (nonzero) continue;
        double hx = heights::weil_height(x, 64).upper();
        double hy = heights::weil_height(y, 64).upper();
        long terms = 0;
        double log_max_c = 0;
        for (long i = 0; i <= f.deg_x(); ++i)
            for (long j = 0; j <= f.deg_y(); ++j) {
                const mpz_class& c = f.coeff[(size_t)i][(size_t)j];
                if (c == 0) continue;
                ++terms;
                double lc = (double)mpz_sizeinbase(c.get_mpz_t(), 2) * 0.6932;
                log_max_c = std::max(log_max_c, lc);
            }
        double h = std::log((double)std::max(terms, 1L)) + log_max_c +
                   (double)f.deg_x() * (hx + hy);
        double dd = (double)x.degree() * (double)y.degree();
        double gap_e = dd * h + 1.0;
        long p_need = (long)(gap_e * 1.4427) + 96;
        if (p_need > (long)max_precision * 8)
            fail_indeterminate("isogeny certification gap out of reach");
        CBall v = eval_ball(f, x.enclosure((Prec)p_need),
                            y.enclosure((Prec)p_need), (Prec)p_need);
        if (!v.abs_low().is_zero()) continue;
        Real th((Prec)64);
        mpfr_set_d(th.get(), -gap_e, MPFR_RNDD);
        mpfr_exp(th.get(), th.get(), MPFR_RNDD);
        if (mpfr_cmp(v.abs_up().get(), th.get()) < 0) return n;
        fail_indeterminate("could not separate the modular value from zero");
    }
    return std::nullopt;
}

FaltingsWindow faltings_window(const heights::HeightValue& h_j, double c) {
    if (!(c > 0)) fail_domain("window constant must be positive");
    double h = h_j.value.to_double();
    double err = h_j.error.to_double();
    if (!std::isfinite(h) || !std::isfinite(err))
        fail_domain("height must be finite");
    double r = c * std::log(std::max(2.0, h)) + err / 12.0;
    return {h / 12.0 - r, h / 12.0 + r};
}

double isogeny_height_drift(long n) {
    if (n < 1) fail_domain("cyclic degree must be positive");
    return 0.5 * std::log((double)n);
}

PellarinBound pellarin_degree_bound(long d, double h_f_upper,
                                    double practical_scale) {
    if (d < 2) fail_domain("degree must be at least 2");
    if (!std::isfinite(h_f_upper)) fail_domain("height bound must be finite");
    if (!(practical_scale > 0)) fail_domain("surrogate scale must be positive");

    mpz_class d4;
    mpz_ui_pow_ui(d4.get_mpz_t(), (unsigned long)d, 4);
    Real t((Prec)320), u((Prec)320);
    /* max(1, log d)^2 * max(1, h)^2, rounded up */
    mpfr_set_si(t.get(), d, MPFR_RNDU);
    mpfr_log(t.get(), t.get(), MPFR_RNDU);
    if (mpfr_cmp_ui(t.get(), 1) < 0) mpfr_set_ui(t.get(), 1, MPFR_RNDU);
    mpfr_sqr(t.get(), t.get(), MPFR_RNDU);
    mpfr_set_d(u.get(), std::max(1.0, h_f_upper), MPFR_RNDU);
    mpfr_sqr(u.get(), u.get(), MPFR_RNDU);
    mpfr_mul(t.get(), t.get(), u.get(), MPFR_RNDU);

    PellarinBound out;
    mpz_class big;
    mpz_ui_pow_ui(big.get_mpz_t(), 10, 78);
    big *= d4;
    Real v((Prec)640);
    mpfr_mul_z(v.get(), t.get(), big.get_mpz_t(), MPFR_RNDU);
    mpfr_get_z(out.stated.get_mpz_t(), v.get(), MPFR_RNDU);
    if (out.stated < 1) out.stated = 1;

    mpfr_set_d(u.get(), practical_scale, MPFR_RNDU);
    mpfr_mul(u.get(), u.get(), t.get(), MPFR_RNDU);
    mpfr_mul_z(u.get(), u.get(), d4.get_mpz_t(), MPFR_RNDU);
    mpfr_get_z(out.practical.get_mpz_t(), u.get(), MPFR_RNDU);
    if (out.practical < 1) out.practical = 1;
    return out;
}

PairSearchOutcome modular_pair_search(long m_max, long n_max) {
    if (m_max < 1 || m_max > 64) fail_domain("order budget out of range");
    if (n_max < 1 || n_max > 10) fail_domain("level budget out of range");

    struct Root {
        unsigned long m, k;
    };
    std::vector<Root> roots;
    for (long m = 1; m <= m_max; ++m) {
        if (m == 1) {
            roots.push_back({1, 0});
            continue;
        }
        for (unsigned long k = 1; k < (unsigned long)m; ++k)
            if (std::gcd(k, (unsigned long)m) == 1)
                roots.push_back({(unsigned long)m, k});
    }

    PairSearchOutcome out;
    const double pi2 = 6.283185307179586;
    for (size_t i = 0; i < roots.size(); ++i) {
        for (size_t j = i + 1; j < roots.size(); ++j) {
            ++out.pairs_examined;
            std::complex<double> z1 =
                std::polar(1.0, pi2 * (double)roots[i].k / (double)roots[i].m);
            std::complex<double> z2 =
                std::polar(1.0, pi2 * (double)roots[j].k / (double)roots[j].m);
            for (long n = 2; n <= n_max; ++n) {
                const ModularPolynomial& f = modular_polynomial(n, n_max);
                /* screen in doubles; the threshold absorbs every rounding
                 * error on the unit circle, so only certain nonzeros skip */
                long dx = f.deg_x(), dy = f.deg_y();
                std::complex<double> acc(0);
                double len = 0;
                for (long a = dx; a >= 0; --a) {
                    std::complex<double> row(0);
                    std::complex<double> ypow(1, 0);
                    for (long b = 0; b <= dy; ++b) {
                        const mpz_class& c = f.coeff[(size_t)a][(size_t)b];
                        if (c != 0) {
                            double cd = c.get_d();
                            row += cd * ypow;
                            len += std::fabs(cd);
                        }
                        ypow *= z2;
                    }
                    acc = acc * z1 + row;
                }
                if (std::abs(acc) > len * 1024.0 * 2.220446049250313e-16)
                    continue;
                unsigned long g = std::gcd(roots[i].m, roots[j].m);
                unsigned long l = roots[i].m / g * roots[j].m;
                IntPoly v = eval_cyclotomic(f, l, roots[i].k * (l / roots[i].m),
                                            roots[j].k * (l / roots[j].m));
                if (v.is_zero())
                    out.pairs.push_back({roots[i].m, roots[i].k, roots[j].m,
                                         roots[j].k, n, l});
            }
        }
    }
    std::sort(out.pairs.begin(), out.pairs.end());
    out.caveat =
        "levels above the configured maximum were not examined; the level "
        "cutoff sufficient for a given order budget has no effective constant "
        "here";
    return out;
}

}  // namespace smrel::modpoly
