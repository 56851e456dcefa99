#include "smrel/jfun.hpp"

#include <cmath>
#include <mutex>
#include <vector>

#include "smrel/jseries.hpp"
#include "smrel/util.hpp"

namespace smrel::jfun {

namespace {

/* lower bound on Im over a ball, as a double (rounded down a touch) */
double im_low(const CBall& z) {
    double im = mpfr_get_d(z.im.get(), MPFR_RNDD);
    double r = z.rad.to_double();
    return im - r - 1e-12 * (std::fabs(im) + r);
}

/* q = e^{2 pi i z} as a ball at precision p */
CBall nome(const CBall& z, Prec p, bool half) {
    CBall iz(p);
    iz.re.neg(z.im);
    iz.im.set(z.re);
    iz.rad = z.rad;
    CBall pi2 = CBall::two_pi(p);
    if (half) pi2.set_mul_2exp(pi2, -1);
    CBall t(p);
    t.set_mul(pi2, iz);
    CBall q(p);
    q.set_exp(t);
    return q;
}

/* upper bound for 3/(N+1), then e^ that */
Mag exp3_over(long n1) {
    Mag num = Mag::from_d(3.0);
    Mag den = Mag::from_d((double)n1);  /* exact in double */
    Mag q;
    q.set_div_lower(num, den);
    return q.exp_up();
}

/* terms needed so that x^N <= 2^-(p+40), from an upper bound x < 1 */
long term_count(const Mag& x, Prec p) {
    double xd = x.to_double();
    if (!(xd > 0)) return 8;
    double n = (double)(p + 40) * 0.6932 / -std::log(xd);
    long N = (long)n + 2;
    if (N < 8) N = 8;
    if (N > 1000000) fail_precision("q-series would need too many terms");
    return N;
}

struct SeriesGate {
    CBall q;
    Mag x;  /* upper bound on |q| over the whole ball */
};

SeriesGate open_gate(const CBall& z, Prec p, bool half, double min_im,
                     double max_x, const char* who) {
    double il = im_low(z);
    if (mpfr_sgn(z.im.get()) <= 0 && il <= 0)
        fail_domain("point is not in the upper half plane");
    if (il < min_im) fail_domain(who);
    SeriesGate g{nome(z, p, half), Mag()};
    g.x = g.q.abs_up();
    if (g.x.to_double() > max_x)
        fail_precision("input ball too wide for series evaluation");
    return g;
}

/* ------------------------------------------------------------------ */
/* constant for the truncated-expansion tail: an upper bound M with
 * |c_k| <= M * e^{2 pi k}, from the maximum modulus of j on |q| = e^{-2pi}.
 * |E4| <= A(r) termwise and |q prod(1-q^n)^24| >= B(r) there, so
 * M = A(r)^3 / B(r).  Everything below is directed rounding at 96 bits. */
Mag series_tail_constant() {
    const Prec p = 96;
    const long N = 64;
    Real t(p);

    /* r bracket: e^{-2pi} */
    Real r_up(p), r_lo(p);
    mpfr_const_pi(t.get(), MPFR_RNDD);
    mpfr_mul_2si(t.get(), t.get(), 1, MPFR_RNDD);
    mpfr_neg(t.get(), t.get(), MPFR_RNDU);
    mpfr_exp(r_up.get(), t.get(), MPFR_RNDU);
    mpfr_const_pi(t.get(), MPFR_RNDU);
    mpfr_mul_2si(t.get(), t.get(), 1, MPFR_RNDU);
    mpfr_neg(t.get(), t.get(), MPFR_RNDD);
    mpfr_exp(r_lo.get(), t.get(), MPFR_RNDD);

    /* A = 1 + 240*1.21 * (sum_{n<=N} n^3 r^n + tail), rounded up.
     * (sum of cubes of divisors of n is at most zeta(3) n^3 <= 1.21 n^3) */
    Real a(p), rn(p);
    a.set_si(0);
    rn.set_si(1);
    for (long n = 1; n <= N; ++n) {
        mpfr_mul(rn.get(), rn.get(), r_up.get(), MPFR_RNDU);
        mpfr_mul_si(t.get(), rn.get(), n * n * n, MPFR_RNDU);
        mpfr_add(a.get(), a.get(), t.get(), MPFR_RNDU);
    }
    {
        Mag tail;
        Mag xn;
        xn.set_pow_ui(Mag::from_abs(r_up.get()), (unsigned long)N + 1);
        xn.mul_ui((unsigned long)((N + 1) * (N + 1) * (N + 1)));
        Mag ratio;
        ratio.set_mul(Mag::from_abs(r_up.get()), exp3_over(N + 1));
        tail.set_geometric(xn, ratio);
        mpfr_add(a.get(), a.get(), tail.get(), MPFR_RNDU);
    }
    mpfr_mul_d(a.get(), a.get(), 290.4, MPFR_RNDU); /* 240 * 1.21 */
    mpfr_add_ui(a.get(), a.get(), 1, MPFR_RNDU);

    /* B = r * prod_{n<=N} (1 - r^n)^24 * e^{-s}, rounded down */
    Real b(p);
    b.set_si(1);
    rn.set_si(1);
    for (long n = 1; n <= N; ++n) {
        mpfr_mul(rn.get(), rn.get(), r_up.get(), MPFR_RNDU);
        mpfr_ui_sub(t.get(), 1, rn.get(), MPFR_RNDD);
        mpfr_mul(b.get(), b.get(), t.get(), MPFR_RNDD);
    }
    mpfr_pow_ui(b.get(), b.get(), 24, MPFR_RNDD);
    mpfr_mul(b.get(), b.get(), r_lo.get(), MPFR_RNDD);
    {
        /* s = 24 r^{N+1} / (1-r)^2; e^{-s} >= 1 - s */
        Mag s, xn;
        xn.set_pow_ui(Mag::from_abs(r_up.get()), (unsigned long)N + 1);
        xn.mul_ui(24);
        s.set_geometric(xn, Mag::from_abs(r_up.get()));
        s.set_geometric(s, Mag::from_abs(r_up.get()));
        mpfr_ui_sub(t.get(), 1, s.get(), MPFR_RNDD);
        mpfr_mul(b.get(), b.get(), t.get(), MPFR_RNDD);
    }
    if (mpfr_sgn(b.get()) <= 0) fail_internal("tail constant denominator collapsed");

    /* M = A^3 / B, rounded up */
    Real m(p);
    mpfr_pow_ui(m.get(), a.get(), 3, MPFR_RNDU);
    mpfr_div(m.get(), m.get(), b.get(), MPFR_RNDU);
    return Mag::from_abs(m.get());
}

const Mag& cached_tail_constant() {
    static Mag m = series_tail_constant();
    return m;
}

/* shared cache for the integer q-expansion */
std::vector<mpz_class>& coeff_cache(long kmax) {
    static std::mutex mu;
    static std::vector<mpz_class> cache;
    std::lock_guard<std::mutex> lk(mu);
    if ((long)cache.size() < kmax + 2) cache = jseries::j_q_coeffs(kmax + 64);
    return cache;
}

}  // namespace

Reduction reduce_to_fundamental(const CBall& z) {
    if (mpfr_sgn(z.im.get()) <= 0 && im_low(z) <= 0) {
        double iu = mpfr_get_d(z.im.get(), MPFR_RNDU) + z.rad.to_double();
        if (iu <= 0) fail_domain("point is not in the upper half plane");
        fail_precision("input ball straddles the real axis");
    }
    if (im_low(z) <= 0) fail_precision("input ball straddles the real axis");

    Prec wp = z.prec() + 32;
    Reduction r;
    r.z = CBall(wp);
    r.z.set(z);

    Mag one = Mag::from_d(1.0);
    for (long iter = 0; iter < 100000; ++iter) {
        /* recentre Re into [-1/2, 1/2] */
        mpz_class k = r.z.re.round_to_z();
        if (k != 0) {
            CBall kb = CBall::of_z(k, wp);
            CBall t(wp);
            t.set_sub(r.z, kb);
            r.z = t;
            r.a -= k * r.c;
            r.b -= k * r.d;
        }
        Mag up = r.z.abs_up();
        if (up.cmp(one) < 0) {
            /* certainly inside the unit circle: apply S = -1/z */
            CBall t(wp);
            t.set_inv(r.z);
            r.z.set_neg(t);
            mpz_class na = -r.c, nb = -r.d;
            r.c = r.a;
            r.d = r.b;
            r.a = na;
            r.b = nb;
            continue;
        }
        return r;  /* |z| >= 1 certainly, or straddling the arc: both fine */
    }
    fail_precision("fundamental-domain reduction did not settle");
}

/* ------------------------------------------------------------------ */

QuadPoint QuadPoint::make(mpz_class u, mpz_class v, mpz_class t, long m) {
    if (m <= 0) fail_domain("quadratic point needs m > 0");
    if (t == 0) fail_domain("quadratic point needs t != 0");
    QuadPoint w;
    w.u = std::move(u);
    w.v = std::move(v);
    w.t = std::move(t);
    w.m = m;
    if (w.t < 0) {
        w.u = -w.u;
        w.v = -w.v;
        w.t = -w.t;
    }
    if (w.v <= 0) fail_domain("quadratic point is not in the upper half plane");
    w.normalize();
    return w;
}

void QuadPoint::normalize() {
    mpz_class g = gcd(gcd(u, v), t);
    if (g > 1) {
        u /= g;
        v /= g;
        t /= g;
    }
}

void QuadPoint::reduce() {
    for (long iter = 0; iter < 1000000; ++iter) {
        /* k = ceil((2u - t) / (2t)) puts Re - k into (-1/2, 1/2] */
        mpz_class k, num = 2 * u - t, den = 2 * t;
        mpz_cdiv_q(k.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
        u -= k * t;

        mpz_class n2 = u * u + v * v * m;  /* |w|^2 * t^2 */
        mpz_class t2 = t * t;
        int c = cmp(n2, t2);
        if (c < 0 || (c == 0 && u < 0)) {
            /* w := -1/w  (norm < 1, or on the arc with Re < 0) */
            mpz_class nu = -u * t, nv = v * t;
            u = nu;
            v = nv;
            t = n2;
            normalize();
            continue;
        }
        return;
    }
    fail_internal("exact fundamental-domain reduction did not settle");
}

void QuadPoint::mobius(const mpz_class& a, const mpz_class& b,
                       const mpz_class& c, const mpz_class& d) {
    mpz_class det = a * d - b * c;
    if (det <= 0) fail_domain("mobius map must have positive determinant");
    mpz_class p = a * u + b * t;  /* numerator = p + a v i sqrt(m) */
    mpz_class q = c * u + d * t;  /* denominator = q + c v i sqrt(m) */
    mpz_class nu = p * q + a * c * v * v * m;
    mpz_class nv = v * t * det;
    mpz_class nt = q * q + c * c * v * v * m;
    if (nt == 0) fail_internal("mobius map collapsed the denominator");
    u = nu;
    v = nv;
    t = nt;
    normalize();
}

bool QuadPoint::is_j_zero() const {
    return 2 * u == t && 4 * v * v * m == 3 * t * t;
}

bool QuadPoint::equals(const QuadPoint& o) const {
    if (u * o.t != o.u * t) return false;
    return v * v * m * o.t * o.t == o.v * o.v * o.m * t * t;
}

CBall QuadPoint::ball(Prec p) const {
    CBall z(p);
    mpfr_set_z(z.re.get(), u.get_mpz_t(), MPFR_RNDN);
    mpfr_div_z(z.re.get(), z.re.get(), t.get_mpz_t(), MPFR_RNDN);
    mpfr_sqrt_ui(z.im.get(), (unsigned long)m, MPFR_RNDN);
    mpfr_mul_z(z.im.get(), z.im.get(), v.get_mpz_t(), MPFR_RNDN);
    mpfr_div_z(z.im.get(), z.im.get(), t.get_mpz_t(), MPFR_RNDN);
    Mag h = hypot_up(z.re.get(), z.im.get());
    h.set_mul_2exp(h, -(long)p);
    h.mul_ui(5);  /* at most three roundings per component */
    z.rad = h;
    return z;
}

std::string QuadPoint::str() const {
    return "(" + u.get_str() + " + " + v.get_str() + "*i*sqrt(" +
           std::to_string(m) + ")) / " + t.get_str();
}

/* ------------------------------------------------------------------ */

CBall j_eval_eta(const CBall& z, Prec p) {
    SeriesGate g = open_gate(z, p, /*half=*/false, 0.8, 0.01,
                             "eta route needs Im z >= 0.8 (reduce first)");
    long N = term_count(g.x, p);

    CBall one = CBall::of_si(1, p);

    /* E4 = 1 + 240 sum sigma3(n) q^n */
    CBall e4 = one, qn = g.q, term(p);
    for (long n = 1; n <= N; ++n) {
        term.set_mul_z(qn, 240 * jseries::sigma3(n));
        e4.add(term);
        if (n < N) qn.mul(g.q);
    }
    {
        /* 240 sum_{n>N} sigma3(n) x^n <= 290.4 (N+1)^3 x^{N+1}
         *                                / (1 - x e^{3/(N+1)}) */
        Mag head;
        head.set_pow_ui(g.x, (unsigned long)N + 1);
        Mag cube = Mag::from_d((double)(N + 1));
        cube.set_pow_ui(cube, 3);
        head.mul(cube);
        head.mul(Mag::from_d(290.4));
        Mag ratio;
        ratio.set_mul(g.x, exp3_over(N + 1));
        Mag tail;
        tail.set_geometric(head, ratio);
        e4.add_error(tail);
    }
    CBall e43(p);
    e43.set_mul(e4, e4);
    e43.mul(e4);

    /* prod_{n<=N} (1 - q^n), then ^24, then the tail envelope */
    CBall f = one, t(p);
    qn = g.q;
    for (long n = 1; n <= N; ++n) {
        t.set_sub(one, qn);
        f.mul(t);
        if (n < N) qn.mul(g.q);
    }
    CBall f2(p), f4(p), f8(p), f16(p), p24(p);
    f2.set_mul(f, f);
    f4.set_mul(f2, f2);
    f8.set_mul(f4, f4);
    f16.set_mul(f8, f8);
    p24.set_mul(f16, f8);
    {
        /* |log prod_{n>N} (1-q^n)^24| <= 24 x^{N+1} / (1-x)^2 = s,
         * so the missing factor is within e^{s} - 1 of 1 */
        Mag s;
        s.set_pow_ui(g.x, (unsigned long)N + 1);
        s.mul_ui(24);
        s.set_geometric(s, g.x);
        s.set_geometric(s, g.x);
        CBall envelope = one;
        envelope.add_error(s.expm1_up());
        p24.mul(envelope);
    }

    CBall den(p), j(p);
    den.set_mul(g.q, p24);
    j.set_div(e43, den);
    return j;
}

CBall j_eval_theta(const CBall& z, Prec p) {
    SeriesGate g = open_gate(z, p, /*half=*/true, 0.8, 0.1,
                             "theta route needs Im z >= 0.8 (reduce first)");
    /* exponents grow like n^2, so far fewer terms are needed */
    long Nl = term_count(g.x, p);
    long N = (long)std::sqrt((double)Nl) + 2;

    CBall one = CBall::of_si(1, p);
    CBall P2(p);
    P2.set_mul(g.q, g.q);

    /* theta3 = 1 + 2 sum P^{n^2}, theta4 with alternating signs */
    CBall th3 = one, th4 = one;
    {
        CBall cur = g.q, step(p), term(p);
        step.set_mul(P2, g.q);
        for (long n = 1; n <= N; ++n) {
            term.set_mul_si(cur, 2);
            th3.add(term);
            if (n % 2)
                th4.set_sub(th4, term);
            else
                th4.add(term);
            if (n < N) {
                cur.mul(step);
                step.mul(P2);
            }
        }
        Mag head;
        head.set_pow_ui(g.x, (unsigned long)((N + 1) * (N + 1)));
        Mag tail;
        tail.set_geometric(head, g.x);
        tail.mul_ui(2);
        th3.add_error(tail);
        th4.add_error(tail);
    }

    /* theta2 = 2 e^{i pi z / 4} sum_{n>=0} P^{n(n+1)} */
    CBall th2(p);
    {
        CBall sum = one, cur = one, inc = P2;
        for (long n = 1; n <= N; ++n) {
            cur.mul(inc);
            sum.add(cur);
            inc.mul(P2);
        }
        Mag head;
        head.set_pow_ui(g.x, (unsigned long)((N + 1) * (N + 2)));
        Mag tail;
        tail.set_geometric(head, g.x);
        sum.add_error(tail);

        CBall iz(p), t(p), q4(p);
        iz.re.neg(z.im);
        iz.im.set(z.re);
        iz.rad = z.rad;
        CBall pib = CBall::two_pi(p);
        pib.set_mul_2exp(pib, -1);
        t.set_mul(pib, iz);
        t.set_mul_2exp(t, -2);
        q4.set_exp(t);
        th2.set_mul(q4, sum);
        th2.set_mul_si(th2, 2);
    }

    CBall a8(p), b8(p), c8(p), s(p), s3(p), d(p), dt(p), j(p);
    a8.set_pow_si(th2, 8);
    b8.set_pow_si(th3, 8);
    c8.set_pow_si(th4, 8);
    s.set_add(a8, b8);
    s.add(c8);
    s3.set_pow_si(s, 3);
    dt.set_mul(th2, th3);
    dt.mul(th4);
    d.set_pow_si(dt, 8);
    j.set_div(s3, d);
    j.set_mul_si(j, 32);
    return j;
}

CBall j_eval_series(const CBall& z, Prec p) {
    SeriesGate g = open_gate(z, p, /*half=*/false, 1.02, 0.0019,
                             "q-expansion route needs Im z > 1");

    /* ratio of consecutive tail bounds: rho = x e^{2 pi} < 1 */
    Mag two_pi_up;
    {
        Real t(64);
        mpfr_const_pi(t.get(), MPFR_RNDU);
        mpfr_mul_2si(t.get(), t.get(), 1, MPFR_RNDU);
        two_pi_up = Mag::from_abs(t.get());
    }
    Mag rho;
    rho.set_mul(g.x, two_pi_up.exp_up());
    double rd = rho.to_double();
    if (rd > 0.89) fail_domain("q-expansion route needs Im z > 1");

    const Mag& M = cached_tail_constant();
    double bits_per_term = -std::log2(rd);
    long K = (long)(((double)p + 16 + std::log2(M.to_double())) / bits_per_term) + 2;
    if (K < 4) K = 4;
    if (K > 200000) fail_precision("q-expansion route would need too many terms");

    const std::vector<mpz_class>& c = coeff_cache(K);

    /* Horner over k = K .. 0, then the principal part c_{-1}/q */
    CBall acc = CBall::of_z(c[K + 1], p), cb(p);
    for (long k = K - 1; k >= 0; --k) {
        acc.mul(g.q);
        cb = CBall::of_z(c[k + 1], p);
        acc.add(cb);
    }
    CBall qinv(p), j(p);
    qinv.set_inv(g.q);
    j.set_add(acc, qinv);

    Mag head;
    head.set_pow_ui(rho, (unsigned long)K + 1);
    head.mul(M);
    Mag tail;
    tail.set_geometric(head, rho);
    j.add_error(tail);
    return j;
}

CBall j_eval(const CBall& z, Prec p) {
    Reduction red = reduce_to_fundamental(z);
    /* |j| grows like e^{2 pi Im}, and the error target is absolute, so the
     * working precision has to absorb the output's magnitude up front */
    double iu = mpfr_get_d(red.z.im.get(), MPFR_RNDU) + red.z.rad.to_double();
    if (iu > 1e6) fail_precision("imaginary part too large for evaluation");
    Prec base = p + 48 + (Prec)(9.07 * iu);  /* 2 pi / ln 2 = 9.0647 */
    Mag target = Mag::two_exp(-(long)p);
    for (int attempt = 0; attempt < 4; ++attempt) {
        Prec wp = base << attempt;
        CBall w(wp);
        w.set(red.z);
        CBall j = j_eval_eta(w, wp);
        if (j.rad.cmp(target) <= 0) return j;
        /* if the input ball itself is wider than the target, more working
         * precision cannot help */
        if (z.rad.cmp(target) > 0)
            fail_precision("input ball is wider than the requested accuracy");
    }
    fail_precision("could not reach the requested accuracy");
}

}  // namespace smrel::jfun
