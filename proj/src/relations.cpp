#include "smrel/relations.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "smrel/heights.hpp"
#include "smrel/intpoly.hpp"
#include "smrel/lattice.hpp"
#include "smrel/util.hpp"

namespace smrel::relations {

using factored::FactoredRational;
using lattice::ZMat;
using lattice::ZVec;

namespace {

/* ---------------- exact (factored) machinery ---------------- */

std::optional<std::vector<FactoredRational>> as_factored(
    const std::vector<AlgebraicNumber>& members, long prime_bound) {
    std::vector<FactoredRational> out;
    out.reserve(members.size());
    for (const auto& m : members) {
        if (!m.is_rational()) return std::nullopt;
        auto f = FactoredRational::factor(m.rational_value(), prime_bound);
        if (!f) return std::nullopt;
        out.push_back(std::move(*f));
    }
    return out;
}

ZMat exponent_matrix(const std::vector<FactoredRational>& f,
                     const std::vector<long>& primes) {
    ZMat a(f.size(), ZVec(primes.size(), 0));
    for (size_t i = 0; i < f.size(); ++i)
        for (size_t j = 0; j < primes.size(); ++j) {
            auto it = f[i].exps.find(primes[j]);
            if (it != f[i].exps.end()) a[i][j] = it->second;
        }
    return a;
}

int parity(const ZVec& v, const std::vector<int>& eps) {
    int s = 0;
    for (size_t i = 0; i < v.size(); ++i)
        if (eps[i] && mpz_odd_p(v[i].get_mpz_t())) s ^= 1;
    return s;
}

/* basis of the sublattice of ker with even sign-parity */
ZMat even_sublattice(ZMat ker, const std::vector<int>& eps) {
    size_t g = ker.size();
    for (size_t i = 0; i < ker.size(); ++i)
        if (parity(ker[i], eps)) {
            g = i;
            break;
        }
    if (g == ker.size()) return ker;  /* already all even */
    for (size_t i = 0; i < ker.size(); ++i) {
        if (i == g || !parity(ker[i], eps)) continue;
        for (size_t k = 0; k < ker[i].size(); ++k) ker[i][k] -= ker[g][k];
    }
    for (auto& x : ker[g]) x *= 2;
    return ker;
}

void sign_normalize(ZVec& v) {
    for (const auto& x : v) {
        if (x == 0) continue;
        if (x < 0)
            for (auto& y : v) y = -y;
        return;
    }
}

ZVec primitive_of(ZVec v) {
    mpz_class g = 0;
    for (const auto& x : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    if (g > 1)
        for (auto& x : v) x /= g;
    sign_normalize(v);
    return v;
}

/* shortest row by max-norm (ties: lexicographic), after reduction */
ZVec shortest_row(ZMat b) {
    lattice::lll_reduce(b);
    size_t best = b.size();
    for (size_t i = 0; i < b.size(); ++i) {
        bool zero = true;
        for (const auto& x : b[i])
            if (x != 0) zero = false;
        if (zero) continue;
        if (best == b.size()) {
            best = i;
            continue;
        }
        mpz_class mi = 0, mb = 0;
        for (const auto& x : b[i]) if (cmp(abs(x), mi) > 0) mi = abs(x);
        for (const auto& x : b[best]) if (cmp(abs(x), mb) > 0) mb = abs(x);
        if (mi < mb || (mi == mb && b[i] < b[best])) best = i;
    }
    if (best == b.size()) return {};
    return b[best];
}

bool product_is_one(const std::vector<FactoredRational>& f,
                    const std::vector<mpz_class>& e) {
    FactoredRational acc;
    for (size_t i = 0; i < f.size(); ++i) {
        if (!e[i].fits_slong_p()) fail_budget("exponent out of range");
        acc.mul_pow(f[i], e[i].get_si());
    }
    return acc.is_unit() && acc.sign > 0;
}

/* ---------------- certified numeric machinery ---------------- */

struct LogArg {
    Real lam_lo, lam_up;  /* log |a| interval */
    Real th_mid;          /* some branch of arg a */
    Mag th_rad;
    LogArg(Prec p) : lam_lo(p), lam_up(p), th_mid(p) {}
};

/* certified log/arg of one member at scale 2^-s quality */
LogArg log_arg(const AlgebraicNumber& a, long s) {
    for (Prec wp = (Prec)s + 64; wp <= (Prec)s * 4 + 4096; wp *= 2) {
        CBall e = a.enclosure(wp);
        Mag lo = e.abs_low();
        if (lo.is_zero()) continue;  /* refine until 0 is excluded */
        /* radius small against the modulus, so the argument cone is thin */
        Mag half = lo;
        half.set_mul_2exp(half, -1);
        if (e.rad.cmp(half) > 0) continue;

        LogArg la(wp);
        Real t1(wp), t2(wp);
        /* |a| bounds at full precision */
        mpfr_sqr(t1.get(), e.re.get(), MPFR_RNDU);
        mpfr_sqr(t2.get(), e.im.get(), MPFR_RNDU);
        mpfr_add(t1.get(), t1.get(), t2.get(), MPFR_RNDU);
        mpfr_sqrt(t1.get(), t1.get(), MPFR_RNDU);
        mpfr_add(t1.get(), t1.get(), e.rad.get(), MPFR_RNDU);
        mpfr_log(la.lam_up.get(), t1.get(), MPFR_RNDU);
        mpfr_sqr(t1.get(), e.re.get(), MPFR_RNDD);
        mpfr_sqr(t2.get(), e.im.get(), MPFR_RNDD);
        mpfr_add(t1.get(), t1.get(), t2.get(), MPFR_RNDD);
        mpfr_sqrt(t1.get(), t1.get(), MPFR_RNDD);
        mpfr_sub(t1.get(), t1.get(), e.rad.get(), MPFR_RNDD);
        if (mpfr_sgn(t1.get()) <= 0) continue;
        mpfr_log(la.lam_lo.get(), t1.get(), MPFR_RNDD);

        la.th_mid.atan2(e.im, e.re);
        /* arg deviation <= arcsin(r/|z|) <= 1.048 r/|z| for r <= |z|/2 */
        Mag dr;
        dr.set_div_lower(e.rad, lo);
        dr.mul(Mag::from_d(1.048));
        /* plus the atan2 rounding */
        Mag slop = Mag::two_exp(-(long)wp + 3);
        dr.add(slop);
        la.th_rad = dr;

        /* good enough when the interval is tighter than 2^-s-2 */
        Real w(wp);
        w.sub(la.lam_up, la.lam_lo, MPFR_RNDU);
        Mag lw = Mag::from_abs(w.get());
        if (!lw.le_two_exp(-(long)s - 2)) continue;
        if (!la.th_rad.le_two_exp(-(long)s - 2)) continue;
        return la;
    }
    fail_precision("could not certify log/arg of a member");
}

mpz_class scaled_round(const Real& x, long s) {
    Real t(x.prec());
    t.mul_2exp(x, s);
    return t.round_to_z();
}

CBall ball_product(const std::vector<AlgebraicNumber>& members,
                   const std::vector<mpz_class>& e, Prec p) {
    CBall acc = CBall::of_si(1, p);
    for (size_t i = 0; i < members.size(); ++i) {
        if (e[i] == 0) continue;
        if (!e[i].fits_slong_p()) fail_budget("exponent out of range");
        long k = e[i].get_si();
        long amp = 0;
        for (long t = std::labs(k); t > 0; t >>= 1) ++amp;
        CBall b = members[i].enclosure(p + 64 + 8 * amp);
        CBall pw(p);
        pw.set_pow_si(b, k);
        acc.mul(pw);
    }
    return acc;
}

/* exponent E such that |prod - 1| > e^-E whenever the product differs
 * from 1: E = D (h(prod) + log 2), D = product of the degrees */
double liouville_exponent(const std::vector<AlgebraicNumber>& members,
                          const std::vector<mpz_class>& e) {
    double dd = 1.0;
    double hh = 0.0;
    for (size_t i = 0; i < members.size(); ++i) {
        if (e[i] == 0) continue;
        dd *= (double)members[i].degree();
        if (dd > 1e9) fail_budget("degree product too large to certify");
        heights::HeightValue h = heights::weil_height(members[i], 64);
        hh += std::fabs(e[i].get_d()) * (h.upper() + 1e-12);
    }
    return dd * (hh + 0.6932);
}

/* which m-th root of unity a ball encloses; the candidates are separated
 * by at least 2 sin(pi/m), so a match within sin(pi/m) is unambiguous */
std::optional<unsigned long> unity_power(const AlgebraicNumber& a,
                                         unsigned long m) {
    Prec wp = 192;
    while (wp < 8192 && (unsigned long)wp < 8 * m) wp *= 2;
    CBall e = a.enclosure(wp);
    Real ang(wp), c(wp), s(wp), d1(wp), d2(wp), sep(wp);
    mpfr_const_pi(sep.get(), MPFR_RNDD);
    mpfr_div_ui(sep.get(), sep.get(), m, MPFR_RNDD);
    mpfr_sin(sep.get(), sep.get(), MPFR_RNDD);
    for (unsigned long k = 1; k < m; ++k) {
        if (std::gcd(k, m) != 1) continue;
        mpfr_const_pi(ang.get(), MPFR_RNDN);
        mpfr_mul_ui(ang.get(), ang.get(), 2 * k, MPFR_RNDN);
        mpfr_div_ui(ang.get(), ang.get(), m, MPFR_RNDN);
        mpfr_sin_cos(s.get(), c.get(), ang.get(), MPFR_RNDN);
        mpfr_sub(d1.get(), e.re.get(), c.get(), MPFR_RNDA);
        mpfr_sub(d2.get(), e.im.get(), s.get(), MPFR_RNDA);
        Mag dist = hypot_up(d1.get(), d2.get());
        dist.add(e.rad);
        dist.add(Mag::two_exp(-(long)wp + 4));
        if (mpfr_cmp(dist.get(), sep.get()) < 0) return k;
    }
    return std::nullopt;
}

struct ExactPiece {
    std::optional<FactoredRational> rat;
    unsigned long m = 0, k = 0;  /* zeta_m^k when not rational */
};

std::optional<std::vector<ExactPiece>> as_exact_pieces(
    const std::vector<AlgebraicNumber>& members, long prime_bound) {
    std::vector<ExactPiece> out(members.size());
    for (size_t i = 0; i < members.size(); ++i) {
        if (members[i].is_rational()) {
            auto f = FactoredRational::factor(members[i].rational_value(),
                                              prime_bound);
            if (!f) return std::nullopt;
            out[i].rat = std::move(*f);
            continue;
        }
        auto ord = root_of_unity_order(members[i]);
        if (!ord) return std::nullopt;
        auto k = unity_power(members[i], *ord);
        if (!k) return std::nullopt;
        out[i].m = *ord;
        out[i].k = *k;
    }
    return out;
}

/* exact verdict for a product of factored rationals and roots of unity */
std::optional<Verify> verify_exact(const std::vector<ExactPiece>& pieces,
                                   const std::vector<mpz_class>& e) {
    unsigned long m_lcm = 1;
    for (const auto& p : pieces) {
        if (p.rat) continue;
        unsigned long g = std::gcd(m_lcm, p.m);
        if (p.m / g > 1000000000UL / m_lcm) return std::nullopt;  /* overflow */
        m_lcm = m_lcm / g * p.m;
    }
    FactoredRational acc;
    mpz_class phase = 0;  /* accumulated K of zeta_M^K */
    for (size_t i = 0; i < pieces.size(); ++i) {
        if (pieces[i].rat) {
            if (!e[i].fits_slong_p()) fail_budget("exponent out of range");
            acc.mul_pow(*pieces[i].rat, e[i].get_si());
        } else {
            mpz_class r;
            mpz_fdiv_r_ui(r.get_mpz_t(), e[i].get_mpz_t(), m_lcm);
            phase += r * (m_lcm / pieces[i].m) * pieces[i].k;
            mpz_fdiv_r_ui(phase.get_mpz_t(), phase.get_mpz_t(), m_lcm);
        }
    }
    if (!acc.is_unit()) return Verify::refuted;
    /* product = sign * zeta_M^K = 1 iff 2K + (sign<0)M = 0 mod 2M */
    phase *= 2;
    if (acc.sign < 0) phase += m_lcm;
    mpz_fdiv_r_ui(phase.get_mpz_t(), phase.get_mpz_t(), 2 * m_lcm);
    return phase == 0 ? Verify::exact : Verify::refuted;
}

}  // namespace

/* ---------------- public: roots of unity ---------------- */

std::optional<unsigned long> root_of_unity_order(const AlgebraicNumber& a) {
    const IntPoly& f = a.min_poly();
    long d = f.degree();
    if (d < 1) return std::nullopt;
    if (f.lc() != 1) return std::nullopt;
    if (f[0] != 1 && f[0] != -1) return std::nullopt;
    if (d == 1) {
        mpq_class v = a.rational_value();
        if (v == 1) return 1;
        if (v == -1) return 2;
        return std::nullopt;
    }
    /* phi(m) = d forces m <= 2 d^2 */
    for (unsigned long m = 3; m <= (unsigned long)(2 * d * d + 2); ++m) {
        if (euler_phi(m) != (unsigned long)d) continue;
        if (f == IntPoly::cyclotomic(m)) return m;
    }
    return std::nullopt;
}

bool is_root_of_unity(const AlgebraicNumber& a) {
    return root_of_unity_order(a).has_value();
}

std::optional<std::pair<unsigned long, unsigned long>>
root_of_unity_decomposition(const AlgebraicNumber& a) {
    auto m = root_of_unity_order(a);
    if (!m) return std::nullopt;
    if (*m == 1) return std::make_pair(1UL, 0UL);
    if (*m == 2) return std::make_pair(2UL, 1UL);
    auto k = unity_power(a, *m);
    if (!k) fail_internal("order known but the embedding matched no power");
    return std::make_pair(*m, *k);
}

/* ---------------- public: exact route ---------------- */

std::optional<RelationCertificate> find_relation_exact(
    const std::vector<FactoredRational>& members) {
    if (members.empty()) fail_domain("need at least one member");
    std::vector<long> primes = factored::prime_support(members);
    ZMat a = exponent_matrix(members, primes);
    ZMat ker = lattice::kernel(a);
    if (ker.empty()) return std::nullopt;

    std::vector<int> eps(members.size());
    for (size_t i = 0; i < members.size(); ++i) eps[i] = members[i].sign < 0;

    RelationCertificate cert;
    cert.mode = "exact";
    {
        /* informational: primitive generator of the plain kernel */
        ZMat k2 = ker;
        ZVec gen = k2.size() == 1 ? primitive_of(k2[0]) : shortest_row(k2);
        if (k2.size() > 1) gen = primitive_of(gen);
        cert.kernel_generator = gen;
        cert.kernel_sign = parity(gen, eps) ? -1 : 1;
    }

    ZMat even = even_sublattice(std::move(ker), eps);
    ZVec g = even.size() == 1 ? even[0] : shortest_row(even);
    if (g.empty()) return std::nullopt;
    sign_normalize(g);
    cert.exponents = g;
    if (!product_is_one(members, cert.exponents))
        fail_internal("exact relation failed its own verification");
    return cert;
}

/* ---------------- public: verification ---------------- */

Verify verify_relation(const std::vector<AlgebraicNumber>& members,
                       const std::vector<mpz_class>& exponents,
                       const Options& opt) {
    if (members.size() != exponents.size())
        fail_domain("one exponent per member required");
    if (members.empty()) fail_domain("need at least one member");
    bool all_zero = true;
    for (const auto& e : exponents)
        if (e != 0) all_zero = false;
    if (all_zero) fail_domain("exponents must not all be zero");
    for (const auto& m : members)
        if (m.is_zero()) fail_domain("members must be nonzero");

    if (auto pieces = as_exact_pieces(members, opt.prime_bound))
        if (auto v = verify_exact(*pieces, exponents)) return *v;

    /* Liouville-gap certification */
    double E = liouville_exponent(members, exponents);
    long p_need = (long)(E * 1.4427) + 96;  /* bits to see below the gap */
    if (p_need > (long)opt.max_precision * 8)
        fail_indeterminate("certification gap is below any affordable precision");

    for (Prec p = 128; p <= (Prec)p_need * 2; p *= 2) {
        CBall prod = ball_product(members, exponents, p);
        Mag lo = prod.dist_to_one_low();
        if (!lo.is_zero()) return Verify::refuted;
        /* upper bound of |prod - 1| */
        Real d(p), t(p);
        mpfr_sub_ui(d.get(), prod.re.get(), 1, MPFR_RNDA);
        Mag up = Mag::from_abs(d.get());
        up.add_abs(prod.im.get());
        up.add(prod.rad);
        /* compare against e^-E from below */
        mpfr_set_d(t.get(), -E, MPFR_RNDD);
        mpfr_exp(t.get(), t.get(), MPFR_RNDD);
        if (mpfr_cmp(up.get(), t.get()) < 0) return Verify::certified_numeric;
        if ((long)p >= p_need) break;
    }
    fail_indeterminate("could not confirm or refute the relation");
}

/* ---------------- public: search ---------------- */

std::optional<RelationCertificate> find_relation(
    const std::vector<AlgebraicNumber>& members, const mpz_class& exponent_bound,
    const Options& opt) {
    if (members.empty()) fail_domain("need at least one member");
    if (exponent_bound < 1) fail_domain("exponent bound must be positive");
    for (const auto& m : members)
        if (m.is_zero()) fail_domain("members must be nonzero");

    if (!opt.force_numeric) {
        if (auto f = as_factored(members, opt.prime_bound)) {
            auto cert = find_relation_exact(*f);
            if (!cert) return std::nullopt;
            mpz_class mx = 0;
            for (const auto& x : cert->exponents)
                if (cmp(abs(x), mx) > 0) mx = abs(x);
            if (mx <= exponent_bound) return cert;
            /* the chosen generator exceeds the box; decide whether any
             * relation can fit inside it */
            std::vector<long> primes = factored::prime_support(*f);
            ZMat a = exponent_matrix(*f, primes);
            ZMat ker = lattice::kernel(a);
            std::vector<int> eps(members.size());
            for (size_t i = 0; i < members.size(); ++i)
                eps[i] = (*f)[i].sign < 0;
            ZMat even = even_sublattice(std::move(ker), eps);
            if (even.size() == 1) return std::nullopt;  /* rank 1: multiples only */
            lattice::lll_reduce(even);
            mpz_class cap = (long)members.size();
            cap *= exponent_bound * exponent_bound;
            if (lattice::min_gs_norm2(even) > mpq_class(cap))
                return std::nullopt;
            fail_indeterminate(
                "the reduced relation basis shows nothing inside the exponent box, "
                "but cannot rule a short combination out");
        }
    }

    size_t n = members.size();
    double bd = exponent_bound.get_d();
    long s0 = 64 + 4 * (long)std::ceil(std::log2((double)n * bd + 2.0));

    for (int round = 0; round < 4; ++round) {
        long s = s0 << round;
        if ((Prec)s > opt.max_precision) break;

        /* columns: identity | scaled log moduli | scaled args, 2pi row last */
        std::vector<LogArg> la;
        la.reserve(n);
        for (const auto& m : members) la.push_back(log_arg(m, s));

        ZMat b(n + 1, ZVec(n + 2, 0));
        for (size_t i = 0; i < n; ++i) {
            b[i][i] = 1;
            Real mid(la[i].lam_lo.prec());
            mid.add(la[i].lam_lo, la[i].lam_up);
            mid.mul_2exp(mid, -1);
            b[i][n] = scaled_round(mid, s);
            b[i][n + 1] = scaled_round(la[i].th_mid, s);
        }
        {
            Real tp((Prec)s + 64);
            mpfr_const_pi(tp.get(), MPFR_RNDN);
            mpfr_mul_2si(tp.get(), tp.get(), 1, MPFR_RNDN);
            b[n][n + 1] = scaled_round(tp, s);
        }

        ZMat reduced = b;
        lattice::lll_reduce(reduced);

        /* candidates: small exponent blocks of reduced rows */
        for (const auto& row : reduced) {
            ZVec a(row.begin(), row.begin() + (long)n);
            bool zero = true;
            mpz_class mx = 0;
            for (const auto& x : a) {
                if (x != 0) zero = false;
                if (cmp(abs(x), mx) > 0) mx = abs(x);
            }
            if (zero || mx > exponent_bound) continue;
            ZVec prim = primitive_of(a);
            ZVec doubled = prim;
            for (auto& x : doubled) x *= 2;
            sign_normalize(a);
            std::vector<const ZVec*> cands = {&prim, &doubled};
            if (a != prim && a != doubled) cands.push_back(&a);
            for (const ZVec* cand : cands) {
                mpz_class cmx = 0;
                for (const auto& x : *cand)
                    if (cmp(abs(x), cmx) > 0) cmx = abs(x);
                if (cmx > exponent_bound) continue;
                try {
                    Verify v = verify_relation(members, *cand, opt);
                    if (v != Verify::refuted) {
                        RelationCertificate cert;
                        cert.exponents = *cand;
                        cert.mode =
                            v == Verify::exact ? "exact" : "certified_numeric";
                        cert.numeric_precision = (Prec)s;
                        return cert;
                    }
                } catch (const Error& err) {
                    /* an undecidable candidate is not fatal: the "none"
                     * certificate below still covers it */
                    if (err.kind() != ErrorKind::indeterminate) throw;
                }
            }
        }

        /* certified "none": every nonzero lattice vector has squared norm
         * >= min GS norm; a genuine relation with max|a| <= B would give a
         * vector of squared norm <= 6 n^2 B^2 (rounding errors <= 1 per
         * scaled entry, and the arg row absorbs one 2pi multiple) */
        mpq_class floor2 = lattice::min_gs_norm2(reduced);
        mpz_class cap = 6 * (long)(n * n);
        cap *= exponent_bound * exponent_bound;
        if (floor2 > mpq_class(cap)) return std::nullopt;
    }

    fail_indeterminate("relation search exhausted its precision budget");
}

/* ---------------- public: minimality ---------------- */

bool is_minimal_dependent(const std::vector<AlgebraicNumber>& members,
                          const mpz_class& exponent_bound, const Options& opt) {
    size_t n = members.size();
    if (n == 0) fail_domain("need at least one member");
    for (const auto& m : members)
        if (m.is_zero()) fail_domain("members must be nonzero");

    if (n == 1) return is_root_of_unity(members[0]);

    if (!opt.force_numeric) {
        if (auto f = as_factored(members, opt.prime_bound)) {
            /* dependent iff the exponent matrix has a nontrivial kernel
             * (the parity constraint only ever doubles a generator) */
            std::vector<long> primes = factored::prime_support(*f);
            ZMat a = exponent_matrix(*f, primes);
            if (lattice::kernel(a).empty()) return false;
            for (size_t drop = 0; drop < n; ++drop) {
                ZMat sub;
                for (size_t i = 0; i < n; ++i)
                    if (i != drop) sub.push_back(a[i]);
                if (!lattice::kernel(sub).empty()) return false;
            }
            return true;
        }
    }

    if (!find_relation(members, exponent_bound, opt)) return false;
    for (size_t drop = 0; drop < n; ++drop) {
        std::vector<AlgebraicNumber> sub;
        for (size_t i = 0; i < n; ++i)
            if (i != drop) sub.push_back(members[i]);
        if (sub.size() == 1) {
            if (is_root_of_unity(sub[0])) return false;
        } else if (find_relation(sub, exponent_bound, opt)) {
            return false;
        }
    }
    return true;
}

}  // namespace smrel::relations
