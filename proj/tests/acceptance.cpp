/* Acceptance gate: one PASS/FAIL line per criterion, nonzero exit when any
 * criterion fails.  Each criterion re-derives its expectations from scratch
 * (independent factoring, nullspace elimination, breadth-first search,
 * closed-form heights) rather than trusting the library under test. */

#include <gmpxx.h>

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "smrel/algnum.hpp"
#include "smrel/ball.hpp"
#include "smrel/classpoly.hpp"
#include "smrel/factored.hpp"
#include "smrel/heights.hpp"
#include "smrel/intpoly.hpp"
#include "smrel/jfun.hpp"
#include "smrel/modpoly.hpp"
#include "smrel/qforms.hpp"
#include "smrel/relations.hpp"
#include "smrel/search.hpp"
#include "smrel/serialize.hpp"
#include "smrel/trees.hpp"
#include "smrel/util.hpp"

namespace {

using smrel::CBall;
using smrel::IntPoly;
using smrel::Mag;
using smrel::Prec;
using smrel::Real;
using smrel::Rng;
using smrel::algnum::AlgebraicNumber;

int g_failures = 0;

template <class F>
void run(int idx, const char* label, double budget_s, F&& body) {
    auto t0 = std::chrono::steady_clock::now();
    std::string why;
    try {
        why = body();
    } catch (const std::exception& e) {
        why = std::string("exception: ") + e.what();
    }
    double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                              t0)
                    .count();
    if (why.empty() && dt > budget_s)
        why = "time budget exceeded: " + std::to_string(dt) + "s > " +
              std::to_string(budget_s) + "s";
    if (why.empty()) {
        std::printf("criterion %d %s: PASS (%.1fs)\n", idx, label, dt);
    } else {
        std::printf("criterion %d %s: FAIL (%s)\n", idx, label, why.c_str());
        ++g_failures;
    }
    std::fflush(stdout);
}

/* ------------------------------------------------------------------ */
/* oracle helpers, independent of the library's own factoring/kernels  */

/* exponent map of |n| by plain trial division */
std::map<long, long> factor_abs(mpz_class n) {
    std::map<long, long> f;
    if (n < 0) n = -n;
    for (long p = 2; mpz_class(p) * p <= n; p = (p == 2 ? 3 : p + 2))
        while (n % p == 0) {
            ++f[p];
            n /= p;
        }
    if (n > 1) {
        if (!n.fits_slong_p()) return {};
        ++f[n.get_si()];
    }
    return f;
}

/* primitive generator of { x : sum_i x_i row_i = 0 } when that space is
 * exactly one-dimensional; empty vector otherwise.  Plain fraction-free-ish
 * Gauss elimination over mpq. */
std::vector<mpz_class> kernel_generator_1d(
    const std::vector<std::map<long, long>>& rows) {
    std::set<long> support;
    for (const auto& r : rows)
        for (const auto& [p, e] : r) support.insert(p);
    std::vector<long> ps(support.begin(), support.end());
    const size_t k = rows.size(), np = ps.size();

    /* equations: one per prime, unknowns are the k exponents */
    std::vector<std::vector<mpq_class>> m(np, std::vector<mpq_class>(k, 0));
    for (size_t a = 0; a < np; ++a)
        for (size_t i = 0; i < k; ++i) {
            auto it = rows[i].find(ps[a]);
            if (it != rows[i].end()) m[a][i] = it->second;
        }

    size_t rank = 0;
    std::vector<size_t> pivot_col;
    for (size_t col = 0; col < k && rank < np; ++col) {
        size_t piv = rank;
        while (piv < np && m[piv][col] == 0) ++piv;
        if (piv == np) continue;
        std::swap(m[rank], m[piv]);
        mpq_class lead = m[rank][col];
        for (size_t c = 0; c < k; ++c) m[rank][c] /= lead;
        for (size_t r = 0; r < np; ++r) {
            if (r == rank || m[r][col] == 0) continue;
            mpq_class f = m[r][col];
            for (size_t c = 0; c < k; ++c) m[r][c] -= f * m[rank][c];
        }
        pivot_col.push_back(col);
        ++rank;
    }
    if (k - rank != 1) return {};

    size_t free_col = 0;
    while (std::find(pivot_col.begin(), pivot_col.end(), free_col) !=
           pivot_col.end())
        ++free_col;
    std::vector<mpq_class> x(k, 0);
    x[free_col] = 1;
    for (size_t r = 0; r < rank; ++r) x[pivot_col[r]] = -m[r][free_col];

    mpz_class den = 1;
    for (const mpq_class& v : x) den = lcm(den, v.get_den());
    std::vector<mpz_class> out(k);
    mpz_class g = 0;
    for (size_t i = 0; i < k; ++i) {
        out[i] = mpz_class(x[i] * den);
        g = gcd(g, out[i]);
    }
    if (g > 1)
        for (mpz_class& v : out) v /= g;
    for (const mpz_class& v : out) {
        if (v == 0) continue;
        if (v < 0)
            for (mpz_class& w : out) w = -w;
        break;
    }
    return out;
}

/* primitive kernel vector, doubled when the signed product would be -1 */
std::vector<mpz_class> expected_exponents(const std::vector<mpz_class>& values,
                                          std::vector<mpz_class>* primitive) {
    std::vector<std::map<long, long>> rows;
    for (const mpz_class& v : values) {
        auto f = factor_abs(v);
        if (f.empty() && (v != 1 && v != -1)) return {};
        rows.push_back(std::move(f));
    }
    std::vector<mpz_class> k = kernel_generator_1d(rows);
    if (k.empty()) return {};
    if (primitive) *primitive = k;
    int sign = 1;
    for (size_t i = 0; i < values.size(); ++i)
        if (values[i] < 0 && mpz_odd_p(k[i].get_mpz_t())) sign = -sign;
    if (sign < 0)
        for (mpz_class& e : k) e *= 2;
    return k;
}

bool same_up_to_global_sign(const std::vector<mpz_class>& a,
                            const std::vector<mpz_class>& b) {
    if (a.size() != b.size()) return false;
    bool eq = true, neg = true;
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] != b[i]) eq = false;
        if (a[i] != -b[i]) neg = false;
    }
    return eq || neg;
}

std::string zset_str(const std::vector<long>& ds) {
    std::string s = "{";
    for (size_t i = 0; i < ds.size(); ++i)
        s += (i ? "," : "") + std::to_string(ds[i]);
    return s + "}";
}

/* ------------------------------------------------------------------ */

const std::pair<long, const char*> kCensus[13] = {
    {-3, "0"},
    {-4, "1728"},
    {-7, "-3375"},
    {-8, "8000"},
    {-11, "-32768"},
    {-12, "54000"},
    {-16, "287496"},
    {-19, "-884736"},
    {-27, "-12288000"},
    {-28, "16581375"},
    {-43, "-884736000"},
    {-67, "-147197952000"},
    {-163, "-262537412640768000"}};

std::string criterion_census() {
    auto rows = smrel::classpoly::rational_singular_moduli(300);
    if (rows.size() != 13)
        return "expected 13 class-number-one values, got " +
               std::to_string(rows.size());
    for (int i = 0; i < 13; ++i) {
        if (rows[i].D != kCensus[i].first)
            return "discriminant mismatch at index " + std::to_string(i) +
                   ": got " + std::to_string(rows[i].D);
        if (rows[i].j != mpz_class(kCensus[i].second))
            return "value mismatch at D=" + std::to_string(rows[i].D) +
                   ": got " + rows[i].j.get_str();
    }
    return "";
}

std::string criterion_documented_tuples() {
    smrel::search::SearchOptions opt;
    opt.delta_max = 200;
    opt.n_max = 5;
    opt.rational_only = true;
    smrel::search::SearchReport rep =
        smrel::search::singular_dependent_search(opt);

    const std::vector<std::vector<long>> targets = {
        {-19, -11, -4}, {-27, -12, -8, -7}, {-67, -27, -16, -11, -4}};
    for (const std::vector<long>& target : targets) {
        std::vector<long> want = target;
        std::sort(want.begin(), want.end());
        const smrel::search::TupleFinding* hit = nullptr;
        for (const auto& f : rep.findings) {
            std::vector<long> ds;
            for (const auto& m : f.members) ds.push_back(m.disc);
            std::sort(ds.begin(), ds.end());
            if (ds == want) {
                hit = &f;
                break;
            }
        }
        if (!hit)
            return "no finding with discriminants " + zset_str(want) +
                   " among " + std::to_string(rep.findings.size()) +
                   " findings";
        if (hit->cert.mode != "exact")
            return "finding " + zset_str(want) + " not certified exactly";
        if (!hit->cert.minimal)
            return "finding " + zset_str(want) + " not marked minimal";

        std::vector<mpz_class> values;
        for (const auto& m : hit->members) {
            if (!m.rational)
                return "finding " + zset_str(want) + " has a non-rational member";
            values.push_back(m.value);
        }
        std::vector<mpz_class> primitive;
        std::vector<mpz_class> expected = expected_exponents(values, &primitive);
        if (expected.empty())
            return "oracle kernel of " + zset_str(want) +
                   " is not one-dimensional";
        if (!same_up_to_global_sign(hit->cert.exponents, expected))
            return "exponents of " + zset_str(want) +
                   " disagree with the nullspace oracle";
        if (!same_up_to_global_sign(hit->cert.kernel_generator, primitive))
            return "kernel generator of " + zset_str(want) +
                   " disagrees with the nullspace oracle";
    }
    return "";
}

std::string criterion_pairs() {
    auto rows = smrel::classpoly::rational_singular_moduli(200);
    std::vector<mpz_class> vals;
    for (const auto& r : rows)
        if (r.j != 0) vals.push_back(r.j);
    if (vals.size() != 12)
        return "expected 12 nonzero rational values, got " +
               std::to_string(vals.size());

    for (size_t i = 0; i < vals.size(); ++i) {
        for (size_t j = i + 1; j < vals.size(); ++j) {
            auto fi = smrel::factored::FactoredRational::factor(
                mpq_class(vals[i]));
            auto fj = smrel::factored::FactoredRational::factor(
                mpq_class(vals[j]));
            if (!fi || !fj) return "factoring a census value failed";
            auto cert = smrel::relations::find_relation_exact({*fi, *fj});
            if (cert)
                return "unexpected dependent pair (" + vals[i].get_str() +
                       ", " + vals[j].get_str() + ")";
            std::vector<std::map<long, long>> rows2 = {factor_abs(vals[i]),
                                                       factor_abs(vals[j])};
            if (!kernel_generator_1d(rows2).empty())
                return "oracle kernel nontrivial for pair (" +
                       vals[i].get_str() + ", " + vals[j].get_str() + ")";
        }
    }

    smrel::search::SearchReport rep = smrel::search::pair_product_check(200);
    if (!rep.findings.empty())
        return "product-one sweep reported " +
               std::to_string(rep.findings.size()) + " findings";
    if (rep.exclusions == 0) return "product-one sweep examined nothing";
    return "";
}

double coeff_residual(const CBall& c, const mpz_class& z) {
    mpfr_t d;
    mpfr_init2(d, 64);
    mpfr_sub_z(d, c.re.get(), z.get_mpz_t(), MPFR_RNDA);
    double out = std::fabs(mpfr_get_d(d, MPFR_RNDA));
    mpfr_clear(d);
    out += std::fabs(c.im.to_double()) + c.rad.to_double();
    return out;
}

/* expand prod (x - root_i) in ball arithmetic and round to integers */
IntPoly poly_from_root_balls(const std::vector<CBall>& roots, Prec p,
                             double& worst) {
    std::vector<CBall> c;
    c.push_back(CBall::of_si(1, p));
    for (const CBall& r : roots) {
        std::vector<CBall> n(c.size() + 1, CBall(p));
        for (size_t t = 0; t < n.size(); ++t) {
            CBall acc(p);
            if (t > 0) acc.set(c[t - 1]);
            if (t < c.size()) {
                CBall prod(p);
                prod.set_mul(r, c[t]);
                CBall res(p);
                res.set_sub(acc, prod);
                acc = res;
            }
            n[t] = acc;
        }
        c = std::move(n);
    }
    worst = 0;
    std::vector<mpz_class> zs;
    for (const CBall& coeff : c) {
        mpz_class z = coeff.re.round_to_z();
        worst = std::max(worst, coeff_residual(coeff, z));
        zs.push_back(std::move(z));
    }
    return IntPoly(std::move(zs));
}

std::string criterion_class_polys() {
    const Prec p1 = 192, p2 = 256; /* 64 bits apart */
    double w1 = 0, w2 = 0;
    IntPoly h1 = poly_from_root_balls(
        smrel::classpoly::singular_moduli_balls(-23, p1), p1, w1);
    IntPoly h2 = poly_from_root_balls(
        smrel::classpoly::singular_moduli_balls(-23, p2), p2, w2);
    if (!(h1 == h2)) return "reconstructions at 192 and 256 bits disagree";
    if (!(w1 < 0.25) || !(w2 < 0.25))
        return "reconstruction residual too large: " + std::to_string(w1) +
               ", " + std::to_string(w2);
    IntPoly frozen({mpz_class("12771880859375"), mpz_class("-5151296875"),
                    mpz_class("3491750"), mpz_class(1)});
    if (!(h1 == frozen)) return "reconstruction disagrees with known cubic";
    if (!(smrel::classpoly::hilbert_class_poly(-23) == frozen))
        return "integer route disagrees with known cubic";

    for (long D : smrel::qforms::enumerate_discriminants(300)) {
        smrel::classpoly::ClassPolyDiag diag;
        smrel::classpoly::hilbert_class_poly(D, &diag);
        if (!(diag.max_residual < 0.25))
            return "rounding residual " + std::to_string(diag.max_residual) +
                   " at D=" + std::to_string(D);
    }
    return "";
}

std::string criterion_modular_polys() {
    smrel::modpoly::ModularPolynomial a = smrel::modpoly::build_by_q_expansion(2);
    smrel::modpoly::ModularPolynomial b =
        smrel::modpoly::build_by_cm_interpolation(2);
    if (a.deg_x() != b.deg_x() || a.deg_y() != b.deg_y())
        return "the two level-2 routes disagree in degree";
    for (long i = 0; i <= a.deg_x(); ++i)
        for (long j = 0; j <= a.deg_y(); ++j)
            if (a.at(i, j) != b.at(i, j))
                return "the two level-2 routes disagree at X^" +
                       std::to_string(i) + " Y^" + std::to_string(j);

    for (long n = 2; n <= 5; ++n) {
        const auto& f = smrel::modpoly::modular_polynomial(n, 6);
        if (f.deg_x() != f.deg_y())
            return "level " + std::to_string(n) + " is not square";
        for (long i = 0; i <= f.deg_x(); ++i)
            for (long j = 0; j < i; ++j)
                if (f.at(i, j) != f.at(j, i))
                    return "level " + std::to_string(n) + " not symmetric";
    }

    Rng rng(20260816);
    for (long n = 2; n <= 5; ++n) {
        const auto& f = smrel::modpoly::modular_polynomial(n, 6);
        for (int t = 0; t < 20; ++t) {
            double re = -0.49 + 0.98 * rng.unit();
            double im = 1.05 + 0.85 * rng.unit();
            CBall z(192);
            z.re = Real::of_q(mpq_class(re), 192);
            z.im = Real::of_q(mpq_class(im), 192);
            CBall jz = smrel::jfun::j_eval(z, 192);
            CBall zn(192);
            zn.set_mul_si(z, n);
            CBall jn = smrel::jfun::j_eval(zn, 192);
            CBall v = smrel::modpoly::eval_ball(f, jz, jn, 224);
            if (!v.contains_zero())
                return "level " + std::to_string(n) +
                       " value ball misses zero at sample " +
                       std::to_string(t);
        }
    }
    return "";
}

std::string criterion_separation() {
    Rng rng(424242);
    const Prec p = 128;
    CBall s3(p);
    s3.set_sqrt_z(3, p);
    CBall half3(p);
    half3.set_mul_2exp(s3, -1);
    CBall corner(p);
    corner.re = Real::of_q(mpq_class(-1, 2), p);
    corner.im = half3.re;
    corner.rad = half3.rad;
    const double tiny = std::ldexp(1.0, -64);

    int done = 0;
    for (int trial = 0; done < 100; ++trial) {
        if (trial > 3000) return "could not assemble 100 random sets";
        size_t want = 2 + (size_t)rng.below(5); /* 2..6 */
        std::set<smrel::trees::GL2QElement> pool;
        for (int guard = 0; pool.size() < want && guard < 200; ++guard) {
            std::array<mpq_class, 4> m;
            for (int t = 0; t < 4; ++t) {
                long num = (long)rng.below(41) - 20;
                long den = 1 + (long)rng.below(20);
                m[t] = mpq_class(num, den);
                m[t].canonicalize();
            }
            mpq_class det = m[0] * m[3] - m[1] * m[2];
            if (det == 0) continue;
            if (det < 0) {
                std::swap(m[0], m[2]);
                std::swap(m[1], m[3]);
            }
            pool.insert(smrel::trees::canonicalize(m));
        }
        if (pool.size() < 2) continue;
        std::vector<smrel::trees::GL2QElement> gs(pool.begin(), pool.end());

        smrel::trees::SeparationWitness w = smrel::trees::separate(gs);
        if (w.per_index.size() != gs.size() ||
            w.translated.size() != gs.size())
            return "witness arrays have the wrong length";
        int zeros = 0;
        for (bool hit : w.per_index) zeros += hit ? 1 : 0;
        if (zeros != 1)
            return "witness reports " + std::to_string(zeros) +
                   " vanishing indices";
        if (!w.per_index[(size_t)w.survivor])
            return "survivor index is not the vanishing one";

        for (size_t i = 0; i < gs.size(); ++i) {
            mpz_class A = w.translated[i].a * w.gamma[0] +
                          w.translated[i].b * w.gamma[2];
            mpz_class B = w.translated[i].a * w.gamma[1] +
                          w.translated[i].b * w.gamma[3];
            mpz_class C = w.translated[i].d * w.gamma[2];
            mpz_class D = w.translated[i].d * w.gamma[3];
            CBall t(p), num(p), den(p), wb(p);
            t.set_mul_z(corner, A);
            num.set_add(t, CBall::of_z(B, p));
            t.set_mul_z(corner, C);
            den.set_add(t, CBall::of_z(D, p));
            wb.set_div(num, den);
            CBall jv = smrel::jfun::j_eval(wb, p);
            bool numeric_zero = jv.abs_up().to_double() < tiny;
            if (numeric_zero != (bool)w.per_index[i])
                return "numeric evaluation disagrees with the exact test at "
                       "set " +
                       std::to_string(done) + " index " + std::to_string(i);
        }
        ++done;
    }
    return "";
}

long bfs_distance(const smrel::trees::LatticeClass& u,
                  const smrel::trees::LatticeClass& v, long cap) {
    if (u == v) return 0;
    std::set<smrel::trees::LatticeClass> seen{u};
    std::vector<smrel::trees::LatticeClass> frontier{u};
    for (long d = 1; d <= cap; ++d) {
        std::vector<smrel::trees::LatticeClass> next;
        for (const auto& x : frontier)
            for (const auto& y : smrel::trees::neighbors(x)) {
                if (y == v) return d;
                if (seen.insert(y).second) next.push_back(y);
            }
        frontier = std::move(next);
    }
    return -1;
}

std::string criterion_trees() {
    Rng rng(991991);
    const long primes[4] = {2, 3, 5, 7};
    for (long p : primes) {
        const int walk_cap = p <= 3 ? 4 : 3; /* steps in 0..cap-1 */
        for (int it = 0; it < 125; ++it) {
            auto walk = [&](void) {
                smrel::trees::LatticeClass u = smrel::trees::base_class(p);
                int steps = (int)rng.below((unsigned long)walk_cap);
                for (int s = 0; s < steps; ++s) {
                    auto ns = smrel::trees::neighbors(u);
                    u = ns[rng.below(ns.size())];
                }
                return u;
            };
            auto u = walk(), v = walk(), w = walk();
            long duv = smrel::trees::tree_distance(u, v);
            if (smrel::trees::tree_distance(v, u) != duv)
                return "distance not symmetric at p=" + std::to_string(p);
            long dvw = smrel::trees::tree_distance(v, w);
            long duw = smrel::trees::tree_distance(u, w);
            if (duw > duv + dvw)
                return "triangle inequality fails at p=" + std::to_string(p);

            auto ns = smrel::trees::neighbors(u);
            if (ns.size() != (size_t)p + 1)
                return "vertex degree != p+1 at p=" + std::to_string(p);
            const auto& x = ns[rng.below(ns.size())];
            if (smrel::trees::tree_distance(u, x) != 1)
                return "a listed neighbor is not at distance 1 (p=" +
                       std::to_string(p) + ")";
            if (duv == 1 &&
                std::find(ns.begin(), ns.end(), v) == ns.end())
                return "a distance-1 vertex is missing from the neighbor "
                       "list (p=" +
                       std::to_string(p) + ")";

            long b = bfs_distance(u, v, 6);
            if (duv <= 6 && b != duv)
                return "breadth-first distance " + std::to_string(b) +
                       " != formula distance " + std::to_string(duv) +
                       " at p=" + std::to_string(p);
            if (duv > 6 && b != -1)
                return "breadth-first search found a shortcut at p=" +
                       std::to_string(p);
        }
    }
    return "";
}

std::string criterion_heights() {
    using smrel::heights::weil_height;

    /* exact zeros on roots of unity */
    if (!weil_height(AlgebraicNumber::from_rational(mpq_class(1)))
             .is_exact_zero())
        return "height of 1 is not exactly zero";
    if (!weil_height(AlgebraicNumber::from_rational(mpq_class(-1)))
             .is_exact_zero())
        return "height of -1 is not exactly zero";
    {
        CBall box = CBall::of_q_pair(mpq_class(0), mpq_class(1), 128);
        box.add_error(Mag::from_d(0.25));
        AlgebraicNumber i_unit =
            AlgebraicNumber::make(IntPoly({mpz_class(1), mpz_class(0),
                                           mpz_class(1)}),
                                  box);
        if (!weil_height(i_unit).is_exact_zero())
            return "height of the fourth root of unity is not exactly zero";
    }
    {
        CBall box = CBall::of_q_pair(mpq_class(309017, 1000000),
                                     mpq_class(951057, 1000000), 128);
        box.add_error(Mag::from_d(0.2));
        AlgebraicNumber z5 =
            AlgebraicNumber::make(IntPoly::cyclotomic(5), box);
        if (!weil_height(z5).is_exact_zero())
            return "height of the fifth root of unity is not exactly zero";
    }

    /* rationals: log max(|p|, q) */
    Rng rng(20260701);
    const double slack = std::ldexp(1.0, -40);
    for (int t = 0; t < 100; ++t) {
        long num = (long)rng.below(2000000000ULL) - 1000000000L;
        if (num == 0) num = 1;
        long den = 1 + (long)rng.below(999999999ULL);
        mpq_class v(num, den);
        v.canonicalize();
        auto h = weil_height(AlgebraicNumber::from_rational(v), 96);
        double expect = std::log(std::max(std::fabs(v.get_num().get_d()),
                                          v.get_den().get_d()));
        if (std::fabs(h.value.to_double() - expect) >
            h.error.to_double() + slack)
            return "rational height off at " + v.get_str();
    }

    /* doubling under squaring for quadratic integers */
    int ok = 0;
    for (int t = 0; t < 60 && ok < 25; ++t) {
        long bq = (long)rng.below(39) - 19;
        long cq = (long)rng.below(39) - 19;
        if (bq == 0 || cq == 0) continue;
        long disc = bq * bq - 4 * cq;
        if (disc == 0) continue;
        if (disc > 0) {
            long s = (long)std::llround(std::sqrt((double)disc));
            if (s * s == disc || (s + 1) * (s + 1) == disc ||
                (s - 1) * (s - 1) == disc)
                continue;
        }
        IntPoly f({mpz_class(cq), mpz_class(bq), mpz_class(1)});
        mpz_class zb(bq), zc(cq);
        IntPoly g({zc * zc, 2 * zc - zb * zb, mpz_class(1)});

        double re0, im0;
        if (disc < 0) {
            re0 = -bq / 2.0;
            im0 = std::sqrt((double)-disc) / 2.0;
        } else {
            re0 = (-bq + std::sqrt((double)disc)) / 2.0;
            im0 = 0.0;
        }
        CBall boxa = CBall::of_q_pair(mpq_class(re0), mpq_class(im0), 128);
        boxa.add_error(Mag::from_d(0.4));
        CBall boxb = CBall::of_q_pair(mpq_class(re0 * re0 - im0 * im0),
                                      mpq_class(2.0 * re0 * im0), 128);
        boxb.add_error(Mag::from_d(0.4));
        AlgebraicNumber alpha = AlgebraicNumber::make(f, boxa);
        AlgebraicNumber alpha2 = AlgebraicNumber::make(g, boxb);
        auto h1 = weil_height(alpha, 96);
        auto h2 = weil_height(alpha2, 96);
        double diff = std::fabs(h2.value.to_double() -
                                2.0 * h1.value.to_double());
        if (diff > h2.error.to_double() + 2.0 * h1.error.to_double() + slack)
            return "height does not double under squaring for x^2 + " +
                   std::to_string(bq) + " x + " + std::to_string(cq);
        ++ok;
    }
    if (ok < 25)
        return "only " + std::to_string(ok) + " quadratic samples settled";

    /* certified positivity of every nonzero singular modulus in range */
    for (long D : smrel::qforms::enumerate_discriminants(60)) {
        for (const AlgebraicNumber& a : smrel::classpoly::singular_moduli(D)) {
            if (a.is_zero()) continue;
            auto h = weil_height(a, 96);
            if (!(h.value.sign() > 0) ||
                !(h.value.to_double() > h.error.to_double()))
                return "height not certifiably positive at D=" +
                       std::to_string(D);
        }
    }
    return "";
}

std::string criterion_pair_search() {
    smrel::modpoly::PairSearchOutcome o1 =
        smrel::modpoly::modular_pair_search(12, 6);
    smrel::modpoly::PairSearchOutcome o2 =
        smrel::modpoly::modular_pair_search(12, 6);
    std::string t1 = smrel::serialize::canonical_text(
        smrel::serialize::pair_report_json(o1, 12, 6));
    std::string t2 = smrel::serialize::canonical_text(
        smrel::serialize::pair_report_json(o2, 12, 6));
    if (t1 != t2) return "two identical runs produced different reports";
    if (o1.pairs_examined <= 0) return "search examined no candidates";
    if (o1.caveat.empty()) return "missing level-cutoff caveat";
    if (!std::is_sorted(o1.pairs.begin(), o1.pairs.end()))
        return "certificates are not sorted";

    for (const auto& c : o1.pairs) {
        if (c.order1 == 0 || c.order2 == 0 || c.ring % c.order1 != 0 ||
            c.ring % c.order2 != 0)
            return "certificate ring is not a common multiple of the orders";
        if (c.order1 == c.order2 && c.k1 == c.k2)
            return "degenerate certificate (equal roots)";
        if (c.level < 2 || c.level > 6)
            return "certificate level outside the configured range";
        const auto& f = smrel::modpoly::modular_polynomial(c.level, 6);
        IntPoly v = smrel::modpoly::eval_cyclotomic(
            f, c.ring, c.k1 * (c.ring / c.order1), c.k2 * (c.ring / c.order2));
        if (!v.is_zero())
            return "certificate fails exact cyclotomic re-verification "
                   "(orders " +
                   std::to_string(c.order1) + "," + std::to_string(c.order2) +
                   " level " + std::to_string(c.level) + ")";
    }
    return "";
}

}  // namespace

int main() {
    run(1, "rational singular modulus census", 1.0, criterion_census);
    run(2, "documented dependent tuples against the nullspace oracle", 10.0,
        criterion_documented_tuples);
    run(3, "pairwise independence and the product-one sweep", 10.0,
        criterion_pairs);
    run(4, "class polynomial reconstruction and rounding margins", 60.0,
        criterion_class_polys);
    run(5, "modular polynomial routes, symmetry, functional equation", 120.0,
        criterion_modular_polys);
    run(6, "separation witnesses against numeric evaluation", 120.0,
        criterion_separation);
    run(7, "local tree metric, adjacency, breadth-first agreement", 60.0,
        criterion_trees);
    run(8, "height laws: roots of unity, rationals, squares, positivity",
        60.0, criterion_heights);
    run(9, "root-of-unity pair search determinism and re-verification", 300.0,
        criterion_pair_search);

    std::printf("acceptance: %d of 9 criteria passed\n", 9 - g_failures);
    return g_failures == 0 ? 0 : 1;
}
