#include "smrel/search.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>

#include "smrel/classpoly.hpp"
#include "smrel/factored.hpp"
#include "smrel/heights.hpp"
#include "smrel/lattice.hpp"
#include "smrel/modpoly.hpp"
#include "smrel/qforms.hpp"
#include "smrel/util.hpp"

namespace smrel::search {

namespace {

using factored::FactoredRational;
using lattice::ZMat;
using lattice::ZVec;

mpz_class zmax(const mpz_class& a, const mpz_class& b) { return a > b ? a : b; }

/* kernel basis rows of the prime-exponent matrix (signs ignored) */
ZMat exponent_kernel(const std::vector<FactoredRational>& fr) {
    std::vector<long> primes = factored::prime_support(fr);
    ZMat a(fr.size(), ZVec(primes.size(), 0));
    for (size_t i = 0; i < fr.size(); ++i)
        for (size_t j = 0; j < primes.size(); ++j) {
            auto it = fr[i].exps.find(primes[j]);
            if (it != fr[i].exps.end()) a[i][j] = it->second;
        }
    if (primes.empty()) {
        /* all entries are +-1: every exponent vector is a relation */
        ZMat id(fr.size(), ZVec(fr.size(), 0));
        for (size_t i = 0; i < fr.size(); ++i) id[i][i] = 1;
        return id;
    }
    return lattice::kernel(a);
}

bool kernel_nontrivial(const std::vector<FactoredRational>& fr) {
    return !exponent_kernel(fr).empty();
}

/* exact minimal-dependence test on factored rationals: dependent, and
 * every proper subset independent */
bool minimal_dependent_exact(const std::vector<FactoredRational>& fr) {
    if (!kernel_nontrivial(fr)) return false;
    if (fr.size() == 1) return true;  /* the value itself is +-1 */
    for (size_t drop = 0; drop < fr.size(); ++drop) {
        std::vector<FactoredRational> sub;
        for (size_t i = 0; i < fr.size(); ++i)
            if (i != drop) sub.push_back(fr[i]);
        if (kernel_nontrivial(sub)) return false;
    }
    return true;
}

struct Entry {
    long disc = 0;
    int conj = 0;
    AlgebraicNumber alg;
    bool rational = false;
    mpz_class value;
    std::optional<FactoredRational> fr;
};

std::vector<Entry> enumerate_values(long delta_max, bool rational_only) {
    std::vector<Entry> out;
    for (long D : qforms::enumerate_discriminants(delta_max)) {
        if (D == -3) continue;  /* the zero value cannot join a relation */
        long h = qforms::class_number(D);
        if (rational_only && h != 1) continue;
        if (h == 1) {
            IntPoly hp = classpoly::hilbert_class_poly(D);
            Entry e;
            e.disc = D;
            e.conj = 0;
            e.rational = true;
            e.value = -hp[0];
            e.alg = AlgebraicNumber::from_integer(e.value);
            e.fr = FactoredRational::factor(mpq_class(e.value));
            out.push_back(std::move(e));
            continue;
        }
        std::vector<AlgebraicNumber> conj = classpoly::singular_moduli(D);
        for (size_t c = 0; c < conj.size(); ++c) {
            Entry e;
            e.disc = D;
            e.conj = (int)c;
            e.alg = conj[c];
            out.push_back(std::move(e));
        }
    }
    return out;
}

ComplexityReport tuple_complexity_from_discs(const std::vector<long>& discs) {
    ComplexityReport r;
    r.kind = ReportKind::tuple_6_2;
    r.delta = 0;
    for (size_t i = 0; i < discs.size(); ++i) {
        mpz_class ad = discs[i] < 0 ? -discs[i] : discs[i];
        r.components.emplace_back("|D_" + std::to_string(i + 1) + "|", ad);
        r.delta = zmax(r.delta, ad);
    }
    return r;
}

/* deterministic size-m index combinations in lexicographic order */
bool next_combination(std::vector<size_t>& c, size_t n) {
    size_t m = c.size();
    for (size_t i = m; i-- > 0;) {
        if (c[i] + (m - i) < n) {
            ++c[i];
            for (size_t j = i + 1; j < m; ++j) c[j] = c[j - 1] + 1;
            return true;
        }
    }
    return false;
}

bool contains_known_dependent(const std::vector<size_t>& subset,
                              const std::vector<std::vector<size_t>>& found) {
    for (const auto& f : found) {
        if (f.size() >= subset.size()) continue;
        if (std::includes(subset.begin(), subset.end(), f.begin(), f.end()))
            return true;
    }
    return false;
}

/* sign of prod_i value_i^{e_i} for factored rationals (the exponent-kernel
 * rows land on +-1; this resolves which) */
int product_sign(const std::vector<FactoredRational>& fr, const ZVec& e) {
    int s = 1;
    for (size_t i = 0; i < fr.size(); ++i)
        if (fr[i].sign < 0 && mpz_odd_p(e[i].get_mpz_t())) s = -s;
    return s;
}

/* ---- shared dependence test: does x^a y^b = 1 have a solution? ---- */

/* returns certified dependent / certified independent-within-box; throws
 * indeterminate when neither is available */
bool pair_dependent(const AlgebraicNumber& x, const AlgebraicNumber& y,
                    long exp_max, Prec max_precision) {
    if (relations::is_root_of_unity(x) || relations::is_root_of_unity(y))
        return true;
    if (x.is_rational() && y.is_rational()) {
        auto fx = FactoredRational::factor(x.rational_value());
        auto fy = FactoredRational::factor(y.rational_value());
        if (fx && fy) return kernel_nontrivial({*fx, *fy});
    }
    relations::Options opt;
    opt.max_precision = max_precision;
    return relations::find_relation({x, y}, mpz_class(exp_max), opt)
        .has_value();
}

}  // namespace

const char* report_kind_name(ReportKind k) {
    switch (k) {
        case ReportKind::tuple_6_2: return "tuple_6_2";
        case ReportKind::pair_8_6: return "pair_8_6";
        case ReportKind::triple_8_2: return "triple_8_2";
        case ReportKind::triple_8_4: return "triple_8_4";
    }
    fail_internal("unknown report kind");
}

SearchReport singular_dependent_search(const SearchOptions& opt) {
    if (opt.n_max < 1 || opt.n_max > 8)
        fail_domain("tuple size bound must be between 1 and 8");
    if (opt.delta_max < 3) fail_domain("complexity bound must be at least 3");

    SearchReport rep;
    rep.kind = "singular-dependent";
    rep.parameters = {
        {"delta_max", std::to_string(opt.delta_max)},
        {"n_max", std::to_string(opt.n_max)},
        {"rational_only", opt.rational_only ? "true" : "false"},
        {"budget_candidates", std::to_string(opt.budget_candidates)},
        {"exponent_cap", std::to_string(opt.exponent_cap)},
    };

    std::vector<Entry> vals = enumerate_values(opt.delta_max, opt.rational_only);
    bool all_rational = true;
    for (const Entry& e : vals)
        if (!(e.rational && e.fr)) all_rational = false;
    if (!all_rational)
        rep.caveats.push_back(
            "non-rational values are tested inside a heuristic exponent box "
            "(cap " + std::to_string(opt.exponent_cap) +
            "); only results within that box are certified");

    unsigned long tests = 0, unresolved = 0;
    bool budget_hit = false;
    std::vector<std::vector<size_t>> found_sets;
    size_t n = vals.size();

    for (long m = 1; m <= opt.n_max && !budget_hit; ++m) {
        if ((size_t)m > n) break;
        std::vector<size_t> c(m);
        std::iota(c.begin(), c.end(), (size_t)0);
        do {
            if (tests >= opt.budget_candidates) { budget_hit = true; break; }
            if (contains_known_dependent(c, found_sets)) {
                ++rep.exclusions;
                continue;
            }
            bool rational_subset = true;
            for (size_t i : c)
                if (!vals[i].fr) rational_subset = false;

            if (rational_subset) {
                ++tests;
                std::vector<FactoredRational> fr;
                for (size_t i : c) fr.push_back(*vals[i].fr);
                if (!minimal_dependent_exact(fr)) {
                    ++rep.exclusions;
                    continue;
                }
                auto cert = relations::find_relation_exact(fr);
                if (!cert) fail_internal("dependence lost between passes");
                cert->minimal = true;
                TupleFinding f;
                for (size_t i : c) {
                    TupleMember tm;
                    tm.disc = vals[i].disc;
                    tm.conj = vals[i].conj;
                    tm.rational = true;
                    tm.value = vals[i].value;
                    f.members.push_back(std::move(tm));
                }
                std::vector<long> discs;
                for (size_t i : c) discs.push_back(vals[i].disc);
                f.cert = std::move(*cert);
                f.complexity = tuple_complexity_from_discs(discs);
                rep.findings.push_back(std::move(f));
                found_sets.push_back(c);
            } else {
                ++tests;
                std::vector<AlgebraicNumber> algs;
                std::vector<double> hts;
                long dprod = 1;
                for (size_t i : c) {
                    algs.push_back(vals[i].alg);
                    hts.push_back(heights::weil_height(vals[i].alg).upper());
                    dprod = std::min<long>(dprod * vals[i].alg.degree(), 1 << 20);
                }
                heights::SearchRadius rad =
                    heights::exponent_search_radius((long)c.size(), dprod, hts);
                mpz_class bound = rad.radius;
                if (bound > opt.exponent_cap) bound = opt.exponent_cap;
                relations::Options ro;
                ro.max_precision = opt.max_precision;
                try {
                    if (!relations::is_minimal_dependent(algs, bound, ro)) {
                        ++rep.exclusions;
                        continue;
                    }
                    auto cert = relations::find_relation(algs, bound, ro);
                    if (!cert) fail_internal("dependence lost between passes");
                    cert->minimal = true;
                    TupleFinding f;
                    for (size_t i : c) {
                        TupleMember tm;
                        tm.disc = vals[i].disc;
                        tm.conj = vals[i].conj;
                        tm.rational = vals[i].rational;
                        tm.value = vals[i].value;
                        f.members.push_back(std::move(tm));
                    }
                    std::vector<long> discs;
                    for (size_t i : c) discs.push_back(vals[i].disc);
                    f.cert = std::move(*cert);
                    f.complexity = tuple_complexity_from_discs(discs);
                    rep.findings.push_back(std::move(f));
                    found_sets.push_back(c);
                } catch (const Error& e) {
                    if (e.kind() != ErrorKind::indeterminate &&
                        e.kind() != ErrorKind::precision_exhausted)
                        throw;
                    ++unresolved;
                }
            }
        } while (next_combination(c, n));
    }

    if (budget_hit)
        rep.caveats.push_back(
            "candidate budget exhausted after " + std::to_string(tests) +
            " dependence tests; the report covers only the subsets walked "
            "so far (deterministic order: size ascending, then "
            "lexicographic)");
    if (unresolved > 0)
        rep.caveats.push_back(
            std::to_string(unresolved) +
            " candidate subsets were indeterminate and are claimed neither "
            "dependent nor independent");
    return rep;
}

SearchReport pair_product_check(long delta_max) {
    if (delta_max < 3) fail_domain("complexity bound must be at least 3");
    SearchReport rep;
    rep.kind = "pair-product";
    rep.parameters = {{"delta_max", std::to_string(delta_max)}};

    std::vector<long> discs = qforms::enumerate_discriminants(delta_max);
    std::vector<bool> unit_ok(discs.size(), false);
    for (size_t i = 0; i < discs.size(); ++i) {
        IntPoly hp = classpoly::hilbert_class_poly(discs[i]);
        mpz_class c0 = hp[0];
        unit_ok[i] = (c0 == 1 || c0 == -1);
    }

    for (size_t i = 0; i < discs.size(); ++i)
        for (size_t j = i; j < discs.size(); ++j) {
            if (!unit_ok[i] || !unit_ok[j]) {
                /* sigma1 * sigma2 = 1 forces both to be algebraic units,
                 * i.e. |class poly constant| = 1 on both sides */
                ++rep.exclusions;
                continue;
            }
            bool hit = false;
            std::vector<AlgebraicNumber> a = classpoly::singular_moduli(discs[i]);
            std::vector<AlgebraicNumber> b = classpoly::singular_moduli(discs[j]);
            for (const auto& s1 : a)
                for (const auto& s2 : b) {
                    relations::Verify v;
                    try {
                        v = relations::verify_relation({s1, s2}, {1, 1});
                    } catch (const Error& e) {
                        if (e.kind() != ErrorKind::indeterminate) throw;
                        rep.caveats.push_back(
                            "indeterminate pair at discriminants " +
                            std::to_string(discs[i]) + ", " +
                            std::to_string(discs[j]));
                        continue;
                    }
                    if (v == relations::Verify::refuted) continue;
                    hit = true;
                    TupleFinding f;
                    TupleMember m1, m2;
                    m1.disc = discs[i];
                    m2.disc = discs[j];
                    f.members = {m1, m2};
                    f.cert.exponents = {1, 1};
                    f.cert.mode = v == relations::Verify::exact
                                      ? "exact"
                                      : "certified_numeric";
                    f.complexity =
                        tuple_complexity_from_discs({discs[i], discs[j]});
                    rep.findings.push_back(std::move(f));
                    rep.caveats.push_back(
                        "UNEXPECTED: certified pair with product 1 at "
                        "discriminants " + std::to_string(discs[i]) + ", " +
                        std::to_string(discs[j]));
                }
            if (!hit) ++rep.exclusions;
        }

    rep.caveats.push_back("searched all discriminants with 3 <= |D| <= " +
                          std::to_string(delta_max) +
                          "; nothing outside this range is claimed");
    return rep;
}

std::optional<long> recognize_singular_modulus(const AlgebraicNumber& a,
                                               long disc_budget) {
    if (disc_budget < 3) fail_domain("discriminant budget must be at least 3");
    long d = a.degree();
    for (long D : qforms::enumerate_discriminants(disc_budget)) {
        if (qforms::class_number(D) != d) continue;
        if (classpoly::hilbert_class_poly(D) == a.min_poly()) return D;
    }
    return std::nullopt;
}

ComplexityReport complexity_of_tuple(const std::vector<AlgebraicNumber>& sigmas,
                                     long disc_budget) {
    if (sigmas.empty()) fail_domain("tuple must be nonempty");
    std::vector<long> discs;
    for (const AlgebraicNumber& s : sigmas) {
        std::optional<long> D = recognize_singular_modulus(s, disc_budget);
        if (!D)
            fail_budget("value not recognized as a singular modulus within "
                        "|D| <= " + std::to_string(disc_budget));
        discs.push_back(*D);
    }
    return tuple_complexity_from_discs(discs);
}

std::optional<ComplexityReport> modular_dependent_complexity(
    const AlgebraicNumber& x, const AlgebraicNumber& y,
    const PairBudgets& budgets) {
    if (x.is_zero() || y.is_zero()) fail_domain("entries must be nonzero");

    std::optional<long> N =
        modpoly::is_isogenous(x, y, budgets.n_max, budgets.max_precision);
    if (!N) return std::nullopt;

    auto u1 = relations::root_of_unity_decomposition(x);
    auto u2 = relations::root_of_unity_decomposition(y);

    long best_a = 0, best_b = 0;
    mpz_class best_c = 0;
    bool have = false;

    if (u1 && u2) {
        /* both are roots of unity: minimize max(|a|, |b|, order) directly */
        long m1 = (long)u1->first, k1 = (long)u1->second;
        long m2 = (long)u2->first, k2 = (long)u2->second;
        long L = std::lcm(m1, m2);
        mpz_class best = 0;
        for (long t = 1; t <= budgets.exp_max; ++t) {
            if (have && best <= t) break;
            for (long a = -t; a <= t; ++a)
                for (long b = -t; b <= t; ++b) {
                    if (std::max(std::labs(a), std::labs(b)) != t) continue;
                    if (std::gcd(a, b) != 1) continue;
                    long e = ((L / m1) * k1 % L * (a % L) % L +
                              (L / m2) * k2 % L * (b % L) % L) % L;
                    e = ((e % L) + L) % L;
                    long c = L / std::gcd(e, L);
                    mpz_class cand = std::max<long>(t, c);
                    if (!have || cand < best) {
                        have = true;
                        best = cand;
                        best_a = a;
                        best_b = b;
                        best_c = c;
                    }
                }
        }
    } else if (u1 && !u2) {
        /* y is not a root of unity, so b must vanish and |a| = 1 */
        have = true;
        best_a = 1;
        best_b = 0;
        best_c = (long)u1->first;
    } else if (!u1 && u2) {
        have = true;
        best_a = 0;
        best_b = 1;
        best_c = (long)u2->first;
    } else {
        /* neither a root of unity: the relation lattice has rank <= 1 */
        std::optional<ZVec> gen;
        if (x.is_rational() && y.is_rational()) {
            auto fx = FactoredRational::factor(x.rational_value());
            auto fy = FactoredRational::factor(y.rational_value());
            if (fx && fy) {
                ZMat ker = exponent_kernel({*fx, *fy});
                if (ker.empty()) return std::nullopt;
                gen = ker[0];
                int s = product_sign({*fx, *fy}, *gen);
                mpz_class g = gcd((*gen)[0], (*gen)[1]);
                if (g > 1) { (*gen)[0] /= g; (*gen)[1] /= g; }
                have = true;
                if (!(*gen)[0].fits_slong_p() || !(*gen)[1].fits_slong_p())
                    fail_budget("relation exponents exceed the machine range");
                best_a = (long)(*gen)[0].get_si();
                best_b = (long)(*gen)[1].get_si();
                best_c = (s > 0) ? 1 : 2;
            }
        }
        if (!have) {
            relations::Options ro;
            ro.max_precision = budgets.max_precision;
            mpz_class box = mpz_class(budgets.exp_max) * budgets.exp_max;
            auto cert = relations::find_relation({x, y}, box, ro);
            if (!cert) return std::nullopt;
            mpz_class e1 = cert->exponents[0], e2 = cert->exponents[1];
            mpz_class g = gcd(e1, e2);
            mpz_class a = e1 / g, b = e2 / g;
            /* minimal c divides g: walk its divisors in ascending order */
            if (!g.fits_slong_p())
                fail_budget("relation exponents exceed the machine range");
            mpz_class c = g;
            for (long dv : divisors_of((long)g.get_si())) {
                if (dv == (long)g.get_si()) break;
                relations::Verify v;
                try {
                    v = relations::verify_relation({x, y}, {a * dv, b * dv}, ro);
                } catch (const Error& err) {
                    if (err.kind() != ErrorKind::indeterminate) throw;
                    continue;
                }
                if (v != relations::Verify::refuted) { c = dv; break; }
            }
            if (!a.fits_slong_p() || !b.fits_slong_p())
                fail_budget("relation exponents exceed the machine range");
            have = true;
            best_a = (long)a.get_si();
            best_b = (long)b.get_si();
            best_c = c;
        }
    }

    if (!have) return std::nullopt;
    /* deterministic sign: first nonzero exponent positive */
    if (best_a < 0 || (best_a == 0 && best_b < 0)) {
        best_a = -best_a;
        best_b = -best_b;
    }
    ComplexityReport r;
    r.kind = ReportKind::pair_8_6;
    r.components = {
        {"N", mpz_class(*N)},
        {"a", mpz_class(best_a)},
        {"b", mpz_class(best_b)},
        {"c", best_c},
    };
    r.delta = zmax(zmax(mpz_class(*N), mpz_class(std::labs(best_a))),
                   zmax(mpz_class(std::labs(best_b)), best_c));
    return r;
}

std::optional<ComplexityReport> verify_triple_8_2(
    const AlgebraicNumber& x1, const AlgebraicNumber& x2,
    const AlgebraicNumber& x3, const TripleBudgets& budgets) {
    if (x1.is_zero() || x2.is_zero() || x3.is_zero())
        fail_domain("entries must be nonzero");
    if (x1.same_value(x2) || x1.same_value(x3) || x2.same_value(x3))
        fail_domain("entries must be distinct");

    auto u3 = relations::root_of_unity_decomposition(x3);
    if (!u3) return std::nullopt;
    mpz_class M((long)u3->first);

    if (!pair_dependent(x1, x2, budgets.exp_max, budgets.max_precision))
        return std::nullopt;

    std::optional<long> n1 =
        modpoly::is_isogenous(x1, x3, budgets.n_max, budgets.max_precision);
    if (!n1) return std::nullopt;
    std::optional<long> n2 =
        modpoly::is_isogenous(x2, x3, budgets.n_max, budgets.max_precision);
    if (!n2) return std::nullopt;
    std::optional<long> n12 =
        modpoly::is_isogenous(x1, x2, budgets.n_max, budgets.max_precision);
    if (!n12) return std::nullopt;  /* pairwise isogeny is required */

    ComplexityReport r;
    r.kind = ReportKind::triple_8_2;
    r.components = {
        {"M", M},
        {"N1", mpz_class(*n1)},
        {"N2", mpz_class(*n2)},
    };
    r.delta = zmax(M, zmax(mpz_class(*n1), mpz_class(*n2)));
    return r;
}

std::optional<ComplexityReport> verify_triple_8_4(
    const AlgebraicNumber& x1, const AlgebraicNumber& x2,
    const AlgebraicNumber& x3, const TripleBudgets& budgets) {
    if (x1.is_zero() || x2.is_zero() || x3.is_zero())
        fail_domain("entries must be nonzero");
    if (x1.same_value(x2) || x1.same_value(x3) || x2.same_value(x3))
        fail_domain("entries must be distinct");

    std::optional<long> D = recognize_singular_modulus(x1, budgets.disc_budget);
    if (!D) return std::nullopt;

    auto u3 = relations::root_of_unity_decomposition(x3);
    if (!u3) return std::nullopt;
    mpz_class M((long)u3->first);

    std::optional<long> N =
        modpoly::is_isogenous(x2, x3, budgets.n_max, budgets.max_precision);
    if (!N) return std::nullopt;

    if (!pair_dependent(x1, x2, budgets.exp_max, budgets.max_precision))
        return std::nullopt;

    ComplexityReport r;
    r.kind = ReportKind::triple_8_4;
    mpz_class aD(*D < 0 ? -*D : *D);
    r.components = {
        {"|D|", aD},
        {"M", M},
        {"N", mpz_class(*N)},
    };
    r.delta = zmax(aD, zmax(M, mpz_class(*N)));
    return r;
}

}  // namespace smrel::search
