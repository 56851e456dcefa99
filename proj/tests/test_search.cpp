#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

#include "smrel/classpoly.hpp"
#include "smrel/factored.hpp"
#include "smrel/lattice.hpp"
#include "smrel/relations.hpp"
#include "smrel/search.hpp"
#include "smrel/util.hpp"

using namespace smrel;
using namespace smrel::search;
using algnum::AlgebraicNumber;

namespace {

/* Independent oracle: all minimal multiplicatively dependent subsets of the
 * class-number-one j-values with |D| <= bound, by brute force over subsets.
 * Returns sorted lists of discriminants. */
std::vector<std::vector<long>> brute_minimal_subsets(long bound, int n_max) {
    auto rows = classpoly::rational_singular_moduli(bound);
    std::vector<long> discs;
    std::vector<factored::FactoredRational> frs;
    for (const auto& r : rows) {
        if (r.j == 0) continue;
        discs.push_back(r.D);
        auto f = factored::FactoredRational::factor(mpq_class(r.j));
        REQUIRE(f.has_value());
        frs.push_back(*f);
    }
    size_t m = discs.size();
    std::vector<std::vector<long>> found;
    auto dependent = [&](const std::vector<size_t>& idx) {
        std::vector<factored::FactoredRational> sel;
        for (size_t i : idx) sel.push_back(frs[i]);
        return relations::find_relation_exact(sel).has_value();
    };
    for (size_t mask = 1; mask < ((size_t)1 << m); ++mask) {
        std::vector<size_t> idx;
        for (size_t i = 0; i < m; ++i)
            if (mask & ((size_t)1 << i)) idx.push_back(i);
        if ((int)idx.size() > n_max) continue;
        if (!dependent(idx)) continue;
        bool minimal = true;
        for (size_t skip = 0; skip < idx.size() && minimal; ++skip) {
            std::vector<size_t> sub;
            for (size_t i = 0; i < idx.size(); ++i)
                if (i != skip) sub.push_back(idx[i]);
            if (!sub.empty() && dependent(sub)) minimal = false;
        }
        if (!minimal) continue;
        std::vector<long> ds;
        for (size_t i : idx) ds.push_back(discs[i]);
        std::sort(ds.begin(), ds.end());
        found.push_back(ds);
    }
    std::sort(found.begin(), found.end());
    found.erase(std::unique(found.begin(), found.end()), found.end());
    return found;
}

std::vector<long> finding_discs(const TupleFinding& f) {
    std::vector<long> ds;
    for (const auto& m : f.members) ds.push_back(m.disc);
    std::sort(ds.begin(), ds.end());
    return ds;
}

}  // namespace

TEST_CASE("rational search matches the brute-force subset oracle") {
    SearchOptions opt;
    opt.delta_max = 200;
    opt.n_max = 5;
    opt.rational_only = true;
    SearchReport rep = singular_dependent_search(opt);
    CHECK(rep.kind == "singular-dependent");

    std::vector<std::vector<long>> got;
    for (const auto& f : rep.findings) got.push_back(finding_discs(f));
    std::sort(got.begin(), got.end());

    auto want = brute_minimal_subsets(200, 5);
    // the orchestrated search skips supersets of found tuples, so every
    // brute-force minimal subset must appear, and nothing else
    CHECK(got == want);
}

TEST_CASE("search findings include the documented tuples with exact exponents") {
    SearchOptions opt;
    opt.delta_max = 200;
    opt.n_max = 5;
    opt.rational_only = true;
    SearchReport rep = singular_dependent_search(opt);

    auto find_by_discs = [&](std::vector<long> ds) -> const TupleFinding* {
        std::sort(ds.begin(), ds.end());
        for (const auto& f : rep.findings)
            if (finding_discs(f) == ds) return &f;
        return nullptr;
    };

    const TupleFinding* three = find_by_discs({-11, -19, -4});
    REQUIRE(three != nullptr);
    CHECK(three->cert.mode == "exact");
    CHECK(three->cert.minimal);
    CHECK(three->complexity.delta == 19);

    const TupleFinding* four = find_by_discs({-12, -27, -7, -8});
    REQUIRE(four != nullptr);
    CHECK(four->complexity.delta == 27);

    const TupleFinding* five = find_by_discs({-67, -11, -16, -4, -27});
    REQUIRE(five != nullptr);
    CHECK(five->complexity.delta == 67);

    // cross-check the five-tuple's exponents against the kernel oracle:
    // members are ordered by |D| ascending inside the finding
    std::vector<long> order;
    for (const auto& m : five->members) order.push_back(m.disc);
    std::vector<long> expect_order = {-4, -11, -16, -27, -67};
    REQUIRE(order == expect_order);
    // primitive kernel vector for (j(-4), j(-11), j(-16), j(-27), j(-67))
    // is +-(5, 1, -15, -15, 15); the certified relation is its double
    const auto& g = five->cert.kernel_generator;
    REQUIRE(g.size() == 5);
    mpz_class lead = g[0];
    REQUIRE(lead != 0);
    int s = lead > 0 ? 1 : -1;
    CHECK(g[0] == s * 5);
    CHECK(g[1] == s * 1);
    CHECK(g[2] == s * -15);
    CHECK(g[3] == s * -15);
    CHECK(g[4] == s * 15);
    CHECK(five->cert.kernel_sign == -1);
    const auto& e = five->cert.exponents;
    REQUIRE(e.size() == 5);
    CHECK(e[0] % 2 == 0);
    CHECK((e[0] == 2 * g[0] || e[0] == -2 * g[0]));
}

TEST_CASE("no dependent pair exists among the rational values") {
    SearchOptions opt;
    opt.delta_max = 200;
    opt.n_max = 2;
    opt.rational_only = true;
    SearchReport rep = singular_dependent_search(opt);
    CHECK(rep.findings.empty());
    CHECK(rep.exclusions > 0);
}

TEST_CASE("search parameter validation") {
    SearchOptions opt;
    opt.n_max = 9;
    CHECK_THROWS_AS(singular_dependent_search(opt), Error);
    SearchOptions opt2;
    opt2.delta_max = 2;
    CHECK_THROWS_AS(singular_dependent_search(opt2), Error);
}

TEST_CASE("pair product search is empty and counts every pair") {
    SearchReport rep = pair_product_check(200);
    CHECK(rep.kind == "pair-product");
    CHECK(rep.findings.empty());
    // the unit filter rejects every discriminant pair (i <= j)
    unsigned long nd = qforms::enumerate_discriminants(200).size();
    CHECK(rep.exclusions == nd * (nd + 1) / 2);
    CHECK(!rep.caveats.empty());
}

TEST_CASE("recognition of singular moduli") {
    auto hit = recognize_singular_modulus(AlgebraicNumber::from_integer(287496), 500);
    REQUIRE(hit.has_value());
    CHECK(*hit == -16);
    auto miss = recognize_singular_modulus(AlgebraicNumber::from_integer(7), 500);
    CHECK(!miss.has_value());
    auto zero = recognize_singular_modulus(AlgebraicNumber::from_integer(0), 500);
    REQUIRE(zero.has_value());
    CHECK(*zero == -3);
    // an irrational conjugate is recognized through its class polynomial
    auto ms = classpoly::singular_moduli(-15);
    auto conj = recognize_singular_modulus(ms[0], 100);
    REQUIRE(conj.has_value());
    CHECK(*conj == -15);
}

TEST_CASE("tuple complexity is the max of the discriminant magnitudes") {
    auto ms3 = classpoly::singular_moduli(-3);
    ComplexityReport r1 = complexity_of_tuple({ms3[0]});
    CHECK(r1.delta == 3);
    CHECK(r1.kind == ReportKind::tuple_6_2);

    std::vector<AlgebraicNumber> pair = {AlgebraicNumber::from_integer(1728),
                                         AlgebraicNumber::from_integer(-32768)};
    ComplexityReport r2 = complexity_of_tuple(pair);
    CHECK(r2.delta == 11);
    REQUIRE(r2.components.size() == 2);
    mpz_class mx = 0;
    for (const auto& [name, v] : r2.components) mx = std::max(mx, v);
    CHECK(mx == r2.delta);

    CHECK_THROWS_AS(
        complexity_of_tuple({AlgebraicNumber::from_integer(7)}, 300), Error);
}

TEST_CASE("modular complexity of the diagonal pair") {
    AlgebraicNumber x = AlgebraicNumber::from_integer(5);
    auto rep = modular_dependent_complexity(x, x, {});
    REQUIRE(rep.has_value());
    CHECK(rep->delta == 1);
    CHECK(rep->kind == ReportKind::pair_8_6);
}

TEST_CASE("modular complexity none for the independent isogenous pair") {
    AlgebraicNumber a = AlgebraicNumber::from_integer(1728);
    AlgebraicNumber b = AlgebraicNumber::from_integer(287496);
    auto rep = modular_dependent_complexity(a, b, {});
    CHECK(!rep.has_value());
}

TEST_CASE("modular complexity on a root-of-unity pair") {
    // x = -1 (order 2), y = -1: N = 1 (equal), and (x^1 y^-1)^1 = 1
    AlgebraicNumber m1 = AlgebraicNumber::from_integer(-1);
    auto rep = modular_dependent_complexity(m1, m1, {});
    REQUIRE(rep.has_value());
    CHECK(rep->delta == 1);
}

TEST_CASE("modular complexity mixed unity and rational") {
    // x = -1 (root of unity), y = 2 (not); dependent requires b = 0:
    // ((-1)^a)^c = 1 with a = 1, c = 2; but Phi_N(-1, 2) must vanish for
    // some N <= budget, which does not happen at small levels
    AlgebraicNumber m1 = AlgebraicNumber::from_integer(-1);
    AlgebraicNumber two = AlgebraicNumber::from_integer(2);
    PairBudgets small;
    small.n_max = 4;
    auto rep = modular_dependent_complexity(m1, two, small);
    CHECK(!rep.has_value());
}

TEST_CASE("modular complexity rejects zero") {
    AlgebraicNumber z = AlgebraicNumber::from_integer(0);
    AlgebraicNumber one = AlgebraicNumber::from_integer(1);
    CHECK_THROWS_AS(modular_dependent_complexity(z, one, {}), Error);
}

TEST_CASE("dependent pair joined by an isogeny gets a finite complexity") {
    // x = 4, y = 8: 4^3 = 8^2, but Phi_N(4, 8) never vanishes at small N,
    // so expect none; then x = y = 8000 (2-isogenous to itself, diagonal)
    AlgebraicNumber e = AlgebraicNumber::from_integer(8000);
    auto rep = modular_dependent_complexity(e, e, {});
    REQUIRE(rep.has_value());
    CHECK(rep->delta == 1);  // N=1 diagonal beats the level-2 witness
}

TEST_CASE("triple 8.2 negative and domain cases") {
    auto none = verify_triple_8_2(AlgebraicNumber::from_integer(2),
                                  AlgebraicNumber::from_integer(3),
                                  AlgebraicNumber::from_integer(5), {});
    CHECK(!none.has_value());

    CHECK_THROWS_AS(verify_triple_8_2(AlgebraicNumber::from_integer(1728),
                                      AlgebraicNumber::from_integer(287496),
                                      AlgebraicNumber::from_integer(1728), {}),
                    Error);
    CHECK_THROWS_AS(verify_triple_8_2(AlgebraicNumber::from_integer(0),
                                      AlgebraicNumber::from_integer(2),
                                      AlgebraicNumber::from_integer(3), {}),
                    Error);
}

TEST_CASE("triple 8.4 recognition path") {
    // x1 = 1728 is singular (D = -4); x3 = -1 has order 2; x2 = 8000 is
    // 2-isogenous to... itself, not to -1; dependence between 1728 and 8000
    // fails at small exponents, so the verdict is none
    auto none = verify_triple_8_4(AlgebraicNumber::from_integer(1728),
                                  AlgebraicNumber::from_integer(8000),
                                  AlgebraicNumber::from_integer(-1), {});
    CHECK(!none.has_value());

    // x1 not singular within budget -> none
    TripleBudgets tb;
    tb.disc_budget = 100;
    auto miss = verify_triple_8_4(AlgebraicNumber::from_integer(7),
                                  AlgebraicNumber::from_integer(8000),
                                  AlgebraicNumber::from_integer(-1), tb);
    CHECK(!miss.has_value());
}

TEST_CASE("report kind names are stable") {
    CHECK(std::string(report_kind_name(ReportKind::tuple_6_2)) == "tuple_6_2");
    CHECK(std::string(report_kind_name(ReportKind::pair_8_6)) == "pair_8_6");
    CHECK(std::string(report_kind_name(ReportKind::triple_8_2)) == "triple_8_2");
    CHECK(std::string(report_kind_name(ReportKind::triple_8_4)) == "triple_8_4");
}

TEST_CASE("integer kernel basics") {
    using lattice::ZMat;
    // rows are the exponent vectors of 4 = 2^2 and 8 = 2^3 over the prime 2
    ZMat m = {{mpz_class(2)}, {mpz_class(3)}};
    auto ker = lattice::kernel(m);
    REQUIRE(ker.size() == 1);
    const auto& v = ker[0];
    REQUIRE(v.size() == 2);
    CHECK(v[0] * 2 + v[1] * 3 == 0);
    bool dir_ok = (v[0] == 3 && v[1] == -2) || (v[0] == -3 && v[1] == 2);
    CHECK(dir_ok);

    // three independent members have a trivial kernel
    ZMat ind = {{mpz_class(1), mpz_class(0)},
                {mpz_class(0), mpz_class(1)},
                {mpz_class(1), mpz_class(1)}};
    CHECK(lattice::kernel(ind).size() == 1);  // (1,1,-1) direction
    ZMat ind2 = {{mpz_class(1), mpz_class(0)}, {mpz_class(0), mpz_class(1)}};
    CHECK(lattice::kernel(ind2).empty());
}
