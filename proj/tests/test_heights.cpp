#include <doctest.h>

#include <cmath>
#include <vector>

#include "smrel/classpoly.hpp"
#include "smrel/heights.hpp"
#include "smrel/intpoly.hpp"
#include "smrel/relations.hpp"
#include "smrel/util.hpp"

using namespace smrel;
using namespace smrel::heights;
using algnum::AlgebraicNumber;

namespace {

IntPoly poly(std::initializer_list<long> cs) {
    std::vector<mpz_class> v;
    for (long c : cs) v.emplace_back(c);
    return IntPoly(std::move(v));
}

CBall box_at(double re, double im, double rad, Prec p = 128) {
    CBall b(p);
    mpfr_set_d(b.re.get(), re, MPFR_RNDN);
    mpfr_set_d(b.im.get(), im, MPFR_RNDN);
    b.rad = Mag::from_d(rad);
    return b;
}

}  // namespace

TEST_CASE("height of roots of unity is exactly zero") {
    CHECK(weil_height(AlgebraicNumber::from_integer(1)).is_exact_zero());
    CHECK(weil_height(AlgebraicNumber::from_integer(-1)).is_exact_zero());
    AlgebraicNumber z5 = AlgebraicNumber::make(
        IntPoly::cyclotomic(5), box_at(std::cos(1.2566370614), std::sin(1.2566370614), 0.05));
    CHECK(weil_height(z5).is_exact_zero());
    AlgebraicNumber i_unit = AlgebraicNumber::make(poly({1, 0, 1}), box_at(0.0, 1.0, 0.1));
    CHECK(weil_height(i_unit).is_exact_zero());
}

TEST_CASE("height of rationals is log max(|p|, |q|)") {
    Rng rng(123);
    for (int t = 0; t < 100; ++t) {
        long p = rng.range(-1000, 1000);
        long q = rng.range(1, 1000);
        if (p == 0) p = 1;
        mpq_class r(p, q);
        r.canonicalize();
        AlgebraicNumber a = AlgebraicNumber::from_rational(r);
        HeightValue h = weil_height(a, 96);
        double expect = std::log(std::max(std::fabs(mpq_class(r).get_num().get_d()),
                                          std::fabs(mpq_class(r).get_den().get_d())));
        CAPTURE(p);
        CAPTURE(q);
        CHECK(std::fabs(h.value.to_double() - expect) <
              h.error.to_double() + std::ldexp(1.0, -40));
    }
}

TEST_CASE("height of 2 is log 2") {
    HeightValue h = weil_height(AlgebraicNumber::from_integer(2), 128);
    CHECK(std::fabs(h.value.to_double() - std::log(2.0)) < 1e-30);
    CHECK(h.error.to_double() < std::ldexp(1.0, -120));
}

TEST_CASE("golden ratio height is half the log") {
    AlgebraicNumber phi = AlgebraicNumber::make(poly({-1, -1, 1}), box_at(1.618, 0.0, 0.01));
    HeightValue h = weil_height(phi, 96);
    double expect = 0.5 * std::log((1.0 + std::sqrt(5.0)) / 2.0);
    CHECK(std::fabs(h.value.to_double() - expect) < 1e-20);
}

TEST_CASE("height is invariant across conjugates") {
    auto ms = classpoly::singular_moduli(-23);
    REQUIRE(ms.size() == 3);
    HeightValue h0 = weil_height(ms[0], 96);
    HeightValue h1 = weil_height(ms[1], 96);
    HeightValue h2 = weil_height(ms[2], 96);
    double tol = h0.error.to_double() + h1.error.to_double() + h2.error.to_double();
    CHECK(std::fabs(h0.value.to_double() - h1.value.to_double()) <= tol);
    CHECK(std::fabs(h0.value.to_double() - h2.value.to_double()) <= tol);
}

TEST_CASE("doubling law h(a^2) = 2 h(a) on random quadratics") {
    Rng rng(77);
    int done = 0;
    for (int t = 0; t < 40 && done < 12; ++t) {
        long b = rng.range(-6, 6);
        long c = rng.range(-9, 9);
        if (c == 0) continue;
        // x^2 + b x + c, squarefree and irreducible over Q for most draws
        IntPoly f = poly({c, b, 1});
        long disc = b * b - 4 * c;
        if (disc == 0) continue;
        long s = (long)std::lround(std::sqrt((double)std::labs(disc)));
        if (disc > 0 && s * s == disc) continue;  // reducible
        double re, im;
        if (disc > 0) {
            re = (-b + std::sqrt((double)disc)) / 2.0;
            im = 0.0;
        } else {
            re = -b / 2.0;
            im = std::sqrt((double)(-disc)) / 2.0;
        }
        AlgebraicNumber a = AlgebraicNumber::make(f, box_at(re, im, 0.05, 160));
        // a^2 is a root of the resultant-style polynomial y = x^2:
        // if f(x) = x^2 + b x + c then x^2 = -b x - c, and
        // (y + c)^2 = b^2 y  gives  y^2 + (2c - b^2) y + c^2 = 0.
        IntPoly g = poly({c * c, 2 * c - b * b, 1});
        if (!g.is_squarefree()) continue;
        double re2 = re * re - im * im, im2 = 2.0 * re * im;
        AlgebraicNumber asq = AlgebraicNumber::make(g, box_at(re2, im2, 0.05, 160));
        HeightValue ha = weil_height(a, 96);
        HeightValue hs = weil_height(asq, 96);
        CAPTURE(b);
        CAPTURE(c);
        double tol = 2.0 * ha.error.to_double() + hs.error.to_double() + 1e-18;
        CHECK(std::fabs(hs.value.to_double() - 2.0 * ha.value.to_double()) <= tol);
        ++done;
    }
    CHECK(done >= 10);
}

TEST_CASE("lehmer floor value and monotonicity") {
    HeightValue b2 = bound_lehmer(2);
    double expect2 = 1.0 / (37.0 * 4.0 * std::log(2.0));
    CHECK(std::fabs(b2.value.to_double() - expect2) < 1e-15);
    HeightValue b3 = bound_lehmer(3);
    double expect3 = 1.0 / (37.0 * 9.0 * std::log(3.0));
    CHECK(std::fabs(b3.value.to_double() - expect3) < 1e-15);
    double prev = b2.value.to_double();
    for (long d = 3; d <= 12; ++d) {
        double cur = bound_lehmer(d).value.to_double();
        CHECK(cur < prev);
        prev = cur;
    }
    CHECK_THROWS_AS(bound_lehmer(1), Error);
}

TEST_CASE("lehmer floor audit on computed singular moduli") {
    for (long D : {-4L, -15L, -23L}) {
        for (const auto& m : classpoly::singular_moduli(D)) {
            HeightValue h = weil_height(m, 96);
            CHECK(!relations::is_root_of_unity(m));
            if (m.degree() >= 2) {
                double floor = bound_lehmer(m.degree()).value.to_double();
                CHECK(h.value.to_double() + h.error.to_double() >= floor);
            }
            CHECK(h.value.to_double() > h.error.to_double());
        }
    }
}

TEST_CASE("search radius formula at the documented point") {
    double l2 = std::log(2.0), l3 = std::log(3.0);
    SearchRadius r = exponent_search_radius(2, 2, {l2, l3});
    double expect = 4.0 * l2 * (l2 * l3) / l2;  // d^n log d * prod / min
    CHECK(r.real_value == doctest::Approx(expect));
    CHECK(r.radius >= 1);
    CHECK(r.radius >= mpz_class((long)expect));
}

TEST_CASE("search radius homogeneity: scaling heights has degree n - 1") {
    /* prod h_j / min h_i is homogeneous of degree n - 1, so doubling every
     * height multiplies the radius by 2^(n-1) */
    double l2 = std::log(2.0), l3 = std::log(3.0), l5 = std::log(5.0);
    SearchRadius r1 = exponent_search_radius(2, 2, {l2, l3});
    SearchRadius r2 = exponent_search_radius(2, 2, {2.0 * l2, 2.0 * l3});
    CHECK(r2.real_value == doctest::Approx(2.0 * r1.real_value));
    SearchRadius t1 = exponent_search_radius(3, 2, {l2, l3, l5});
    SearchRadius t2 = exponent_search_radius(3, 2, {2.0 * l2, 2.0 * l3, 2.0 * l5});
    CHECK(t2.real_value == doctest::Approx(4.0 * t1.real_value));
}

TEST_CASE("search radius surrogate scales linearly") {
    SearchRadius r1 = exponent_search_radius(3, 2, {1.0, 1.0, 1.0}, 1.0);
    SearchRadius r5 = exponent_search_radius(3, 2, {1.0, 1.0, 1.0}, 5.0);
    CHECK(r5.real_value == doctest::Approx(5.0 * r1.real_value));
}

TEST_CASE("search radius rejects nonpositive heights") {
    CHECK_THROWS_AS(exponent_search_radius(2, 2, {0.0, 1.0}), Error);
    CHECK_THROWS_AS(exponent_search_radius(2, 2, {-1.0, 1.0}), Error);
}
