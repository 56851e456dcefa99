#include <doctest.h>

#include <cmath>
#include <string>

#include "smrel/ball.hpp"
#include "smrel/intpoly.hpp"
#include "smrel/real.hpp"
#include "smrel/util.hpp"

using namespace smrel;

namespace {

CBall ball_of(double re, double im, Prec p = 128) {
    CBall z(p);
    z.re.set_si(0);
    mpfr_set_d(z.re.get(), re, MPFR_RNDN);
    mpfr_set_d(z.im.get(), im, MPFR_RNDN);
    z.rad.set_zero();
    return z;
}

double abs_mid(const CBall& z) {
    double x = z.re.to_double(), y = z.im.to_double();
    return std::sqrt(x * x + y * y);
}

}  // namespace

TEST_CASE("real parse/str round-trips exactly at the same precision") {
    Real x = Real::parse("3.14159265358979323846264338327950288", 192);
    std::string s = x.str();
    Real y = Real::parse(s, 192);
    CHECK(mpfr_equal_p(x.get(), y.get()));
}

TEST_CASE("real parse rejects garbage") {
    CHECK_THROWS_AS(Real::parse("not-a-number", 64), Error);
    CHECK_THROWS_AS(Real::parse("", 64), Error);
}

TEST_CASE("mag arithmetic rounds upward") {
    Mag a = Mag::from_d(1.0);
    Mag b = Mag::from_d(2.0);
    Mag s;
    s.set_add(a, b);
    CHECK(s.to_double() >= 3.0);
    Mag t = Mag::two_exp(-40);
    CHECK(t.to_double() == doctest::Approx(std::ldexp(1.0, -40)));
}

TEST_CASE("ball addition propagates both radii") {
    CBall a = ball_of(1.0, 2.0);
    CBall b = ball_of(3.0, -1.0);
    a.add_error(Mag::two_exp(-20));
    b.add_error(Mag::two_exp(-22));
    CBall c(128);
    c.set_add(a, b);
    CHECK(c.re.to_double() == doctest::Approx(4.0));
    CHECK(c.im.to_double() == doctest::Approx(1.0));
    double r = c.rad.to_double();
    CHECK(r >= std::ldexp(1.0, -20) + std::ldexp(1.0, -22) - 1e-18);
}

TEST_CASE("ball multiplication contains the true product") {
    // (1+2i)(3-i) = 5+5i
    CBall a = ball_of(1.0, 2.0);
    CBall b = ball_of(3.0, -1.0);
    CBall c(128);
    c.set_mul(a, b);
    CHECK(c.re.to_double() == doctest::Approx(5.0));
    CHECK(c.im.to_double() == doctest::Approx(5.0));
    CHECK(c.rad.to_double() < 1e-30);
}

TEST_CASE("ball inversion and division") {
    CBall a = ball_of(3.0, 4.0);
    CBall inv(128);
    inv.set_inv(a);
    // 1/(3+4i) = (3-4i)/25
    CHECK(inv.re.to_double() == doctest::Approx(0.12));
    CHECK(inv.im.to_double() == doctest::Approx(-0.16));
    CBall q(128);
    q.set_div(a, a);
    CHECK(q.re.to_double() == doctest::Approx(1.0));
    CHECK(std::fabs(q.im.to_double()) < 1e-25);
}

TEST_CASE("division by a ball containing zero fails") {
    CBall a = ball_of(1.0, 0.0);
    CBall z = ball_of(0.0, 0.0);
    z.add_error(Mag::from_d(0.5));
    CBall out(128);
    CHECK_THROWS_AS(out.set_div(a, z), Error);
}

TEST_CASE("exp matches the real exponential on the real axis") {
    CBall a = ball_of(1.0, 0.0);
    CBall e(128);
    e.set_exp(a);
    CHECK(e.re.to_double() == doctest::Approx(std::exp(1.0)));
    CHECK(std::fabs(e.im.to_double()) < 1e-25);
}

TEST_CASE("exp of i*pi lands on -1 within its radius") {
    Prec p = 192;
    CBall ipi(p);
    Real pi = Real::pi(p);
    ipi.im.set(pi);
    ipi.rad = Mag::two_exp(-(long)p + 2);  // pi rounding slack
    CBall e(p);
    e.set_exp(ipi);
    CHECK(std::fabs(e.re.to_double() + 1.0) < 1e-40);
    CHECK(std::fabs(e.im.to_double()) < 1e-40);
    CHECK(e.rad.to_double() < 1e-40);
}

TEST_CASE("integer square root ball") {
    CBall s(128);
    s.set_sqrt_z(mpz_class(3), 128);
    CHECK(s.re.to_double() == doctest::Approx(std::sqrt(3.0)));
    CHECK(s.im.to_double() == 0.0);
    CHECK(s.rad.to_double() < 1e-30);
}

TEST_CASE("pow_si matches repeated multiplication") {
    CBall a = ball_of(1.5, -0.25);
    CBall p5(128), m(128);
    p5.set_pow_si(a, 5);
    m.set(a);
    for (int i = 1; i < 5; ++i) m.mul(a);
    CHECK(p5.re.to_double() == doctest::Approx(m.re.to_double()));
    CHECK(p5.im.to_double() == doctest::Approx(m.im.to_double()));
    CBall inv2(128);
    inv2.set_pow_si(a, -2);
    CBall sq(128);
    sq.set_mul(a, a);
    CBall chk(128);
    chk.set_mul(inv2, sq);
    CHECK(chk.re.to_double() == doctest::Approx(1.0));
    CHECK(std::fabs(chk.im.to_double()) < 1e-20);
}

TEST_CASE("abs bounds bracket the true modulus") {
    CBall a = ball_of(3.0, 4.0);
    a.add_error(Mag::from_d(0.125));
    CHECK(a.abs_up().to_double() >= 5.0);
    CHECK(a.abs_low().to_double() <= 5.0);
    CHECK(a.abs_up().to_double() <= 5.126);
    CHECK(a.abs_low().to_double() >= 4.874);
    CHECK(!a.contains_zero());
    CBall z = ball_of(0.01, 0.0);
    z.add_error(Mag::from_d(0.05));
    CHECK(z.contains_zero());
}

TEST_CASE("of_q_pair represents exact rationals tightly") {
    CBall z = CBall::of_q_pair(mpq_class(1, 3), mpq_class(-2, 7), 128);
    CHECK(z.re.to_double() == doctest::Approx(1.0 / 3.0));
    CHECK(z.im.to_double() == doctest::Approx(-2.0 / 7.0));
    CHECK(z.rad.to_double() < 1e-35);
    CHECK(abs_mid(z) < 1.0);
}

TEST_CASE("intpoly cyclotomic basics") {
    const IntPoly& c1 = IntPoly::cyclotomic(1);   // x - 1
    const IntPoly& c2 = IntPoly::cyclotomic(2);   // x + 1
    const IntPoly& c5 = IntPoly::cyclotomic(5);   // x^4+x^3+x^2+x+1
    const IntPoly& c12 = IntPoly::cyclotomic(12); // x^4 - x^2 + 1
    CHECK(c1.degree() == 1);
    CHECK(c2.degree() == 1);
    CHECK(c5.degree() == 4);
    for (size_t i = 0; i <= 4; ++i) CHECK(c5[i] == 1);
    CHECK(c12.degree() == 4);
    CHECK(c12[0] == 1);
    CHECK(c12[2] == -1);
    CHECK(c12[4] == 1);
    // product over divisors of 6 gives x^6 - 1
    IntPoly prod = IntPoly::cyclotomic(1)
                       .mul(IntPoly::cyclotomic(2))
                       .mul(IntPoly::cyclotomic(3))
                       .mul(IntPoly::cyclotomic(6));
    CHECK(prod == IntPoly::xn_minus_1(6));
}

TEST_CASE("intpoly arithmetic and division") {
    IntPoly p({mpz_class(-1), mpz_class(0), mpz_class(1)});  // x^2 - 1
    IntPoly d({mpz_class(1), mpz_class(1)});                 // x + 1
    IntPoly q = p.div_exact_monic(d);
    CHECK(q.degree() == 1);
    CHECK(q[0] == -1);
    CHECK(q[1] == 1);
    CHECK(p.rem_monic(d).is_zero());
    CHECK(p.eval_z(mpz_class(3)) == 8);
    CHECK(p.eval_q(mpq_class(1, 2)) == mpq_class(-3, 4));
    CHECK(p.derivative().degree() == 1);
    CHECK(p.derivative()[1] == 2);
    CHECK(IntPoly::gcd(p, d).degree() == 1);
}

TEST_CASE("divisor and prime helpers") {
    auto d12 = divisors_of(12);
    REQUIRE(d12.size() == 6);
    CHECK(d12.front() == 1);
    CHECK(d12.back() == 12);
    for (size_t i = 1; i < d12.size(); ++i) CHECK(d12[i - 1] < d12[i]);
    CHECK(is_prime_long(2));
    CHECK(is_prime_long(97));
    CHECK(!is_prime_long(91));
    CHECK(euler_phi(12) == 4);
    auto pf = prime_factors(360);
    REQUIRE(pf.size() == 3);
    CHECK(pf[0] == 2);
    CHECK(pf[1] == 3);
    CHECK(pf[2] == 5);
}

TEST_CASE("rng is deterministic") {
    Rng a(42), b(42);
    for (int i = 0; i < 16; ++i) CHECK(a.next() == b.next());
    Rng c(7);
    long v = c.range(-5, 5);
    CHECK(v >= -5);
    CHECK(v <= 5);
}

TEST_CASE("content hash is stable and hex") {
    std::string h = content_hash_hex("hello");
    CHECK(h == content_hash_hex("hello"));
    CHECK(h != content_hash_hex("hellp"));
    CHECK(h.size() == 16);
    for (char ch : h) CHECK(std::isxdigit(static_cast<unsigned char>(ch)));
}
