#include <doctest.h>

#include <algorithm>
#include <set>
#include <vector>

#include "smrel/qforms.hpp"
#include "smrel/util.hpp"

using namespace smrel;
using namespace smrel::qforms;

namespace {

/* Brute-force oracle: count reduced primitive forms of discriminant D by
 * scanning the full (a, b, c) box allowed by the reduction inequalities. */
std::vector<QuadForm> brute_reduced(long D) {
    std::vector<QuadForm> out;
    for (long a = 1; 3 * a * a <= -D; ++a) {
        for (long b = -a; b <= a; ++b) {
            long num = b * b - D;
            if (num % (4 * a) != 0) continue;
            long c = num / (4 * a);
            if (c < a) continue;
            if ((b < 0) && (b == -a || a == c)) continue;  // normalized rep
            long g = std::__gcd(std::__gcd(std::abs(a), std::abs(b)), std::abs(c));
            if (g != 1) continue;
            out.push_back(QuadForm::make(a, b, c));
        }
    }
    std::sort(out.begin(), out.end(), [](const QuadForm& f, const QuadForm& g) {
        if (f.a != g.a) return f.a < g.a;
        return f.b < g.b;
    });
    return out;
}

}  // namespace

TEST_CASE("discriminant validity") {
    CHECK(is_discriminant(-3));
    CHECK(is_discriminant(-4));
    CHECK(is_discriminant(-7));
    CHECK(is_discriminant(-8));
    CHECK(!is_discriminant(-5));
    CHECK(!is_discriminant(-6));
    CHECK(!is_discriminant(5));
    CHECK(!is_discriminant(0));
    CHECK_THROWS_AS(check_discriminant(-5), Error);
}

TEST_CASE("discriminant enumeration is complete and ordered") {
    auto ds = enumerate_discriminants(20);
    std::vector<long> expect = {-3, -4, -7, -8, -11, -12, -15, -16, -19, -20};
    CHECK(ds == expect);
    CHECK_THROWS_AS(enumerate_discriminants(2), Error);
}

TEST_CASE("class numbers of small discriminants") {
    // reference values for the first imaginary quadratic discriminants
    CHECK(class_number(-3) == 1);
    CHECK(class_number(-4) == 1);
    CHECK(class_number(-7) == 1);
    CHECK(class_number(-8) == 1);
    CHECK(class_number(-11) == 1);
    CHECK(class_number(-12) == 1);
    CHECK(class_number(-15) == 2);
    CHECK(class_number(-16) == 1);
    CHECK(class_number(-19) == 1);
    CHECK(class_number(-20) == 2);
    CHECK(class_number(-23) == 3);
    CHECK(class_number(-27) == 1);
    CHECK(class_number(-28) == 1);
    CHECK(class_number(-31) == 3);
    CHECK(class_number(-43) == 1);
    CHECK(class_number(-67) == 1);
    CHECK(class_number(-163) == 1);
}

TEST_CASE("exactly thirteen class-number-one discriminants up to 300") {
    std::vector<long> ones;
    for (long D : enumerate_discriminants(300))
        if (class_number(D) == 1) ones.push_back(D);
    std::vector<long> expect = {-3, -4, -7, -8, -11, -12, -16, -19, -27, -28, -43, -67, -163};
    CHECK(ones == expect);
}

TEST_CASE("reduced forms agree with the brute-force oracle") {
    for (long D : enumerate_discriminants(120)) {
        auto got = reduced_forms(D);
        auto want = brute_reduced(D);
        CAPTURE(D);
        REQUIRE(got.size() == want.size());
        for (size_t i = 0; i < got.size(); ++i) {
            CHECK(got[i].a == want[i].a);
            CHECK(got[i].b == want[i].b);
            CHECK(got[i].c == want[i].c);
        }
        CHECK((long)got.size() == class_number(D));
    }
}

TEST_CASE("every reduced form validates its own invariants") {
    for (long D : enumerate_discriminants(150)) {
        for (const auto& f : reduced_forms(D)) {
            CHECK(f.is_reduced());
            CHECK(f.discriminant() == D);
            CHECK(f.a >= 1);
            CHECK(std::abs(f.b) <= f.a);
            CHECK(f.a <= f.c);
        }
    }
}

TEST_CASE("form constructor rejects invalid data") {
    CHECK_THROWS_AS(QuadForm::make(0, 0, 1), Error);      // not positive definite
    CHECK_THROWS_AS(QuadForm::make(1, 0, -1), Error);     // positive discriminant
    CHECK_THROWS_AS(QuadForm::make(2, 2, 2), Error);      // imprimitive
    QuadForm ok = QuadForm::make(1, 1, 1);
    CHECK(ok.discriminant() == -3);
}

TEST_CASE("cm points live in the fundamental domain") {
    for (long D : enumerate_discriminants(100)) {
        for (const auto& f : reduced_forms(D)) {
            CMPoint pt = cm_point(f);
            CBall z = pt.ball(128);
            double re = z.re.to_double();
            double im = z.im.to_double();
            CHECK(im > 0.8);  // reduced forms have Im tau >= sqrt(3)/2
            CHECK(re >= -0.501);
            CHECK(re <= 0.501);
            // |z|^2 = c/a >= 1 for reduced forms
            double n2 = re * re + im * im;
            CHECK(n2 >= 0.999);
        }
    }
}

TEST_CASE("principal form comes first") {
    for (long D : enumerate_discriminants(60)) {
        auto forms = reduced_forms(D);
        REQUIRE(!forms.empty());
        CHECK(forms[0].a == 1);  // lexicographic order puts a=1 first
    }
}
