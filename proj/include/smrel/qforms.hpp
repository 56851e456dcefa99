#pragma once

#include <vector>

#include "smrel/ball.hpp"

namespace smrel::qforms {

/* A discriminant here is always negative and congruent to 0 or 1 mod 4
 * (not necessarily fundamental). */
bool is_discriminant(long D);
void check_discriminant(long D);

/* A positive-definite integral binary quadratic form a*x^2 + b*x*y + c*y^2.
 * Always primitive (gcd(a,b,c) = 1) with a > 0; "reduced" additionally means
 * |b| <= a <= c, with b >= 0 whenever |b| = a or a = c. */
struct QuadForm {
    long a = 0, b = 0, c = 0;

    long discriminant() const;
    bool is_reduced() const;

    /* validates positivity, discriminant sign and primitivity */
    static QuadForm make(long a, long b, long c);

    auto operator<=>(const QuadForm&) const = default;
};

/* The root (-b + i*sqrt(|D|)) / (2a) of f in the upper half plane.  For a
 * reduced form this lies in the standard fundamental domain. */
struct CMPoint {
    QuadForm form;

    long discriminant() const { return form.discriminant(); }
    /* tau as a complex ball at precision p */
    CBall ball(Prec p) const;
    /* exact multiplicative height H(tau) = sqrt(max(a, c)); returned as the
     * integer max(a, c) whose square root it is */
    long height_squared() const { return form.a > form.c ? form.a : form.c; }
};

/* all discriminants with |D| <= bound, ordered by |D|; requires bound >= 3 */
std::vector<long> enumerate_discriminants(long bound);

/* reduced primitive forms of discriminant D, ordered lexicographically
 * by (a, b) */
std::vector<QuadForm> reduced_forms(long D);

/* h(D); counts without materializing the forms */
long class_number(long D);

/* root of a reduced form (fails domain otherwise) */
CMPoint cm_point(const QuadForm& f);

}  // namespace smrel::qforms
