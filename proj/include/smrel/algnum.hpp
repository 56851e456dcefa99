#pragma once

#include <gmpxx.h>

#include "smrel/ball.hpp"
#include "smrel/intpoly.hpp"

namespace smrel::algnum {

/* An algebraic number: a defining integer polynomial (primitive, positive
 * leading coefficient, squarefree -- assumed irreducible by every
 * construction path in this library) plus a certified complex enclosure
 * isolating exactly one of its roots.  The enclosure refines on demand;
 * refinement always re-derives certified root balls from the polynomial, so
 * identity is never lost.  Value semantics; not thread-safe per instance. */
class AlgebraicNumber {
  public:
    AlgebraicNumber() = default;

    /* box must overlap exactly one root of poly (checked; fails domain if
     * it contains none, indeterminate if it cannot be narrowed to one) */
    static AlgebraicNumber make(const IntPoly& poly, const CBall& box);
    static AlgebraicNumber from_rational(const mpq_class& r);
    static AlgebraicNumber from_integer(const mpz_class& n);

    const IntPoly& min_poly() const { return poly_; }
    long degree() const { return poly_.degree(); }
    bool is_rational() const { return poly_.degree() == 1; }
    bool is_zero() const;
    mpq_class rational_value() const;  /* degree 1 only */

    /* certified enclosure with radius <= 2^-p * (1 + |value|) */
    CBall enclosure(Prec p) const;

    /* exact equality of values (same minimal polynomial and same root,
     * decided against the root-separation bound) */
    bool same_value(const AlgebraicNumber& o) const;

  private:
    IntPoly poly_;
    mutable CBall box_;
    mutable Prec level_ = 0;  /* precision box_ was certified at */
};

}  // namespace smrel::algnum
