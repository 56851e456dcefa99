#pragma once

#include <gmpxx.h>

#include "smrel/ball.hpp"

namespace smrel::jfun {

/* Unimodular reduction of an upper-half-plane point to the standard
 * fundamental domain.  z_out = (a*z_in + b) / (c*z_in + d), det = 1. */
struct Reduction {
    CBall z;
    mpz_class a = 1, b = 0, c = 0, d = 1;
};

/* Fails domain if the ball is certainly not in the upper half plane, and
 * precision if it straddles the real axis.  Near the domain boundary the
 * result may overhang by roughly the ball radius; that never matters for
 * evaluation, which only needs Im large. */
Reduction reduce_to_fundamental(const CBall& z);

/* An exact point (u + v*i*sqrt(m)) / t in the upper half plane: u, v, t
 * integers, m a positive integer (not necessarily squarefree), t > 0,
 * v > 0, gcd(u, v, t) = 1. */
struct QuadPoint {
    mpz_class u, v, t;
    long m = 1;

    static QuadPoint make(mpz_class u, mpz_class v, mpz_class t, long m);

    /* exact fundamental-domain reduction; canonical representative has
     * Re in (-1/2, 1/2], |w| >= 1, and Re >= 0 when |w| = 1 */
    void reduce();

    /* w := (a*w + b) / (c*w + d); requires a*d - b*c > 0 */
    void mobius(const mpz_class& a, const mpz_class& b, const mpz_class& c,
                const mpz_class& d);

    /* true iff the (reduced) point is the order-3 corner (1 + i*sqrt(3))/2,
     * i.e. exactly the point where j vanishes */
    bool is_j_zero() const;

    bool equals(const QuadPoint& o) const;

    CBall ball(Prec p) const;
    std::string str() const;

  private:
    void normalize();
};

/* Series evaluations at working precision p.  These do NOT reduce their
 * argument; they require the ball to sit well inside the upper half plane
 * (Im >= 0.8 certified; the q-expansion route needs Im > 1).  The returned
 * radius covers series truncation, all rounding, and the input radius. */

/* E4(q)^3 / (q * prod_{n>=1} (1 - q^n)^24), q = e^{2 pi i z} */
CBall j_eval_eta(const CBall& z, Prec p);

/* 32 * (t2^8 + t3^8 + t4^8)^3 / (t2 t3 t4)^8 over Jacobi theta constants
 * in the half nome e^{i pi z}; independent of the eta route */
CBall j_eval_theta(const CBall& z, Prec p);

/* truncated integer q-expansion with a Cauchy-integral tail bound; only
 * valid for Im z > 1 (enforced as Im >= 1.02) */
CBall j_eval_series(const CBall& z, Prec p);

/* reduce + evaluate, retrying at higher working precision until the radius
 * is below 2^-p relative or the input ball's own width dominates */
CBall j_eval(const CBall& z, Prec p);

}  // namespace smrel::jfun
