#pragma once

#include <gmpxx.h>

#include <vector>

#include "smrel/ball.hpp"

namespace smrel {

/* Dense univariate polynomial over Z, coefficients constant-term first.
 * Always normalized: no trailing zero limbs; the zero polynomial has an
 * empty coefficient vector and degree -1. */
class IntPoly {
  public:
    IntPoly() = default;
    explicit IntPoly(std::vector<mpz_class> coeffs) : c_(std::move(coeffs)) { trim(); }
    static IntPoly constant(const mpz_class& a);
    static IntPoly monomial(const mpz_class& a, size_t k);
    /* x^n - 1 */
    static IntPoly xn_minus_1(unsigned long n);
    /* n-th cyclotomic polynomial (cached, thread-safe) */
    static const IntPoly& cyclotomic(unsigned long n);

    long degree() const { return static_cast<long>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const mpz_class& operator[](size_t i) const { return c_[i]; }
    const std::vector<mpz_class>& coeffs() const { return c_; }
    const mpz_class& lc() const;

    bool operator==(const IntPoly& o) const { return c_ == o.c_; }
    bool operator!=(const IntPoly& o) const { return !(*this == o); }

    IntPoly add(const IntPoly& o) const;
    IntPoly sub(const IntPoly& o) const;
    IntPoly neg() const;
    IntPoly mul(const IntPoly& o) const;
    IntPoly mul_z(const mpz_class& k) const;
    IntPoly shift(size_t k) const;  /* multiply by x^k */
    IntPoly derivative() const;
    /* coefficients reversed: x^deg * p(1/x) */
    IntPoly reverse() const;

    /* exact quotient by a monic divisor; fails internal if not exact */
    IntPoly div_exact_monic(const IntPoly& d) const;
    /* remainder of division by a monic divisor (exact integer arithmetic) */
    IntPoly rem_monic(const IntPoly& d) const;

    mpz_class content() const;       /* gcd of coefficients, >= 0 */
    IntPoly primitive_part() const;  /* content removed, leading coeff > 0 */

    /* primitive gcd over Z (pseudo-remainder sequence), leading coeff > 0 */
    static IntPoly gcd(const IntPoly& a, const IntPoly& b);
    bool is_squarefree() const;      /* gcd with the derivative is constant */

    mpz_class eval_z(const mpz_class& x) const;
    mpq_class eval_q(const mpq_class& x) const;
    CBall eval_ball(const CBall& x) const;  /* Horner, rigorous */

    /* sum of |coefficients| (length/height of the polynomial) */
    mpz_class length() const;

    std::string str(const std::string& var = "x") const;

  private:
    void trim();
    std::vector<mpz_class> c_;
};

/* The ring Z[zeta_n] presented as Z[x]/Phi_n(x); elements are IntPoly of
 * degree < phi(n).  Enough ring structure for exact series coefficients and
 * exact evaluation of integer polynomials at roots of unity. */
class CycloRing {
  public:
    explicit CycloRing(unsigned long n);

    unsigned long order() const { return n_; }
    unsigned long degree() const { return static_cast<unsigned long>(phi_.degree()); }

    IntPoly reduce(const IntPoly& a) const { return a.rem_monic(phi_); }
    IntPoly mul(const IntPoly& a, const IntPoly& b) const { return reduce(a.mul(b)); }
    /* zeta^k as a reduced element */
    IntPoly zeta_pow(long k) const;
    /* is this reduced element a plain integer (degree <= 0)? */
    static bool is_integer(const IntPoly& a) { return a.degree() <= 0; }

  private:
    unsigned long n_;
    IntPoly phi_;
};

/* small arithmetic helpers (64-bit domain) */
std::vector<long> divisors_of(long n);
long euler_phi(long n);
bool is_prime_long(long n);
std::vector<long> prime_factors(long n);
/* psi(n) = n * prod_{p | n} (1 + 1/p), the index of Gamma_0(n) */
long psi_index(long n);

}  // namespace smrel
