#pragma once

#include <optional>
#include <string>
#include <vector>

#include "smrel/algnum.hpp"
#include "smrel/heights.hpp"
#include "smrel/intpoly.hpp"

namespace smrel::modpoly {

using algnum::AlgebraicNumber;

/* Symmetric bivariate integer polynomial vanishing exactly on pairs of
 * j-invariants of cyclically n-isogenous lattices.  coeff[i][j] multiplies
 * X^i Y^j; both degrees equal psi(n) for n >= 2, and level 1 is X - Y. */
struct ModularPolynomial {
    long level = 0;
    std::vector<std::vector<mpz_class>> coeff;

    long deg_x() const { return (long)coeff.size() - 1; }
    long deg_y() const { return coeff.empty() ? -1 : (long)coeff[0].size() - 1; }
    const mpz_class& at(long i, long j) const { return coeff[i][j]; }
    /* sum of |c[i][j]| */
    mpz_class length() const;
};

/* cached accessor; builds by the q-expansion route on first use */
const ModularPolynomial& modular_polynomial(long n, long n_max = 10);

/* the two independent construction routes (uncached) */
ModularPolynomial build_by_q_expansion(long n);
ModularPolynomial build_by_cm_interpolation(long n);

/* plain-text export: "level <n>" then nonzero "i j c" triples, sorted */
std::string to_text(const ModularPolynomial& f);

CBall eval_ball(const ModularPolynomial& f, const CBall& x, const CBall& y,
                Prec p);
mpq_class eval_exact(const ModularPolynomial& f, const mpq_class& x,
                     const mpq_class& y);
/* value of f(zeta_ring^e1, zeta_ring^e2) as a reduced element of
 * Z[x]/Phi_ring; exact */
IntPoly eval_cyclotomic(const ModularPolynomial& f, unsigned long ring,
                        unsigned long e1, unsigned long e2);

/* minimal n <= n_max with Phi_n(x, y) = 0, decided exactly (rational or
 * cyclotomic evaluation, else ball evaluation against a Liouville-type
 * separation); nullopt when every level is certifiably nonzero */
std::optional<long> is_isogenous(const AlgebraicNumber& x,
                                 const AlgebraicNumber& y, long n_max,
                                 Prec max_precision = 4096);

/* interval for the stable Faltings-type height given h(j): center h/12,
 * radius c log max(2, h); search pruning and reporting only */
struct FaltingsWindow {
    double lower = 0, upper = 0;
};
FaltingsWindow faltings_window(const heights::HeightValue& h_j, double c = 1.0);

/* (1/2) log n, bounding the height drift across a cyclic degree-n map */
double isogeny_height_drift(long n);

/* degree bound 10^78 d^4 max(1,log d)^2 max(1,h)^2, rounded up, plus a
 * configurable practical surrogate with the same shape for search sizing */
struct PellarinBound {
    mpz_class stated;
    mpz_class practical;
};
PellarinBound pellarin_degree_bound(long d, double h_f_upper,
                                    double practical_scale = 1.0);

/* a verified pair of distinct roots of unity joined by a modular equation */
struct ModularPairCertificate {
    unsigned long order1 = 1, k1 = 0;  /* first root: e^(2 pi i k1/order1) */
    unsigned long order2 = 1, k2 = 0;
    long level = 0;
    unsigned long ring = 1;  /* verification happened in Z[zeta_ring] */

    auto operator<=>(const ModularPairCertificate&) const = default;
};

struct PairSearchOutcome {
    std::vector<ModularPairCertificate> pairs;  /* sorted, deterministic */
    long pairs_examined = 0;
    std::string caveat;  /* non-exhaustiveness note for levels beyond n_max */
};

/* all pairs of distinct roots of unity with orders <= m_max satisfying a
 * level-n modular equation for some n <= n_max: numeric pre-screen on the
 * unit circle, every surviving candidate verified in exact cyclotomic
 * arithmetic */
PairSearchOutcome modular_pair_search(long m_max, long n_max);

}  // namespace smrel::modpoly
