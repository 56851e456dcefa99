#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "smrel/algnum.hpp"
#include "smrel/relations.hpp"

namespace smrel::search {

using algnum::AlgebraicNumber;

/* Complexity measures for the verified object families: the per-entry
 * discriminant maximum for tuples of singular moduli, the minimized
 * max(N, |a|, |b|, c) for modular-dependent pairs, and the two mixed
 * triple measures. */
enum class ReportKind { tuple_6_2, pair_8_6, triple_8_2, triple_8_4 };

struct ComplexityReport {
    ReportKind kind = ReportKind::tuple_6_2;
    /* exactly the integers the aggregate is taken over, with names */
    std::vector<std::pair<std::string, mpz_class>> components;
    mpz_class delta;
};

const char* report_kind_name(ReportKind k);

/* One member of a dependent tuple: the singular modulus with discriminant
 * `disc`, conjugate index `conj` into the deterministic root order of
 * singular_moduli(disc).  For rational values (class number one) `value`
 * carries the integer itself. */
struct TupleMember {
    long disc = 0;
    int conj = 0;
    bool rational = false;
    mpz_class value;
};

struct TupleFinding {
    std::vector<TupleMember> members;
    /* product with these exponents is exactly 1; kernel_generator inside
     * records the minimal {+-1}-valued relation when it differs */
    relations::RelationCertificate cert;
    ComplexityReport complexity;
};

struct SearchReport {
    std::string kind;  /* "singular-dependent" or "pair-product" */
    std::vector<std::pair<std::string, std::string>> parameters;
    std::vector<TupleFinding> findings;
    unsigned long exclusions = 0;  /* candidates examined and refuted */
    std::vector<std::string> caveats;
};

struct SearchOptions {
    long delta_max = 200;
    long n_max = 5;
    bool rational_only = false;
    /* dependence tests before the search stops with a partial report */
    unsigned long budget_candidates = 200000;
    /* exponent box for numeric relation hunting on non-rational tuples */
    long exponent_cap = 64;
    Prec max_precision = 4096;
};

/* Enumerates singular moduli with |D| <= delta_max (zero excluded), tests
 * tuples of up to n_max distinct values for minimal multiplicative
 * dependence, and reports every certified finding.  Exhaustive over the
 * rational (class-number-one) values; the general mode walks subsets in a
 * deterministic order until the candidate budget runs out and says so. */
SearchReport singular_dependent_search(const SearchOptions& opt);

/* Looks for pairs of singular moduli with product exactly 1 up to
 * |D| <= delta_max.  A pair requires both values to be algebraic units,
 * which the constant terms of the class polynomials rule out; any
 * survivor would be checked directly and reported loudly. */
SearchReport pair_product_check(long delta_max);

/* Discriminant of a singular modulus by class-polynomial membership over
 * |D| <= disc_budget; nullopt when nothing in range matches. */
std::optional<long> recognize_singular_modulus(const AlgebraicNumber& a,
                                               long disc_budget);

/* per-entry |D| and their maximum; fails budget when a value is not
 * recognized as a singular modulus within |D| <= disc_budget */
ComplexityReport complexity_of_tuple(const std::vector<AlgebraicNumber>& sigmas,
                                     long disc_budget = 2000);

struct PairBudgets {
    long n_max = 10;        /* isogeny levels tried */
    long exp_max = 64;      /* |a|, |b| and c search box */
    Prec max_precision = 4096;
};

/* Minimal Delta = max(N, |a|, |b|, c) over witnesses Phi_N(x, y) = 0 and
 * (x^a y^b)^c = 1 with gcd(a, b) = 1 and N, c >= 1; nullopt when no
 * witness exists within the budgets. */
std::optional<ComplexityReport> modular_dependent_complexity(
    const AlgebraicNumber& x, const AlgebraicNumber& y,
    const PairBudgets& budgets = {});

struct TripleBudgets {
    long n_max = 10;
    long exp_max = 64;
    long disc_budget = 500;
    Prec max_precision = 4096;
};

/* x3 a root of unity (order M), x1 and x2 multiplicatively dependent, all
 * three pairwise isogenous; Delta = max(M, N1, N2) over the minimal
 * isogeny degrees N1, N2 between x3 and x1, x2.  Entries must be distinct
 * and nonzero (domain error otherwise); nullopt when a condition fails
 * within the budgets. */
std::optional<ComplexityReport> verify_triple_8_2(
    const AlgebraicNumber& x1, const AlgebraicNumber& x2,
    const AlgebraicNumber& x3, const TripleBudgets& budgets = {});

/* x1 a singular modulus (discriminant D found within |D| <= disc_budget),
 * x2 and x3 isogenous with minimal degree N, x3 a root of unity of order
 * M, x1 and x2 multiplicatively dependent; Delta = max(|D|, M, N). */
std::optional<ComplexityReport> verify_triple_8_4(
    const AlgebraicNumber& x1, const AlgebraicNumber& x2,
    const AlgebraicNumber& x3, const TripleBudgets& budgets = {});

}  // namespace smrel::search
