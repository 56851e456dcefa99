#pragma once

#include <gmpxx.h>

#include <array>
#include <string>
#include <vector>

namespace smrel::trees {

/* Canonical representative of a positive-determinant rational 2x2 matrix
 * up to left multiplication by integer unimodular matrices and scaling:
 * an integer matrix (a, b; 0, d) with a, d >= 1, 0 <= b < d and
 * gcd(a, b, d) = 1.  Two rational matrices describe the same coset exactly
 * when their canonical forms are componentwise equal. */
struct GL2QElement {
    mpz_class a = 1, b = 0, d = 1;

    mpz_class det() const { return a * d; }
    bool is_identity() const { return a == 1 && b == 0 && d == 1; }
    bool operator==(const GL2QElement& o) const {
        return a == o.a && b == o.b && d == o.d;
    }
    bool operator<(const GL2QElement& o) const {
        if (a != o.a) return a < o.a;
        if (d != o.d) return d < o.d;
        return b < o.b;
    }
    std::string str() const;
};

/* entries row-major (m00, m01; m10, m11); fails domain unless det > 0 */
GL2QElement canonicalize(const std::array<mpq_class, 4>& m);
GL2QElement canonicalize(const std::array<mpz_class, 4>& m);

/* canonical form of g * h^{-1} */
GL2QElement translate(const GL2QElement& g, const GL2QElement& h);

/* A vertex of the (p+1)-regular tree attached to the prime p: the class
 * of the row lattice of (p^va, b; 0, p^vd) up to basis change and scaling,
 * normalized so that 0 <= b < p^vd and min(va, v_p(b), vd) = 0.  The base
 * vertex is (1, 0; 0, 1). */
struct LatticeClass {
    long p = 2;
    long va = 0, vd = 0;
    mpz_class b = 0;

    bool is_base() const { return va == 0 && vd == 0; }
    bool operator==(const LatticeClass& o) const {
        return p == o.p && va == o.va && vd == o.vd && b == o.b;
    }
    bool operator<(const LatticeClass& o) const {
        if (p != o.p) return p < o.p;
        if (va != o.va) return va < o.va;
        if (vd != o.vd) return vd < o.vd;
        return b < o.b;
    }
    std::string str() const;
};

LatticeClass base_class(long p);

/* image of the coset of g in the tree at p; the base vertex exactly when
 * p does not divide det(g) */
LatticeClass local_class(const GL2QElement& g, long p);

/* path length between two vertices of the same tree (fails domain when
 * the primes differ) */
long tree_distance(const LatticeClass& u, const LatticeClass& v);

/* the p+1 vertices adjacent to u; for the base vertex, entry k < p is the
 * class of (1, k; 0, p) and entry p is the class of (p, 0; 0, 1) */
std::vector<LatticeClass> neighbors(const LatticeClass& u);

/* Indices (into the neighbor list of the base vertex) of the directions
 * that point toward classes with extra endomorphisms by the hexagonal
 * lattice order: two for p = 1 mod 3, none for p = 2 mod 3, one for p = 3.
 * Every prime keeps at least one direction off this list. */
std::vector<long> bad_directions(long p);

/* true exactly when (g * gamma) applied to the corner (-1 + i sqrt 3)/2
 * lands in the unimodular orbit of that corner, i.e. when j vanishes at
 * the transported point; decided by exact arithmetic */
bool exact_j_zero_test(const GL2QElement& g,
                       const std::array<mpz_class, 4>& gamma);

/* Proof object for separate(): with z = g_survivor^{-1} * gamma applied to
 * the corner zeta = (-1 + i sqrt 3)/2, the value j(g_i z) vanishes for the
 * survivor index and no other.  translated[i] is the canonical form of
 * g_i * g_survivor^{-1}, and per_index[i] is the exact outcome of the
 * vanishing test for translated[i] twisted by gamma. */
struct SeparationWitness {
    std::array<mpz_class, 4> gamma = {1, 0, 0, 1};  /* determinant 1 */
    long survivor = 0;
    std::vector<GL2QElement> translated;
    std::vector<bool> per_index;
    std::string z_description;
};

/* Finds a point of the upper half plane at which j vanishes along exactly
 * one of the given pairwise-distinct cosets.  Fails domain on duplicates
 * or non-canonical input, indeterminate if the bounded twist search does
 * not land a witness (the witness is always verified exactly before being
 * returned). */
SeparationWitness separate(const std::vector<GL2QElement>& gs);

}  // namespace smrel::trees
