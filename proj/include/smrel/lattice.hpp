#pragma once

#include <gmpxx.h>

#include <vector>

namespace smrel::lattice {

using ZVec = std::vector<mpz_class>;
using ZMat = std::vector<ZVec>;  /* row-major; rows are lattice vectors */

/* basis (as rows) of { x integer row : x * a = 0 }, via unimodular row
 * reduction of a to echelon form */
ZMat kernel(const ZMat& a);

/* in-place LLL reduction of the row lattice, delta = 0.99, with exact
 * rational Gram-Schmidt data (no floating point anywhere) */
void lll_reduce(ZMat& b);

/* exact minimum of |b_i*|^2 over the Gram-Schmidt orthogonalization of the
 * rows; every nonzero lattice vector has squared length >= this */
mpq_class min_gs_norm2(const ZMat& b);

}  // namespace smrel::lattice
