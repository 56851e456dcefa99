#pragma once

#include <vector>

#include "smrel/ball.hpp"
#include "smrel/intpoly.hpp"

namespace smrel::roots {

/* Certified enclosures of all complex roots of a squarefree integer
 * polynomial, ordered by (Re, Im) of the midpoints.  Each returned ball is
 * proven to contain exactly one root, the balls are pairwise disjoint, and
 * every root lies in one of them.  Radii are at most 2^-p * (1 + |root|).
 *
 * Certification: if z is any point and r = deg(f) * |f(z) / f'(z)|, the
 * disc of radius r around z contains at least one root; with deg(f) such
 * discs pairwise disjoint, each holds exactly one.  Fails precision if the
 * polynomial is not squarefree (the discs can then never separate). */
std::vector<CBall> certified_roots(const IntPoly& f, Prec p);

}  // namespace smrel::roots
