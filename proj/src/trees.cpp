#include "smrel/trees.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>

#include "smrel/intpoly.hpp"
#include "smrel/jfun.hpp"
#include "smrel/util.hpp"

namespace smrel::trees {

namespace {

/* v_p(x) for x != 0, together with the cofactor x / p^v */
long strip_p(mpz_class& x, long p) {
    if (x == 0) return 0;
    mpz_class pz(p), out;
    long v = (long)mpz_remove(out.get_mpz_t(), x.get_mpz_t(), pz.get_mpz_t());
    x = out;
    return v;
}

long valuation(const mpz_class& x, long p) {
    mpz_class t = x;
    return strip_p(t, p);
}

mpz_class pow_p(long p, long e) {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), (unsigned long)p, (unsigned long)e);
    return r;
}

GL2QElement canonicalize_z(mpz_class m00, mpz_class m01, mpz_class m10,
                           mpz_class m11) {
    mpz_class det = m00 * m11 - m01 * m10;
    if (det <= 0) fail_domain("matrix determinant must be positive");
    mpz_class content = gcd(gcd(m00, m01), gcd(m10, m11));
    m00 /= content;
    m01 /= content;
    m10 /= content;
    m11 /= content;
    if (m10 != 0) {
        /* integer row reduction: (u, v; -m10/g, m00/g) has determinant 1 */
        mpz_class g, u, v;
        mpz_gcdext(g.get_mpz_t(), u.get_mpz_t(), v.get_mpz_t(),
                   m00.get_mpz_t(), m10.get_mpz_t());
        mpz_class r1b = u * m01 + v * m11;
        mpz_class r2b = (m00 / g) * m11 - (m10 / g) * m01;
        m00 = g;
        m01 = r1b;
        m10 = 0;
        m11 = r2b;
    }
    if (m00 < 0) {
        m00 = -m00;
        m01 = -m01;
        m11 = -m11;
    }
    GL2QElement e;
    e.a = m00;
    e.d = m11;
    mpz_fdiv_r(e.b.get_mpz_t(), m01.get_mpz_t(), m11.get_mpz_t());
    if (gcd(gcd(e.a, e.b), e.d) != 1)
        fail_internal("canonical form lost primitivity");
    return e;
}

/* local normalization of an integer triangular matrix (A, B; 0, D) where
 * A = p^va * (unit), D = p^vd * (unit) */
LatticeClass local_of_triangular(long p, mpz_class A, const mpz_class& B,
                                 mpz_class D) {
    LatticeClass u;
    u.p = p;
    long va = strip_p(A, p);
    long vd = strip_p(D, p);
    mpz_class beta = 0;
    if (vd > 0) {
        mpz_class pd = pow_p(p, vd), ainv;
        if (mpz_invert(ainv.get_mpz_t(), A.get_mpz_t(), pd.get_mpz_t()) == 0)
            fail_internal("unit inversion failed in local reduction");
        beta = B * ainv;
        mpz_fdiv_r(beta.get_mpz_t(), beta.get_mpz_t(), pd.get_mpz_t());
    }
    long m = std::min(va, vd);
    if (beta != 0) m = std::min(m, valuation(beta, p));
    if (m > 0) {
        va -= m;
        vd -= m;
        if (beta != 0)
            beta /= pow_p(p, m);
    }
    if (vd == 0) beta = 0;
    u.va = va;
    u.vd = vd;
    u.b = beta;
    return u;
}

/* first edge on the path from the base vertex toward u: the index in the
 * neighbor ordering of the base (k < p, or p for the (p,0;0,1) side) */
long first_edge_index(const LatticeClass& u) {
    if (u.is_base()) fail_internal("no edge from the base to itself");
    if (u.va > 0) return u.p;
    return (long)mpz_fdiv_ui(u.b.get_mpz_t(), (unsigned long)u.p);
}

long mod_inv_long(long x, long q) {
    mpz_class r, xm(x), qm(q);
    if (mpz_invert(r.get_mpz_t(), xm.get_mpz_t(), qm.get_mpz_t()) == 0)
        fail_internal("non-invertible residue");
    return (long)mpz_fdiv_ui(r.get_mpz_t(), (unsigned long)q);
}

/* line through the origin of F_q^2, as a neighbor index: k in [0, q) for
 * the line spanned by (1, k), q for the line spanned by (0, 1) */
long line_after(long idx, const std::array<long, 4>& g, long q) {
    long w0, w1;
    if (idx < q) {
        w0 = (g[0] + (idx * g[2]) % q) % q;
        w1 = (g[1] + (idx * g[3]) % q) % q;
    } else {
        w0 = g[2] % q;
        w1 = g[3] % q;
    }
    if (w0 == 0 && w1 == 0) fail_internal("degenerate line image");
    if (w0 == 0) return q;
    return (w1 * mod_inv_long(w0, q)) % q;
}

/* deterministic enumeration of SL2(F_q); visit(matrix) returns true to
 * stop.  Covers a != 0 first, then the a == 0 sheet. */
template <class F>
void enumerate_sl2(long q, F&& visit) {
    for (long a = 1; a < q; ++a) {
        long ai = mod_inv_long(a, q);
        for (long b = 0; b < q; ++b)
            for (long c = 0; c < q; ++c) {
                long d = ((1 + b * c) % q * ai) % q;
                if (visit(std::array<long, 4>{a, b, c, d})) return;
            }
    }
    for (long b = 1; b < q; ++b) {
        long c = (q - mod_inv_long(b, q)) % q;
        for (long d = 0; d < q; ++d)
            if (visit(std::array<long, 4>{0, b, c, d})) return;
    }
}

/* n-th (0-based) element of SL2(F_q) mapping every listed line off the
 * bad-direction set; gives up after a fixed number of candidates */
std::optional<std::array<long, 4>> nth_feasible_twist(
        long q, const std::vector<long>& lines, long n) {
    std::vector<long> bad = bad_directions(q);
    std::optional<std::array<long, 4>> found;
    long seen = 0, visited = 0;
    enumerate_sl2(q, [&](const std::array<long, 4>& g) {
        if (++visited > 2000000) return true;
        for (long idx : lines) {
            long img = line_after(idx, g, q);
            if (img < q &&
                std::find(bad.begin(), bad.end(), img) != bad.end())
                return false;
        }
        if (seen++ < n) return false;
        found = g;
        return true;
    });
    return found;
}

/* x = r1 mod m1, x = r2 mod m2 for coprime moduli */
mpz_class crt_pair(const mpz_class& r1, const mpz_class& m1,
                   const mpz_class& r2, const mpz_class& m2) {
    mpz_class g, u, v;
    mpz_gcdext(g.get_mpz_t(), u.get_mpz_t(), v.get_mpz_t(), m1.get_mpz_t(),
               m2.get_mpz_t());
    if (g != 1) fail_internal("moduli are not coprime");
    mpz_class m = m1 * m2, x = r1 + m1 * u * (r2 - r1);
    mpz_fdiv_r(x.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
    return x;
}

/* lift a matrix with determinant = 1 mod n to an integer matrix with
 * determinant exactly 1, congruent to the input mod n */
std::array<mpz_class, 4> lift_unimodular(const std::array<mpz_class, 4>& g,
                                         const mpz_class& n) {
    if (n == 1) return {1, 0, 0, 1};
    mpz_class a = g[0], b = g[1], c = g[2], d = g[3];
    mpz_class cp = (c == 0) ? n : c;
    mpz_class dp = d;
    for (long t = 0;; ++t) {
        dp = d + n * t;
        if (gcd(cp, dp) == 1) break;
        if (t > 4096) fail_internal("no coprime completion found");
    }
    mpz_class det = a * dp - b * cp;
    mpz_class m = det - 1;
    if (mpz_divisible_p(m.get_mpz_t(), n.get_mpz_t()) == 0)
        fail_internal("determinant is not 1 mod n");
    m /= n;
    mpz_class gg, x, y;
    mpz_gcdext(gg.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), dp.get_mpz_t(),
               cp.get_mpz_t());
    /* alpha*dp - beta*cp = -m with alpha = -m x, beta = m y */
    mpz_class alpha = -m * x, beta = m * y;
    std::array<mpz_class, 4> out = {a + n * alpha, b + n * beta, cp, dp};
    if (out[0] * out[3] - out[1] * out[2] != 1)
        fail_internal("unimodular lift failed");
    return out;
}

void validate_canonical(const GL2QElement& g) {
    if (g.a < 1 || g.d < 1 || g.b < 0 || g.b >= g.d ||
        gcd(gcd(g.a, g.b), g.d) != 1)
        fail_domain("element is not in canonical form");
}

std::string mat_str(const std::array<mpz_class, 4>& m) {
    std::ostringstream os;
    os << "(" << m[0] << ", " << m[1] << "; " << m[2] << ", " << m[3] << ")";
    return os.str();
}

}  // namespace

std::string GL2QElement::str() const {
    std::ostringstream os;
    os << "(" << a << ", " << b << "; 0, " << d << ")";
    return os.str();
}

std::string LatticeClass::str() const {
    std::ostringstream os;
    os << "[p=" << p << " (" << pow_p(p, va) << ", " << b << "; 0, "
       << pow_p(p, vd) << ")]";
    return os.str();
}

GL2QElement canonicalize(const std::array<mpz_class, 4>& m) {
    return canonicalize_z(m[0], m[1], m[2], m[3]);
}

GL2QElement canonicalize(const std::array<mpq_class, 4>& m) {
    mpz_class den = 1;
    for (const mpq_class& x : m) den = lcm(den, x.get_den());
    std::array<mpz_class, 4> z;
    for (size_t i = 0; i < 4; ++i) {
        mpq_class s = m[i] * den;
        s.canonicalize();
        if (s.get_den() != 1) fail_internal("denominator clearing failed");
        z[i] = s.get_num();
    }
    return canonicalize_z(z[0], z[1], z[2], z[3]);
}

GL2QElement translate(const GL2QElement& g, const GL2QElement& h) {
    /* g * adj(h); the positive scalar det(h) does not change the coset */
    return canonicalize_z(g.a * h.d, -g.a * h.b + g.b * h.a, 0, g.d * h.a);
}

LatticeClass base_class(long p) {
    if (!is_prime_long(p)) fail_domain("tree index must be prime");
    LatticeClass u;
    u.p = p;
    return u;
}

LatticeClass local_class(const GL2QElement& g, long p) {
    if (!is_prime_long(p)) fail_domain("tree index must be prime");
    validate_canonical(g);
    return local_of_triangular(p, g.a, g.b, g.d);
}

long tree_distance(const LatticeClass& u, const LatticeClass& v) {
    if (u.p != v.p) fail_domain("vertices live in different trees");
    long p = u.p;
    /* relative position matrix M = V * adj(U), upper triangular */
    mpz_class au = pow_p(p, u.va), du = pow_p(p, u.vd);
    mpz_class av = pow_p(p, v.va), dv = pow_p(p, v.vd);
    mpz_class m00 = av * du;
    mpz_class m01 = -av * u.b + v.b * au;
    mpz_class m11 = dv * au;
    long vdet = valuation(m00 * m11, p);
    long vmin = std::min(valuation(m00, p), valuation(m11, p));
    if (m01 != 0) vmin = std::min(vmin, valuation(m01, p));
    long dist = vdet - 2 * vmin;
    if (dist < 0) fail_internal("negative path length");
    return dist;
}

std::vector<LatticeClass> neighbors(const LatticeClass& u) {
    long p = u.p;
    mpz_class A = pow_p(p, u.va), D = pow_p(p, u.vd);
    std::vector<LatticeClass> out;
    out.reserve((size_t)p + 1);
    for (long k = 0; k < p; ++k)
        out.push_back(local_of_triangular(p, A, u.b + k * D, p * D));
    out.push_back(local_of_triangular(p, p * A, p * u.b, D));
    for (size_t i = 0; i < out.size(); ++i)
        for (size_t j = i + 1; j < out.size(); ++j)
            if (out[i] == out[j]) fail_internal("adjacent classes collide");
    return out;
}

std::vector<long> bad_directions(long p) {
    if (!is_prime_long(p)) fail_domain("tree index must be prime");
    std::vector<long> ks;
    for (long k = 0; k < p; ++k)
        if ((k * k - k + 1) % p == 0) ks.push_back(k);
    return ks;
}

bool exact_j_zero_test(const GL2QElement& g,
                       const std::array<mpz_class, 4>& gamma) {
    validate_canonical(g);
    if (gamma[0] * gamma[3] - gamma[1] * gamma[2] != 1)
        fail_domain("twist matrix must have determinant 1");
    /* the corner zeta = (-1 + i sqrt 3)/2, moved by g * gamma */
    jfun::QuadPoint z = jfun::QuadPoint::make(-1, 1, 2, 3);
    mpz_class a = g.a * gamma[0] + g.b * gamma[2];
    mpz_class b = g.a * gamma[1] + g.b * gamma[3];
    mpz_class c = g.d * gamma[2];
    mpz_class d = g.d * gamma[3];
    z.mobius(a, b, c, d);
    z.reduce();
    return z.is_j_zero();
}

SeparationWitness separate(const std::vector<GL2QElement>& gs) {
    size_t k = gs.size();
    if (k == 0) fail_domain("nothing to separate");
    for (const GL2QElement& g : gs) validate_canonical(g);
    for (size_t i = 0; i < k; ++i)
        for (size_t j = i + 1; j < k; ++j)
            if (gs[i] == gs[j]) fail_domain("cosets must be distinct");

    /* ---- choose the surviving index by refining along each tree ---- */
    std::set<long> prime_pool;
    for (const GL2QElement& g : gs) {
        mpz_class n = g.det();
        if (!n.fits_slong_p())
            fail_budget("determinant too large to factor");
        for (long q : prime_factors(n.get_si())) prime_pool.insert(q);
    }
    std::vector<size_t> live(k);
    std::iota(live.begin(), live.end(), (size_t)0);
    for (long q : prime_pool) {
        if (live.size() <= 1) break;
        std::vector<LatticeClass> img;
        img.reserve(live.size());
        for (size_t i : live) img.push_back(local_class(gs[i], q));
        bool all_equal = true;
        for (size_t t = 1; t < img.size(); ++t)
            if (!(img[t] == img[0])) { all_equal = false; break; }
        if (all_equal) continue;
        long dmax = -1;
        for (size_t s = 0; s < img.size(); ++s)
            for (size_t t = s + 1; t < img.size(); ++t)
                dmax = std::max(dmax, tree_distance(img[s], img[t]));
        /* endpoint vertices of maximal pairs; keep the least canonical */
        std::optional<LatticeClass> pick;
        for (size_t s = 0; s < img.size(); ++s)
            for (size_t t = s + 1; t < img.size(); ++t)
                if (tree_distance(img[s], img[t]) == dmax) {
                    if (!pick || img[s] < *pick) pick = img[s];
                    if (img[t] < *pick) pick = img[t];
                }
        std::vector<size_t> next;
        for (size_t t = 0; t < img.size(); ++t)
            if (img[t] == *pick) next.push_back(live[t]);
        live = next;
    }
    if (live.size() != 1) fail_internal("refinement did not isolate a coset");
    size_t surv = live[0];

    /* ---- translate so the survivor becomes the identity coset ---- */
    std::vector<GL2QElement> h;
    h.reserve(k);
    for (const GL2QElement& g : gs) h.push_back(translate(g, gs[surv]));

    /* ---- collect direction constraints per prime ----
     * A translated non-survivor dies for free at any prime q = 2 mod 3
     * dividing its determinant (the special classes there reduce to the
     * base vertex alone), and at q = 3 when it sits at depth >= 2 (the
     * special classes reach depth 1 only).  Otherwise we constrain the
     * twist so the first edge of its image avoids every bad direction. */
    std::map<long, std::vector<long>> want;
    for (size_t i = 0; i < k; ++i) {
        if (i == surv) continue;
        mpz_class n = h[i].det();
        if (!n.fits_slong_p())
            fail_budget("determinant too large to factor");
        std::vector<long> qs = prime_factors(n.get_si());
        bool free_kill = false;
        for (long q : qs)
            if (q % 3 == 2) { free_kill = true; break; }
        if (free_kill) continue;
        std::vector<long> split;
        for (long q : qs)
            if (q % 3 == 1) split.push_back(q);
        if (!split.empty()) {
            long q = split.back();
            long idx = first_edge_index(local_class(h[i], q));
            auto& v = want[q];
            if (std::find(v.begin(), v.end(), idx) == v.end())
                v.push_back(idx);
            continue;
        }
        /* determinant is a power of 3 */
        LatticeClass u = local_class(h[i], 3);
        if (u.va + u.vd != 1) continue;
        long idx = first_edge_index(u);
        auto& v = want[3];
        if (std::find(v.begin(), v.end(), idx) == v.end()) v.push_back(idx);
    }

    /* ---- search for a twist, verifying each candidate exactly ---- */
    for (long attempt = 0; attempt < 32; ++attempt) {
        mpz_class modulus = 1;
        std::array<mpz_class, 4> acc = {1, 0, 0, 1};
        bool buildable = true;
        for (const auto& [q, lines] : want) {
            std::optional<std::array<long, 4>> tw =
                nth_feasible_twist(q, lines, attempt);
            if (!tw) tw = nth_feasible_twist(q, lines, 0);
            if (!tw) { buildable = false; break; }
            mpz_class qz(q);
            for (size_t e = 0; e < 4; ++e)
                acc[e] = crt_pair(acc[e], modulus, mpz_class((*tw)[e]), qz);
            modulus *= q;
        }
        if (!buildable) break;
        std::array<mpz_class, 4> gamma = lift_unimodular(acc, modulus);

        std::vector<bool> per(k, false);
        size_t trues = 0, where = 0;
        for (size_t i = 0; i < k; ++i) {
            per[i] = exact_j_zero_test(h[i], gamma);
            if (per[i]) { ++trues; where = i; }
        }
        if (trues != 1) continue;

        SeparationWitness w;
        w.gamma = gamma;
        w.survivor = (long)where;
        w.translated = h;
        w.per_index = per;
        std::ostringstream os;
        os << "z = inverse(g[" << surv << "]) * " << mat_str(gamma)
           << " applied to (-1 + i*sqrt(3))/2; j(g[i] z) = 0 exactly for "
              "i = " << where;
        w.z_description = os.str();
        return w;
    }
    fail_indeterminate("no separating twist found within the search budget");
}

}  // namespace smrel::trees
