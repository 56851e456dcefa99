#include "smrel/lattice.hpp"

#include "smrel/util.hpp"

namespace smrel::lattice {

namespace {

mpz_class round_q(const mpq_class& x) {
    mpq_class t = x + mpq_class(1, 2);
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), t.get_num().get_mpz_t(), t.get_den().get_mpz_t());
    return q;
}

struct Gso {
    std::vector<std::vector<mpq_class>> mu;  /* mu[i][j], j < i */
    std::vector<mpq_class> nb;               /* |b_i*|^2 */
};

Gso gram_schmidt(const ZMat& b) {
    size_t n = b.size(), m = b.empty() ? 0 : b[0].size();
    Gso g;
    g.mu.assign(n, {});
    g.nb.assign(n, 0);
    /* b_i* = b_i - sum_{j<i} mu_ij b_j*; track b_i* as rational vectors */
    std::vector<std::vector<mpq_class>> star(n, std::vector<mpq_class>(m));
    for (size_t i = 0; i < n; ++i) {
        for (size_t k = 0; k < m; ++k) star[i][k] = mpq_class(b[i][k]);
        g.mu[i].resize(i);
        for (size_t j = 0; j < i; ++j) {
            if (g.nb[j] == 0) {
                g.mu[i][j] = 0;
                continue;
            }
            mpq_class dot = 0;
            for (size_t k = 0; k < m; ++k) dot += mpq_class(b[i][k]) * star[j][k];
            g.mu[i][j] = dot / g.nb[j];
            for (size_t k = 0; k < m; ++k) star[i][k] -= g.mu[i][j] * star[j][k];
        }
        for (size_t k = 0; k < m; ++k) g.nb[i] += star[i][k] * star[i][k];
    }
    return g;
}

}  // namespace

ZMat kernel(const ZMat& a) {
    size_t n = a.size();
    if (n == 0) return {};
    size_t m = a[0].size();
    ZMat h = a;
    ZMat u(n, ZVec(n, 0));
    for (size_t i = 0; i < n; ++i) u[i][i] = 1;

    size_t r = 0;
    for (size_t c = 0; c < m && r < n; ++c) {
        /* clear column c below row r down to a single pivot */
        for (;;) {
            size_t piv = n;
            for (size_t i = r; i < n; ++i) {
                if (h[i][c] == 0) continue;
                if (piv == n ||
                    mpz_cmpabs(h[i][c].get_mpz_t(), h[piv][c].get_mpz_t()) < 0)
                    piv = i;
            }
            if (piv == n) break;  /* column already clear */
            bool others = false;
            for (size_t i = r; i < n; ++i) {
                if (i == piv || h[i][c] == 0) continue;
                others = true;
                /* |h[i][c]| >= |pivot|, so the truncated quotient is nonzero
                 * and each pass shrinks the column like the Euclid algorithm */
                mpz_class q = h[i][c] / h[piv][c];
                for (size_t k = 0; k < m; ++k) h[i][k] -= q * h[piv][k];
                for (size_t k = 0; k < n; ++k) u[i][k] -= q * u[piv][k];
            }
            if (!others) {
                std::swap(h[piv], h[r]);
                std::swap(u[piv], u[r]);
                if (h[r][c] < 0) {
                    for (auto& x : h[r]) x = -x;
                    for (auto& x : u[r]) x = -x;
                }
                ++r;
                break;
            }
        }
    }
    ZMat ker;
    for (size_t i = r; i < n; ++i) ker.push_back(u[i]);
    return ker;
}

void lll_reduce(ZMat& b) {
    size_t n = b.size();
    if (n <= 1) return;
    const mpq_class delta(99, 100);
    Gso g = gram_schmidt(b);

    size_t k = 1;
    long guard = 0;
    while (k < n) {
        if (++guard > 2000000) fail_internal("basis reduction did not terminate");
        /* size-reduce b_k against all previous rows */
        for (size_t j = k; j-- > 0;) {
            mpz_class q = round_q(g.mu[k][j]);
            if (q == 0) continue;
            for (size_t t = 0; t < b[k].size(); ++t) b[k][t] -= q * b[j][t];
            for (size_t t = 0; t < j; ++t) g.mu[k][t] -= mpq_class(q) * g.mu[j][t];
            g.mu[k][j] -= q;
        }
        mpq_class lhs = g.nb[k];
        mpq_class rhs = (delta - g.mu[k][k - 1] * g.mu[k][k - 1]) * g.nb[k - 1];
        if (lhs >= rhs) {
            ++k;
        } else {
            std::swap(b[k], b[k - 1]);
            g = gram_schmidt(b);  /* small dimensions: recompute is cheapest */
            if (k > 1) --k;
        }
    }
}

mpq_class min_gs_norm2(const ZMat& b) {
    if (b.empty()) fail_domain("empty basis");
    Gso g = gram_schmidt(b);
    mpq_class m = g.nb[0];
    for (size_t i = 1; i < b.size(); ++i)
        if (g.nb[i] < m) m = g.nb[i];
    return m;
}

}  // namespace smrel::lattice
