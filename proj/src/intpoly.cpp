#include "smrel/intpoly.hpp"

#include <map>
#include <mutex>
#include <sstream>

namespace smrel {

void IntPoly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

IntPoly IntPoly::constant(const mpz_class& a) {
    IntPoly p;
    if (a != 0) p.c_.push_back(a);
    return p;
}

IntPoly IntPoly::monomial(const mpz_class& a, size_t k) {
    IntPoly p;
    if (a != 0) {
        p.c_.assign(k + 1, mpz_class(0));
        p.c_[k] = a;
    }
    return p;
}

IntPoly IntPoly::xn_minus_1(unsigned long n) {
    IntPoly p;
    p.c_.assign(n + 1, mpz_class(0));
    p.c_[0] = -1;
    p.c_[n] = 1;
    return p;
}

const mpz_class& IntPoly::lc() const {
    if (c_.empty()) fail_internal("lc of zero polynomial");
    return c_.back();
}

IntPoly IntPoly::add(const IntPoly& o) const {
    std::vector<mpz_class> r(std::max(c_.size(), o.c_.size()), mpz_class(0));
    for (size_t i = 0; i < c_.size(); ++i) r[i] = c_[i];
    for (size_t i = 0; i < o.c_.size(); ++i) r[i] += o.c_[i];
    return IntPoly(std::move(r));
}

IntPoly IntPoly::sub(const IntPoly& o) const {
    std::vector<mpz_class> r(std::max(c_.size(), o.c_.size()), mpz_class(0));
    for (size_t i = 0; i < c_.size(); ++i) r[i] = c_[i];
    for (size_t i = 0; i < o.c_.size(); ++i) r[i] -= o.c_[i];
    return IntPoly(std::move(r));
}

IntPoly IntPoly::neg() const {
    std::vector<mpz_class> r(c_.size());
    for (size_t i = 0; i < c_.size(); ++i) r[i] = -c_[i];
    return IntPoly(std::move(r));
}

IntPoly IntPoly::mul(const IntPoly& o) const {
    if (is_zero() || o.is_zero()) return IntPoly();
    std::vector<mpz_class> r(c_.size() + o.c_.size() - 1, mpz_class(0));
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        for (size_t j = 0; j < o.c_.size(); ++j) {
            if (o.c_[j] == 0) continue;
            r[i + j] += c_[i] * o.c_[j];
        }
    }
    return IntPoly(std::move(r));
}

IntPoly IntPoly::mul_z(const mpz_class& k) const {
    if (k == 0) return IntPoly();
    std::vector<mpz_class> r(c_.size());
    for (size_t i = 0; i < c_.size(); ++i) r[i] = c_[i] * k;
    return IntPoly(std::move(r));
}

IntPoly IntPoly::shift(size_t k) const {
    if (is_zero()) return IntPoly();
    std::vector<mpz_class> r(c_.size() + k, mpz_class(0));
    for (size_t i = 0; i < c_.size(); ++i) r[i + k] = c_[i];
    return IntPoly(std::move(r));
}

IntPoly IntPoly::derivative() const {
    if (c_.size() <= 1) return IntPoly();
    std::vector<mpz_class> r(c_.size() - 1);
    for (size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * static_cast<long>(i);
    return IntPoly(std::move(r));
}

IntPoly IntPoly::reverse() const {
    std::vector<mpz_class> r(c_.rbegin(), c_.rend());
    return IntPoly(std::move(r));
}

IntPoly IntPoly::div_exact_monic(const IntPoly& d) const {
    if (d.is_zero() || d.lc() != 1) fail_internal("div_exact_monic: divisor not monic");
    if (is_zero()) return IntPoly();
    if (degree() < d.degree()) fail_internal("div_exact_monic: not divisible");
    std::vector<mpz_class> rem = c_;
    size_t dd = static_cast<size_t>(d.degree());
    std::vector<mpz_class> q(c_.size() - dd, mpz_class(0));
    for (size_t i = c_.size(); i-- > dd;) {
        mpz_class f = rem[i];
        if (f == 0) continue;
        q[i - dd] = f;
        for (size_t j = 0; j <= dd; ++j) rem[i - dd + j] -= f * d.c_[j];
    }
    for (const auto& r : rem)
        if (r != 0) fail_internal("div_exact_monic: nonzero remainder");
    return IntPoly(std::move(q));
}

IntPoly IntPoly::rem_monic(const IntPoly& d) const {
    if (d.is_zero() || d.lc() != 1) fail_internal("rem_monic: divisor not monic");
    if (is_zero() || degree() < d.degree()) return *this;
    std::vector<mpz_class> rem = c_;
    size_t dd = static_cast<size_t>(d.degree());
    for (size_t i = rem.size(); i-- > dd;) {
        mpz_class f = rem[i];
        if (f == 0) continue;
        for (size_t j = 0; j <= dd; ++j) rem[i - dd + j] -= f * d.c_[j];
    }
    rem.resize(dd);
    return IntPoly(std::move(rem));
}

mpz_class IntPoly::content() const {
    mpz_class g = 0;
    for (const auto& a : c_) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), a.get_mpz_t());
        if (g == 1) break;
    }
    return g;
}

IntPoly IntPoly::primitive_part() const {
    if (is_zero()) return IntPoly();
    mpz_class g = content();
    if (lc() < 0) g = -g;
    std::vector<mpz_class> r(c_.size());
    for (size_t i = 0; i < c_.size(); ++i) r[i] = c_[i] / g;
    return IntPoly(std::move(r));
}

IntPoly IntPoly::gcd(const IntPoly& a, const IntPoly& b) {
    if (a.is_zero()) return b.is_zero() ? IntPoly() : b.primitive_part();
    if (b.is_zero()) return a.primitive_part();
    IntPoly f = a.primitive_part(), g = b.primitive_part();
    if (f.degree() < g.degree()) std::swap(f, g);
    /* primitive pseudo-remainder sequence */
    while (!g.is_zero()) {
        /* prem(f, g): scale f by lc(g)^(deg f - deg g + 1), divide */
        long df = f.degree(), dg = g.degree();
        mpz_class l = g.lc();
        mpz_class scale;
        mpz_pow_ui(scale.get_mpz_t(), l.get_mpz_t(), (unsigned long)(df - dg + 1));
        std::vector<mpz_class> r(f.coeffs());
        for (auto& x : r) x *= scale;
        for (long i = df; i >= dg; --i) {
            if (r[(size_t)i] == 0) continue;
            mpz_class q = r[(size_t)i] / l;  /* exact by construction */
            for (long k = 0; k <= dg; ++k)
                r[(size_t)(i - dg + k)] -= q * g[(size_t)k];
        }
        r.resize((size_t)dg);
        IntPoly rem{std::move(r)};
        f = std::move(g);
        g = rem.primitive_part();
    }
    return f;
}

bool IntPoly::is_squarefree() const {
    if (is_zero()) return false;
    if (degree() <= 1) return true;
    return gcd(*this, derivative()).degree() == 0;
}

mpz_class IntPoly::eval_z(const mpz_class& x) const {
    mpz_class acc = 0;
    for (size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
    return acc;
}

mpq_class IntPoly::eval_q(const mpq_class& x) const {
    mpq_class acc = 0;
    for (size_t i = c_.size(); i-- > 0;) acc = acc * x + mpq_class(c_[i]);
    return acc;
}

CBall IntPoly::eval_ball(const CBall& x) const {
    Prec p = x.prec();
    CBall acc(p);
    for (size_t i = c_.size(); i-- > 0;) {
        CBall t(p);
        t.set_mul(acc, x);
        CBall coeff = CBall::of_z(c_[i], p);
        acc.set_add(t, coeff);
    }
    return acc;
}

mpz_class IntPoly::length() const {
    mpz_class s = 0;
    for (const auto& a : c_) s += abs(a);
    return s;
}

std::string IntPoly::str(const std::string& var) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (size_t i = c_.size(); i-- > 0;) {
        if (c_[i] == 0) continue;
        mpz_class a = c_[i];
        if (first) {
            if (a < 0) os << "-";
            first = false;
        } else {
            os << (a < 0 ? " - " : " + ");
        }
        mpz_class m = abs(a);
        if (i == 0 || m != 1) os << m.get_str();
        if (i > 0) {
            if (m != 1) os << "*";
            os << var;
            if (i > 1) os << "^" << i;
        }
    }
    return os.str();
}

const IntPoly& IntPoly::cyclotomic(unsigned long n) {
    static std::mutex mu;
    static std::map<unsigned long, IntPoly> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    if (n == 0) fail_domain("cyclotomic(0)");
    IntPoly p = IntPoly::xn_minus_1(n);
    for (long d : divisors_of(static_cast<long>(n))) {
        if (d == static_cast<long>(n)) continue;
        /* recursion depth is the divisor chain length; harmless.  The cache
         * lock is not re-entrant, so compute divisors via a helper. */
        const IntPoly* sub;
        auto jt = cache.find(static_cast<unsigned long>(d));
        if (jt != cache.end()) {
            sub = &jt->second;
        } else {
            /* compute Phi_d inline without re-locking */
            IntPoly pd = IntPoly::xn_minus_1(static_cast<unsigned long>(d));
            for (long e : divisors_of(d)) {
                if (e == d) continue;
                pd = pd.div_exact_monic(cache.at(static_cast<unsigned long>(e)));
            }
            sub = &cache.emplace(static_cast<unsigned long>(d), std::move(pd)).first->second;
        }
        p = p.div_exact_monic(*sub);
    }
    return cache.emplace(n, std::move(p)).first->second;
}

CycloRing::CycloRing(unsigned long n) : n_(n), phi_(IntPoly::cyclotomic(n)) {}

IntPoly CycloRing::zeta_pow(long k) const {
    long r = k % static_cast<long>(n_);
    if (r < 0) r += static_cast<long>(n_);
    return reduce(IntPoly::monomial(1, static_cast<size_t>(r)));
}

std::vector<long> divisors_of(long n) {
    std::vector<long> small, big;
    for (long d = 1; d * d <= n; ++d) {
        if (n % d == 0) {
            small.push_back(d);
            if (d != n / d) big.push_back(n / d);
        }
    }
    for (size_t i = big.size(); i-- > 0;) small.push_back(big[i]);
    return small;
}

long euler_phi(long n) {
    long r = n;
    for (long p : prime_factors(n)) r -= r / p;
    return r;
}

bool is_prime_long(long n) {
    if (n < 2) return false;
    for (long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

std::vector<long> prime_factors(long n) {
    std::vector<long> ps;
    for (long p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            ps.push_back(p);
            while (n % p == 0) n /= p;
        }
    }
    if (n > 1) ps.push_back(n);
    return ps;
}

long psi_index(long n) {
    long r = n;
    for (long p : prime_factors(n)) r += r / p;
    return r;
}

}  // namespace smrel
