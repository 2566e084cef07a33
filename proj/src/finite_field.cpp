#include "uegs/finite_field.hpp"

#include <algorithm>
#include <numeric>
#include <random>

#include "uegs/error.hpp"

namespace uegs {

namespace fp_poly {

Poly trim(Poly a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
    return a;
}

namespace {

std::uint64_t inv_mod(std::uint64_t a, std::uint64_t p) {
    // extended Euclid; p prime, a != 0 mod p
    long long t = 0, nt = 1;
    long long r = static_cast<long long>(p), nr = static_cast<long long>(a % p);
    while (nr != 0) {
        long long q = r / nr;
        std::swap(t -= q * nt, nt);
        std::swap(r -= q * nr, nr);
    }
    if (r != 1) fail(ErrorKind::internal, "inv_mod: argument not invertible");
    if (t < 0) t += static_cast<long long>(p);
    return static_cast<std::uint64_t>(t);
}

Poly mul(const Poly& a, const Poly& b, std::uint64_t p) {
    if (a.empty() || b.empty()) return {};
    std::vector<unsigned __int128> buf(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t k = 0; k < b.size(); ++k) buf[i + k] += static_cast<unsigned __int128>(a[i]) * b[k];
    }
    Poly out(buf.size());
    for (size_t i = 0; i < buf.size(); ++i) out[i] = static_cast<std::uint64_t>(buf[i] % p);
    return trim(std::move(out));
}

Poly mod(Poly a, const Poly& f, std::uint64_t p) {
    a = trim(std::move(a));
    std::uint64_t linv = inv_mod(f.back(), p);
    while (a.size() >= f.size()) {
        std::uint64_t c = (a.back() * static_cast<unsigned __int128>(linv)) % p;
        size_t off = a.size() - f.size();
        if (c != 0)
            for (size_t i = 0; i < f.size(); ++i) {
                std::uint64_t s = (static_cast<unsigned __int128>(c) * f[i]) % p;
                a[off + i] = (a[off + i] + p - s) % p;
            }
        a.pop_back();
        while (!a.empty() && a.back() == 0) a.pop_back();
    }
    return a;
}

}  // namespace

Poly mulmod(const Poly& a, const Poly& b, const Poly& f, std::uint64_t p) {
    return mod(mul(a, b, p), f, p);
}

Poly powmod(const Poly& b, const BigInt& e, const Poly& f, std::uint64_t p) {
    Poly base = mod(b, f, p);
    Poly acc = {1};
    if (e == 0) return acc;
    size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    for (size_t i = bits; i-- > 0;) {
        acc = mulmod(acc, acc, f, p);
        if (mpz_tstbit(e.get_mpz_t(), i)) acc = mulmod(acc, base, f, p);
    }
    return acc;
}

Poly powmod_xq(const Poly& f, const BigInt& q, std::uint64_t p) {
    return powmod({0, 1}, q, f, p);
}

Poly gcd(Poly a, Poly b, std::uint64_t p) {
    a = trim(std::move(a));
    b = trim(std::move(b));
    while (!b.empty()) {
        Poly r = mod(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty() && a.back() != 1) {
        std::uint64_t s = inv_mod(a.back(), p);
        for (auto& c : a) c = (static_cast<unsigned __int128>(c) * s) % p;
    }
    return a;
}

bool is_irreducible(const Poly& f, std::uint64_t p) {
    long d = static_cast<long>(f.size()) - 1;
    if (d < 1) return false;
    BigInt pe(static_cast<unsigned long>(p));
    // x^{p^d} == x mod f
    BigInt q = pow_int(pe, static_cast<unsigned long>(d));
    Poly xq = powmod_xq(f, q, p);
    Poly x = mod({0, 1}, f, p);
    if (xq != x) return false;
    // for every prime divisor r of d: gcd(x^{p^{d/r}} - x, f) == 1
    long dd = d;
    for (long r = 2; r * r <= dd; ++r) {
        if (dd % r != 0) continue;
        while (dd % r == 0) dd /= r;
        BigInt qq = pow_int(pe, static_cast<unsigned long>(d / r));
        Poly g = powmod_xq(f, qq, p);
        // g - x
        if (g.size() < 2) g.resize(2, 0);
        g[1] = (g[1] + p - 1) % p;
        if (gcd(g, f, p).size() != 1) return false;
    }
    if (dd > 1) {
        BigInt qq = pow_int(pe, static_cast<unsigned long>(d / dd));
        Poly g = powmod_xq(f, qq, p);
        if (g.size() < 2) g.resize(2, 0);
        g[1] = (g[1] + p - 1) % p;
        if (gcd(g, f, p).size() != 1) return false;
    }
    return true;
}

}  // namespace fp_poly

long smallest_factor_degree(const fp_poly::Poly& f, std::uint64_t p) {
    long d = static_cast<long>(f.size()) - 1;
    if (d < 1) fail(ErrorKind::degenerate_input, "smallest_factor_degree: constant polynomial");
    BigInt pe(static_cast<unsigned long>(p));
    // iterate x^{p^k} mod f, k = 1..d
    fp_poly::Poly cur = {0, 1};
    for (long k = 1; k <= d; ++k) {
        cur = fp_poly::powmod(cur, pe, f, p);
        fp_poly::Poly g = cur;
        if (g.size() < 2) g.resize(2, 0);
        g[1] = (g[1] + p - 1) % p;
        if (fp_poly::gcd(g, f, p).size() != 1) return k;
    }
    fail(ErrorKind::internal, "smallest_factor_degree: no factor found up to degree d");
}

long ord_mod(long a, long n) {
    a %= n;
    if (a < 0) a += n;
    if (std::gcd(a, n) != 1) fail(ErrorKind::degenerate_input, "ord_mod: gcd(a, n) != 1");
    long x = a % n, k = 1;
    while (x != 1 % n) {
        x = (x * a) % n;
        if (++k > n) fail(ErrorKind::internal, "ord_mod: order exceeds modulus");
    }
    return k;
}

// ---------------------------------------------------------------------------

FqField::FqField(std::uint64_t p, unsigned m) : p_(p), m_(m) {
    if (p < 2 || m < 1) fail(ErrorKind::degenerate_input, "FqField: need p >= 2, m >= 1");
    if (m == 1) {
        mod_ = {0, 1};  // x; unused beyond bookkeeping
        return;
    }
    // lexicographically first monic irreducible of degree m over F_p:
    // scan (c_{m-1}, ..., c_1, c_0) in lexicographic order, i.e. counting the
    // low coefficients as base-p digits of an integer read high-to-low.
    std::vector<std::uint64_t> c(m, 0);
    while (true) {
        fp_poly::Poly f(c.begin(), c.end());
        f.push_back(1);
        if (fp_poly::is_irreducible(f, p)) {
            mod_ = std::move(f);
            return;
        }
        // increment (c_0 least significant in lexicographic order of the
        // tuple (c_{m-1}, ..., c_0))
        long i = 0;
        while (i < static_cast<long>(m) && c[i] == p - 1) c[i++] = 0;
        if (i == static_cast<long>(m))
            fail(ErrorKind::internal, "FqField: no irreducible polynomial found");
        ++c[i];
    }
}

BigInt FqField::order() const { return pow_int(BigInt(static_cast<unsigned long>(p_)), m_); }

FqField::E FqField::one() const {
    E e(m_, 0);
    e[0] = 1;
    return e;
}

FqField::E FqField::from_int(long v) const {
    long r = v % static_cast<long>(p_);
    if (r < 0) r += static_cast<long>(p_);
    E e(m_, 0);
    e[0] = static_cast<std::uint64_t>(r);
    return e;
}

FqField::E FqField::from_rat(const BigRat& r) const {
    BigInt num = r.get_num() % static_cast<long>(p_);
    BigInt den = r.get_den() % static_cast<long>(p_);
    long n = num.get_si(), d = den.get_si();
    if (n < 0) n += static_cast<long>(p_);
    if (d == 0) fail(ErrorKind::degenerate_input, "from_rat: denominator divisible by p");
    E e = from_int(n);
    if (d != 1) e = mul(e, inv(from_int(d)));
    return e;
}

bool FqField::is_zero(const E& a) const {
    for (auto c : a)
        if (c != 0) return false;
    return true;
}

FqField::E FqField::add(const E& a, const E& b) const {
    E o(m_);
    for (unsigned i = 0; i < m_; ++i) {
        o[i] = a[i] + b[i];
        if (o[i] >= p_) o[i] -= p_;
    }
    return o;
}

FqField::E FqField::sub(const E& a, const E& b) const {
    E o(m_);
    for (unsigned i = 0; i < m_; ++i) o[i] = (a[i] + p_ - b[i]) % p_;
    return o;
}

FqField::E FqField::neg(const E& a) const { return sub(zero(), a); }

FqField::E FqField::mul(const E& a, const E& b) const {
    if (m_ == 1)
        return {static_cast<std::uint64_t>((static_cast<unsigned __int128>(a[0]) * b[0]) % p_)};
    std::vector<unsigned __int128> buf(2 * m_ - 1, 0);
    for (unsigned i = 0; i < m_; ++i) {
        if (a[i] == 0) continue;
        for (unsigned k = 0; k < m_; ++k) buf[i + k] += static_cast<unsigned __int128>(a[i]) * b[k];
    }
    // reduce degrees m .. 2m-2 using x^m = -(mod_[0] + ... + mod_[m-1] x^{m-1})
    for (unsigned d = 2 * m_ - 2; d >= m_; --d) {
        std::uint64_t c = static_cast<std::uint64_t>(buf[d] % p_);
        buf[d] = 0;
        if (c == 0) continue;
        for (unsigned i = 0; i < m_; ++i) {
            unsigned __int128 s = static_cast<unsigned __int128>(c) * (p_ - mod_[i] % p_);
            buf[d - m_ + i] += s % p_;
        }
    }
    E o(m_);
    for (unsigned i = 0; i < m_; ++i) o[i] = static_cast<std::uint64_t>(buf[i] % p_);
    return o;
}

FqField::E FqField::pow(const E& a, const BigInt& e) const {
    BigInt q1 = order() - 1;
    BigInt exp = e % q1;
    if (exp < 0) exp += q1;
    E acc = one();
    size_t bits = mpz_sizeinbase(exp.get_mpz_t(), 2);
    if (exp == 0) return acc;
    for (size_t i = bits; i-- > 0;) {
        acc = mul(acc, acc);
        if (mpz_tstbit(exp.get_mpz_t(), i)) acc = mul(acc, a);
    }
    return acc;
}

FqField::E FqField::inv(const E& a) const {
    if (is_zero(a)) fail(ErrorKind::degenerate_input, "FqField::inv: zero element");
    return pow(a, order() - 2);
}

std::optional<FqField::E> FqField::sqrt(const E& a, std::uint64_t seed) const {
    if (is_zero(a)) return zero();
    BigInt q = order();
    // Euler criterion
    if (pow(a, (q - 1) / 2) != one()) return std::nullopt;
    if (q % 4 == 3) {
        E r = pow(a, (q + 1) / 4);
        return r;
    }
    // generic: factor z^2 - a via equal-degree splitting
    std::vector<E> poly = {neg(a), zero(), one()};
    auto roots = roots_of(poly, seed);
    if (roots.empty()) fail(ErrorKind::internal, "sqrt: Euler said square but no root found");
    return roots.front();
}

namespace {

// polynomial arithmetic with coefficients in FqField
using FqPoly = std::vector<FqField::E>;

FqPoly fq_trim(const FqField& F, FqPoly a) {
    while (!a.empty() && F.is_zero(a.back())) a.pop_back();
    return a;
}

FqPoly fq_monic(const FqField& F, FqPoly a) {
    a = fq_trim(F, std::move(a));
    if (a.empty()) return a;
    auto s = F.inv(a.back());
    for (auto& c : a) c = F.mul(c, s);
    return a;
}

FqPoly fq_mod(const FqField& F, FqPoly a, const FqPoly& f) {
    a = fq_trim(F, std::move(a));
    auto linv = F.inv(f.back());
    while (a.size() >= f.size()) {
        auto c = F.mul(a.back(), linv);
        size_t off = a.size() - f.size();
        if (!F.is_zero(c))
            for (size_t i = 0; i + 1 < f.size(); ++i)
                a[off + i] = F.sub(a[off + i], F.mul(c, f[i]));
        a.pop_back();
        while (!a.empty() && F.is_zero(a.back())) a.pop_back();
    }
    return a;
}

FqPoly fq_mulmod(const FqField& F, const FqPoly& a, const FqPoly& b, const FqPoly& f) {
    if (a.empty() || b.empty()) return {};
    FqPoly buf(a.size() + b.size() - 1, F.zero());
    for (size_t i = 0; i < a.size(); ++i) {
        if (F.is_zero(a[i])) continue;
        for (size_t k = 0; k < b.size(); ++k)
            buf[i + k] = F.add(buf[i + k], F.mul(a[i], b[k]));
    }
    return fq_mod(F, std::move(buf), f);
}

FqPoly fq_gcd(const FqField& F, FqPoly a, FqPoly b) {
    a = fq_trim(F, std::move(a));
    b = fq_trim(F, std::move(b));
    while (!b.empty()) {
        FqPoly r = fq_mod(F, a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return fq_monic(F, std::move(a));
}

FqPoly fq_powmod(const FqField& F, FqPoly base, const BigInt& e, const FqPoly& f) {
    FqPoly acc = {F.one()};
    base = fq_mod(F, std::move(base), f);
    if (e == 0) return acc;
    size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    for (size_t i = bits; i-- > 0;) {
        acc = fq_mulmod(F, acc, acc, f);
        if (mpz_tstbit(e.get_mpz_t(), i)) acc = fq_mulmod(F, acc, base, f);
    }
    return acc;
}

FqField::E fq_random_elem(const FqField& F, std::mt19937_64& rng) {
    FqField::E e(F.deg());
    for (unsigned i = 0; i < F.deg(); ++i) e[i] = rng() % F.p();
    return e;
}

// collect roots of a squarefree product of linear factors
void split_linear(const FqField& F, const FqPoly& f, std::mt19937_64& rng,
                  std::vector<FqField::E>& out) {
    long d = static_cast<long>(f.size()) - 1;
    if (d <= 0) return;
    if (d == 1) {
        out.push_back(F.neg(f[0]));  // monic x + c
        return;
    }
    BigInt half = (F.order() - 1) / 2;
    for (int tries = 0; tries < 200; ++tries) {
        // random linear poly a + x
        FqPoly probe = {fq_random_elem(F, rng), F.one()};
        FqPoly w = fq_powmod(F, probe, half, f);
        if (w.empty())
            continue;
        w[0] = F.sub(w[0], F.one());
        FqPoly g = fq_gcd(F, w, f);
        long gd = static_cast<long>(g.size()) - 1;
        if (gd <= 0 || gd >= d) continue;
        split_linear(F, g, rng, out);
        // f / g
        FqPoly q;
        {
            FqPoly a = f;
            q.assign(f.size() - g.size() + 1, F.zero());
            auto linv = F.inv(g.back());
            while (a.size() >= g.size()) {
                auto c = F.mul(a.back(), linv);
                size_t off = a.size() - g.size();
                q[off] = c;
                for (size_t i = 0; i < g.size(); ++i) a[off + i] = F.sub(a[off + i], F.mul(c, g[i]));
                while (!a.empty() && F.is_zero(a.back())) a.pop_back();
            }
        }
        split_linear(F, fq_trim(F, std::move(q)), rng, out);
        return;
    }
    fail(ErrorKind::internal, "roots_of: equal-degree splitting failed to converge");
}

}  // namespace

std::vector<FqField::E> FqField::roots_of(const std::vector<E>& poly, std::uint64_t seed) const {
    FqPoly f = fq_monic(*this, poly);
    if (f.size() <= 1) return {};
    // keep only the product of the linear factors: gcd(f, x^q - x)
    FqPoly diff = fq_powmod(*this, FqPoly{zero(), one()}, order(), f);
    if (diff.size() < 2) diff.resize(2, zero());
    diff[1] = sub(diff[1], one());
    FqPoly lin = fq_gcd(*this, diff, f);
    if (lin.size() <= 1) return {};
    std::vector<E> out;
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
    split_linear(*this, lin, rng, out);
    std::sort(out.begin(), out.end());
    return out;
}

FqField::E FqField::nth_root_of_unity(long n, std::uint64_t seed) const {
    BigInt q1 = order() - 1;
    if (n <= 0 || q1 % n != 0)
        fail(ErrorKind::unsupported, "nth_root_of_unity: n does not divide q - 1");
    BigInt e = q1 / n;
    std::mt19937_64 rng(seed ^ 0xda3e39cb94b95bdbULL);
    for (int tries = 0; tries < 500; ++tries) {
        E r = fq_random_elem(*this, rng);
        if (is_zero(r)) continue;
        E z = pow(r, e);
        // exact order n: z^n = 1 automatic; check z^{n/r} != 1 for prime r | n
        bool exact = true;
        long nn = n;
        for (long r2 = 2; r2 * r2 <= nn; ++r2) {
            if (nn % r2 != 0) continue;
            while (nn % r2 == 0) nn /= r2;
            if (pow(z, BigInt(n / r2)) == one()) {
                exact = false;
                break;
            }
        }
        if (exact && nn > 1 && pow(z, BigInt(n / nn)) == one()) exact = false;
        if (exact) return z;
    }
    fail(ErrorKind::internal, "nth_root_of_unity: no element of exact order found");
}

long FqField::discrete_log_in_mu_n(const E& val, const E& zeta, long n) const {
    E cur = one();
    for (long e = 0; e < n; ++e) {
        if (cur == val) return e;
        cur = mul(cur, zeta);
    }
    fail(ErrorKind::degenerate_input, "discrete_log_in_mu_n: value not in the cyclic group");
}

}  // namespace uegs
