#include "uegs/cyclotomic.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <sstream>

#include "uegs/error.hpp"

namespace uegs {

unsigned euler_phi(unsigned m) {
    unsigned out = m;
    for (unsigned p = 2; p * p <= m; ++p) {
        if (m % p == 0) {
            out -= out / p;
            while (m % p == 0) m /= p;
        }
    }
    if (m > 1) out -= out / m;
    return out;
}

namespace {

// Exact division of integer polynomials, remainder must vanish.
std::vector<BigInt> exact_div(const std::vector<BigInt>& num, const std::vector<BigInt>& den) {
    std::vector<BigInt> r = num;
    int dn = static_cast<int>(r.size()) - 1;
    int dd = static_cast<int>(den.size()) - 1;
    std::vector<BigInt> q(dn - dd + 1);
    for (int i = dn - dd; i >= 0; --i) {
        // den is monic in every use here
        BigInt c = r[i + dd];
        q[i] = c;
        for (int j = 0; j <= dd; ++j) r[i + j] -= c * den[j];
    }
    for (const auto& c : r)
        if (c != 0) fail(ErrorKind::internal, "cyclotomic: non-exact polynomial division");
    return q;
}

struct CycTable {
    unsigned m;
    unsigned phi;
    std::vector<BigInt> poly;                // Phi_m, low-to-high, monic
    std::vector<std::vector<BigInt>> xpow;   // X^k mod Phi_m for 0 <= k <= max(2*phi-2, m)
};

const CycTable& table_for(unsigned m) {
    static std::mutex mu;
    static std::map<unsigned, std::unique_ptr<CycTable>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(m);
    if (it != cache.end()) return *it->second;

    auto t = std::make_unique<CycTable>();
    t->m = m;
    t->poly = cyclotomic_polynomial(m);
    t->phi = static_cast<unsigned>(t->poly.size()) - 1;
    unsigned phi = t->phi;
    unsigned maxk = std::max(2 * phi, m) + 1;
    t->xpow.resize(maxk + 1);
    for (unsigned k = 0; k <= maxk; ++k) {
        if (k < phi) {
            t->xpow[k].assign(phi, BigInt(0));
            t->xpow[k][k] = 1;
        } else {
            // X^k = X * X^{k-1} mod Phi
            const auto& prev = t->xpow[k - 1];
            std::vector<BigInt> cur(phi, BigInt(0));
            for (unsigned i = 0; i + 1 < phi; ++i) cur[i + 1] = prev[i];
            const BigInt& top = prev[phi - 1];
            if (top != 0)
                for (unsigned i = 0; i < phi; ++i) cur[i] -= top * t->poly[i];
            t->xpow[k] = std::move(cur);
        }
    }
    auto& ref = *t;
    cache.emplace(m, std::move(t));
    return ref;
}

}  // namespace

std::vector<BigInt> cyclotomic_polynomial(unsigned m) {
    if (m == 0) fail(ErrorKind::internal, "cyclotomic_polynomial: m must be positive");
    if (m == 1) return {BigInt(-1), BigInt(1)};  // X - 1
    // (X^m - 1) / prod_{d | m, d < m} Phi_d
    std::vector<BigInt> num(m + 1, BigInt(0));
    num[0] = -1;
    num[m] = 1;
    for (unsigned d = 1; d < m; ++d)
        if (m % d == 0) num = exact_div(num, cyclotomic_polynomial(d));
    return num;
}

Cyclotomic::Cyclotomic(unsigned m, std::vector<BigRat> coeffs) : m_(m), c_(std::move(coeffs)) {
    if (c_.size() != euler_phi(m_))
        fail(ErrorKind::internal, "Cyclotomic: coefficient vector has wrong length");
}

Cyclotomic Cyclotomic::zero(unsigned m) {
    return Cyclotomic(m, std::vector<BigRat>(euler_phi(m)));
}

Cyclotomic Cyclotomic::zeta_power(unsigned m, long k) {
    const CycTable& t = table_for(m);
    long kk = k % static_cast<long>(m);
    if (kk < 0) kk += m;
    std::vector<BigRat> c(t.phi);
    for (unsigned i = 0; i < t.phi; ++i) c[i] = BigRat(t.xpow[kk][i]);
    return Cyclotomic(m, std::move(c));
}

bool Cyclotomic::is_zero() const {
    for (const auto& x : c_)
        if (x != 0) return false;
    return true;
}

bool Cyclotomic::is_rational() const {
    for (size_t i = 1; i < c_.size(); ++i)
        if (c_[i] != 0) return false;
    return true;
}

BigRat Cyclotomic::rational_value() const {
    if (!is_rational()) fail(ErrorKind::internal, "Cyclotomic: not a rational value");
    return c_[0];
}

Cyclotomic Cyclotomic::embedded(unsigned m) const {
    if (m == m_) return *this;
    if (m % m_ != 0) fail(ErrorKind::internal, "Cyclotomic: embed target not a multiple");
    const CycTable& t = table_for(m);
    unsigned step = m / m_;
    std::vector<BigRat> out(t.phi);
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        const auto& row = t.xpow[(i * step) % m];
        for (unsigned k = 0; k < t.phi; ++k)
            if (row[k] != 0) out[k] += c_[i] * BigRat(row[k]);
    }
    return Cyclotomic(m, std::move(out));
}

namespace {
unsigned common_conductor(const Cyclotomic& a, const Cyclotomic& b) {
    return static_cast<unsigned>(std::lcm(a.conductor(), b.conductor()));
}
}  // namespace

Cyclotomic operator+(const Cyclotomic& a, const Cyclotomic& b) {
    unsigned m = common_conductor(a, b);
    Cyclotomic x = a.embedded(m), y = b.embedded(m);
    for (size_t i = 0; i < x.c_.size(); ++i) x.c_[i] += y.c_[i];
    return x;
}

Cyclotomic operator-(const Cyclotomic& a, const Cyclotomic& b) {
    unsigned m = common_conductor(a, b);
    Cyclotomic x = a.embedded(m), y = b.embedded(m);
    for (size_t i = 0; i < x.c_.size(); ++i) x.c_[i] -= y.c_[i];
    return x;
}

Cyclotomic Cyclotomic::operator-() const {
    Cyclotomic x = *this;
    for (auto& v : x.c_) v = -v;
    return x;
}

Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b) {
    // scalar fast paths (no embedding, no convolution)
    if (a.is_rational()) {
        Cyclotomic out = b;
        for (auto& v : out.c_) v *= a.c_[0];
        return out;
    }
    if (b.is_rational()) {
        Cyclotomic out = a;
        for (auto& v : out.c_) v *= b.c_[0];
        return out;
    }
    unsigned m = common_conductor(a, b);
    Cyclotomic x = a.embedded(m), y = b.embedded(m);
    const CycTable& t = table_for(m);
    unsigned phi = t.phi;
    if (phi == 1) {
        x.c_[0] *= y.c_[0];
        return x;
    }
    // integer convolution over a common denominator (avoids per-term mpq gcds)
    auto split = [phi](const std::vector<BigRat>& c, std::vector<BigInt>& num, BigInt& den) {
        den = 1;
        for (const auto& v : c) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), v.get_den_mpz_t());
        num.resize(phi);
        for (unsigned i = 0; i < phi; ++i) num[i] = c[i].get_num() * (den / c[i].get_den());
    };
    std::vector<BigInt> nx, ny;
    BigInt dx, dy;
    split(x.c_, nx, dx);
    split(y.c_, ny, dy);
    std::vector<BigInt> buf(2 * phi - 1);
    for (unsigned i = 0; i < phi; ++i) {
        if (nx[i] == 0) continue;
        for (unsigned j = 0; j < phi; ++j) {
            if (ny[j] == 0) continue;
            buf[i + j] += nx[i] * ny[j];
        }
    }
    for (unsigned k = 2 * phi - 2; k >= phi; --k) {
        if (buf[k] == 0) continue;
        const auto& row = t.xpow[k];
        for (unsigned i = 0; i < phi; ++i)
            if (row[i] != 0) buf[i] += buf[k] * row[i];
    }
    BigInt den = dx * dy;
    std::vector<BigRat> out(phi);
    for (unsigned i = 0; i < phi; ++i) {
        if (buf[i] == 0) continue;
        out[i] = BigRat(buf[i], den);
        out[i].canonicalize();
    }
    return Cyclotomic(m, std::move(out));
}

Cyclotomic Cyclotomic::inverse() const {
    if (is_zero()) fail(ErrorKind::internal, "Cyclotomic: division by zero");
    if (is_rational()) return Cyclotomic(m_, [&] {
        std::vector<BigRat> c(c_.size());
        c[0] = 1 / c_[0];
        return c;
    }());
    const CycTable& t = table_for(m_);
    // extended Euclid in Q[X] on (this, Phi_m); Phi_m irreducible so gcd = 1
    using Poly = std::vector<BigRat>;
    auto deg = [](const Poly& p) {
        for (int i = static_cast<int>(p.size()) - 1; i >= 0; --i)
            if (p[i] != 0) return i;
        return -1;
    };
    Poly r0(t.poly.size());
    for (size_t i = 0; i < t.poly.size(); ++i) r0[i] = BigRat(t.poly[i]);
    Poly r1 = c_;
    Poly s0{BigRat(0)}, s1{BigRat(1)};  // coefficients of `this` in the Bezout identity
    while (true) {
        int d1 = deg(r1);
        if (d1 < 0) fail(ErrorKind::internal, "Cyclotomic: inverse of zero residue");
        if (d1 == 0) {
            BigRat lead = r1[0];
            std::vector<BigRat> out(t.phi);
            for (size_t i = 0; i < s1.size() && i < t.phi; ++i) out[i] = s1[i] / lead;
            return Cyclotomic(m_, std::move(out));
        }
        // r0 = q*r1 + r2
        Poly rem = r0;
        Poly q(deg(r0) - d1 + 1);
        for (int i = deg(r0) - d1; i >= 0; --i) {
            BigRat coef = rem[i + d1] / r1[d1];
            if (coef == 0) continue;
            q[i] = coef;
            for (int j = 0; j <= d1; ++j) rem[i + j] -= coef * r1[j];
        }
        Poly s2(std::max(s0.size(), q.size() + s1.size()));
        for (size_t i = 0; i < s0.size(); ++i) s2[i] = s0[i];
        for (size_t i = 0; i < q.size(); ++i) {
            if (q[i] == 0) continue;
            for (size_t j = 0; j < s1.size(); ++j) s2[i + j] -= q[i] * s1[j];
        }
        r0 = std::move(r1);
        r1 = std::move(rem);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
}

Cyclotomic operator/(const Cyclotomic& a, const Cyclotomic& b) {
    unsigned m = common_conductor(a, b);
    return a.embedded(m) * b.embedded(m).inverse();
}

bool operator==(const Cyclotomic& a, const Cyclotomic& b) {
    unsigned m = common_conductor(a, b);
    return a.embedded(m).c_ == b.embedded(m).c_;
}

Cyclotomic Cyclotomic::galois(long c) const {
    long cc = c % static_cast<long>(m_);
    if (cc < 0) cc += m_;
    if (std::gcd(static_cast<long>(m_), cc) != 1)
        fail(ErrorKind::internal, "Cyclotomic: galois exponent not coprime to conductor");
    const CycTable& t = table_for(m_);
    std::vector<BigRat> out(t.phi);
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        const auto& row = t.xpow[(i * static_cast<unsigned long>(cc)) % m_];
        for (unsigned k = 0; k < t.phi; ++k)
            if (row[k] != 0) out[k] += c_[i] * BigRat(row[k]);
    }
    return Cyclotomic(m_, std::move(out));
}

std::optional<Cyclotomic> Cyclotomic::to_subfield(unsigned d, long* violating) const {
    if (d == 0 || m_ % d != 0) fail(ErrorKind::internal, "Cyclotomic: to_subfield needs d | m");
    if (d == m_) return *this;
    // fixed-field membership: invariance under every automorphism fixing Q(zeta_d)
    for (unsigned c = 2; c < m_; ++c) {
        if (std::gcd(c, m_) != 1 || c % d != 1 % d) continue;
        if (!(galois(static_cast<long>(c)) == *this)) {
            if (violating) *violating = static_cast<long>(c);
            return std::nullopt;
        }
    }
    // solve sum_j q_j zeta_m^{j m/d} = this for q_j, j < phi(d)
    const CycTable& t = table_for(m_);
    unsigned phid = euler_phi(d), phim = t.phi, step = m_ / d;
    // columns: basis images; rows: power-basis coordinates. Gaussian elimination.
    std::vector<std::vector<BigRat>> A(phim, std::vector<BigRat>(phid + 1));
    for (unsigned j = 0; j < phid; ++j) {
        const auto& row = t.xpow[(static_cast<unsigned long>(j) * step) % m_];
        for (unsigned i = 0; i < phim; ++i) A[i][j] = BigRat(row[i]);
    }
    for (unsigned i = 0; i < phim; ++i) A[i][phid] = c_[i];
    unsigned row = 0;
    std::vector<int> pivot_col(phid, -1);
    for (unsigned col = 0; col < phid && row < phim; ++col) {
        unsigned sel = row;
        while (sel < phim && A[sel][col] == 0) ++sel;
        if (sel == phim) continue;
        std::swap(A[sel], A[row]);
        BigRat inv = 1 / A[row][col];
        for (unsigned j = col; j <= phid; ++j) A[row][j] *= inv;
        for (unsigned i = 0; i < phim; ++i) {
            if (i == row || A[i][col] == 0) continue;
            BigRat f = A[i][col];
            for (unsigned j = col; j <= phid; ++j) A[i][j] -= f * A[row][j];
        }
        pivot_col[col] = static_cast<int>(row);
        ++row;
    }
    std::vector<BigRat> q(phid);
    for (unsigned col = 0; col < phid; ++col)
        if (pivot_col[col] >= 0) q[col] = A[pivot_col[col]][phid];
    for (unsigned i = row; i < phim; ++i)
        if (A[i][phid] != 0) return std::nullopt;  // inconsistent (cannot happen after the check)
    return Cyclotomic(d, std::move(q));
}

std::string Cyclotomic::str() const {
    std::ostringstream os;
    bool first = true;
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        if (!first) os << " + ";
        os << to_string(c_[i]);
        if (i > 0) os << "*z" << m_ << "^" << i;
        first = false;
    }
    if (first) os << "0";
    return os.str();
}

}  // namespace uegs
