#include "uegs/elliptic_curve.hpp"

#include <cmath>
#include <random>

#include "uegs/error.hpp"

namespace uegs {

Curve::Curve(const FqField& field, FqField::E a_, FqField::E b_)
    : F(&field), a(std::move(a_)), b(std::move(b_)) {
    if (F->is_zero(discriminant_16()))
        fail(ErrorKind::degenerate_input, "Curve: singular (4a^3 + 27b^2 = 0)");
}

FqField::E Curve::discriminant_16() const {
    auto a3 = F->mul(F->mul(a, a), a);
    auto b2 = F->mul(b, b);
    auto d = F->add(F->mul(F->from_int(4), a3), F->mul(F->from_int(27), b2));
    return F->mul(F->from_int(-16), d);
}

FqField::E Curve::j_invariant() const {
    auto a3 = F->mul(F->mul(a, a), a);
    auto b2 = F->mul(b, b);
    auto d = F->add(F->mul(F->from_int(4), a3), F->mul(F->from_int(27), b2));
    if (F->is_zero(d)) fail(ErrorKind::degenerate_input, "j_invariant: singular curve");
    return F->mul(F->mul(F->from_int(6912), a3), F->inv(d));
}

FqField::E Curve::rhs(const FqField::E& x) const {
    return F->add(F->mul(F->add(F->mul(x, x), a), x), b);  // x(x^2 + a) + b
}

bool on_curve(const Curve& c, const Point& p) {
    if (p.inf) return true;
    return c.F->mul(p.y, p.y) == c.rhs(p.x);
}

Point neg(const Curve& c, const Point& p) {
    if (p.inf) return p;
    return Point::affine(p.x, c.F->neg(p.y));
}

Point add(const Curve& c, const Point& p, const Point& q) {
    const FqField& F = *c.F;
    if (p.inf) return q;
    if (q.inf) return p;
    if (p.x == q.x) {
        if (p.y != q.y || F.is_zero(p.y)) return Point::infinity();
        // doubling: lambda = (3x^2 + a) / 2y
        auto num = F.add(F.mul(F.from_int(3), F.mul(p.x, p.x)), c.a);
        auto lam = F.mul(num, F.inv(F.add(p.y, p.y)));
        auto x3 = F.sub(F.mul(lam, lam), F.add(p.x, q.x));
        auto y3 = F.sub(F.mul(lam, F.sub(p.x, x3)), p.y);
        return Point::affine(x3, y3);
    }
    auto lam = F.mul(F.sub(q.y, p.y), F.inv(F.sub(q.x, p.x)));
    auto x3 = F.sub(F.sub(F.mul(lam, lam), p.x), q.x);
    auto y3 = F.sub(F.mul(lam, F.sub(p.x, x3)), p.y);
    return Point::affine(x3, y3);
}

Point scalar_mul(const Curve& c, const BigInt& k, const Point& p) {
    BigInt e = k;
    Point base = p;
    if (e < 0) {
        e = -e;
        base = neg(c, base);
    }
    Point acc = Point::infinity();
    size_t bits = (e == 0) ? 0 : mpz_sizeinbase(e.get_mpz_t(), 2);
    for (size_t i = bits; i-- > 0;) {
        acc = add(c, acc, acc);
        if (mpz_tstbit(e.get_mpz_t(), i)) acc = add(c, acc, base);
    }
    return acc;
}

Point frobenius_point(const Curve& c, const Point& p) {
    if (p.inf) return p;
    return Point::affine(c.F->frobenius(p.x), c.F->frobenius(p.y));
}

long order_in_ell_group(const Curve& c, const Point& p, long ell) {
    Point cur = p;
    long ord = 1;
    while (!cur.inf) {
        cur = scalar_mul(c, BigInt(ell), cur);
        ord *= ell;
        if (ord > ell * ell * ell * ell)
            fail(ErrorKind::internal, "order_in_ell_group: order too large");
    }
    return ord / ell == 0 ? 1 : ord;
}

long brute_force_count(long p, long a, long b) {
    if (p < 2 || p >= 1000000) fail(ErrorKind::unsupported, "brute_force_count: need p < 10^6");
    // quadratic-residue table
    std::vector<signed char> qr(p, -1);
    qr[0] = 0;
    for (long t = 1; t < p; ++t) qr[(t * t) % p] = 1;
    long aa = ((a % p) + p) % p, bb = ((b % p) + p) % p;
    long count = 1;  // infinity
    for (long x = 0; x < p; ++x) {
        long fx = (x * ((x * x + aa) % p) % p + bb) % p;
        if (qr[fx] == 0)
            count += 1;
        else if (qr[fx] == 1)
            count += 2;
    }
    long t = p + 1 - count;
    if (static_cast<double>(t) * t > 4.0 * p)
        fail(ErrorKind::internal, "brute_force_count: Hasse bound violated");
    return count;
}

long brute_force_trace(long p, long a, long b) { return p + 1 - brute_force_count(p, a, b); }

BigInt trace_power(long p, long t, unsigned m) {
    BigInt t0 = 2, t1 = t;
    if (m == 0) return t0;
    for (unsigned k = 2; k <= m; ++k) {
        BigInt t2 = BigInt(t) * t1 - BigInt(p) * t0;
        t0 = t1;
        t1 = t2;
    }
    return t1;
}

std::vector<FqField::E> division_polynomial(const Curve& c, long ell) {
    if (ell < 3 || ell % 2 == 0)
        fail(ErrorKind::unsupported, "division_polynomial: odd ell >= 3 only");
    const FqField& F = *c.F;
    using P = std::vector<FqField::E>;
    auto trim = [&](P v) {
        while (!v.empty() && F.is_zero(v.back())) v.pop_back();
        return v;
    };
    auto padd = [&](const P& x, const P& y) {
        P o(std::max(x.size(), y.size()), F.zero());
        for (size_t i = 0; i < x.size(); ++i) o[i] = x[i];
        for (size_t i = 0; i < y.size(); ++i) o[i] = F.add(o[i], y[i]);
        return trim(std::move(o));
    };
    auto psub = [&](const P& x, const P& y) {
        P o(std::max(x.size(), y.size()), F.zero());
        for (size_t i = 0; i < x.size(); ++i) o[i] = x[i];
        for (size_t i = 0; i < y.size(); ++i) o[i] = F.sub(o[i], y[i]);
        return trim(std::move(o));
    };
    auto pmul = [&](const P& x, const P& y) -> P {
        if (x.empty() || y.empty()) return {};
        P o(x.size() + y.size() - 1, F.zero());
        for (size_t i = 0; i < x.size(); ++i) {
            if (F.is_zero(x[i])) continue;
            for (size_t k = 0; k < y.size(); ++k) o[i + k] = F.add(o[i + k], F.mul(x[i], y[k]));
        }
        return trim(std::move(o));
    };
    // f = x^3 + a x + b; ff = f^2
    P f = {c.b, c.a, F.zero(), F.one()};
    P ff = pmul(f, f);
    // psi[k] as univariate polynomials with the convention: for even k,
    // psi_k = y * podd[k]; we store podd[k] and multiply by f where y^2 occurs.
    long top = ell + 2;
    std::vector<P> psi(top + 1);
    psi[0] = {};
    psi[1] = {F.one()};
    psi[2] = {F.add(F.one(), F.one())};  // psi_2 = 2y -> stored part 2
    // psi_3 = 3x^4 + 6a x^2 + 12b x - a^2
    psi[3] = {F.neg(F.mul(c.a, c.a)), F.mul(F.from_int(12), c.b), F.mul(F.from_int(6), c.a),
              F.zero(), F.from_int(3)};
    // psi_4 = 4y (x^6 + 5a x^4 + 20b x^3 - 5a^2 x^2 - 4ab x - 8b^2 - a^3)
    {
        auto a2 = F.mul(c.a, c.a);
        auto a3 = F.mul(a2, c.a);
        auto b2 = F.mul(c.b, c.b);
        P inner = {F.sub(F.mul(F.from_int(-8), b2), a3),
                   F.mul(F.from_int(-4), F.mul(c.a, c.b)),
                   F.mul(F.from_int(-5), a2),
                   F.mul(F.from_int(20), c.b),
                   F.mul(F.from_int(5), c.a),
                   F.zero(),
                   F.one()};
        psi[4] = pmul({F.from_int(4)}, inner);
    }
    for (long k = 5; k <= top; ++k) {
        if (k % 2 == 1) {
            long m = (k - 1) / 2;  // psi_{2m+1} = psi_{m+2} psi_m^3 - psi_{m-1} psi_{m+1}^3
            P t1 = pmul(psi[m + 2], pmul(psi[m], pmul(psi[m], psi[m])));
            P t2 = pmul(psi[m - 1], pmul(psi[m + 1], pmul(psi[m + 1], psi[m + 1])));
            if (m % 2 == 0) {
                // psi_{m+2}, psi_m even (carry y): t1 has y^4 = ff; t2 none
                psi[k] = psub(pmul(t1, ff), t2);
            } else {
                // psi_{m-1}, psi_{m+1} even: t2 has y^4 = ff
                psi[k] = psub(t1, pmul(t2, ff));
            }
        } else {
            // psi_{2m} = psi_m (psi_{m+2} psi_{m-1}^2 - psi_{m-2} psi_{m+1}^2) / 2y;
            // with psi_even = y g_even the f factors cancel either way, leaving
            // g_{2m} = g_m (g_{m+2} g_{m-1}^2 - g_{m-2} g_{m+1}^2) / 2
            long m = k / 2;
            P t1 = pmul(psi[m + 2], pmul(psi[m - 1], psi[m - 1]));
            P t2 = pmul(psi[m - 2], pmul(psi[m + 1], psi[m + 1]));
            P prod = pmul(psi[m], psub(t1, t2));
            auto half = F.inv(F.from_int(2));
            P out(prod.size(), F.zero());
            for (size_t i = 0; i < prod.size(); ++i) out[i] = F.mul(prod[i], half);
            psi[k] = trim(std::move(out));
        }
    }
    return psi[ell];
}

namespace {

// random point via x-sampling; deterministic given the rng state
Point random_point(const Curve& c, std::mt19937_64& rng, std::uint64_t seed) {
    const FqField& F = *c.F;
    for (int tries = 0; tries < 10000; ++tries) {
        FqField::E x(F.deg());
        for (unsigned i = 0; i < F.deg(); ++i) x[i] = rng() % F.p();
        auto y = F.sqrt(c.rhs(x), seed ^ rng());
        if (y) return Point::affine(x, *y);
    }
    fail(ErrorKind::internal, "random_point: no point found");
}

// reduce a random point into E[ell] via the ell-Sylow subgroup
Point ell_torsion_point(const Curve& c, const BigInt& group_order, long ell,
                        std::mt19937_64& rng, std::uint64_t seed) {
    BigInt cof = group_order;
    int w = 0;
    while (cof % ell == 0) {
        cof /= ell;
        ++w;
    }
    if (w == 0) fail(ErrorKind::internal, "ell_torsion_point: ell does not divide group order");
    for (int tries = 0; tries < 200; ++tries) {
        Point q = random_point(c, rng, seed);
        Point r = scalar_mul(c, cof, q);
        if (r.inf) continue;
        // walk down the Sylow tower to exact order ell
        Point s = r;
        while (true) {
            Point next = scalar_mul(c, BigInt(ell), s);
            if (next.inf) return s;
            s = next;
        }
    }
    fail(ErrorKind::internal, "ell_torsion_point: no point of order ell found");
}

}  // namespace

TorsionBasis torsion_basis(const Curve& c, long ell, long t_base, std::uint64_t seed) {
    const FqField& F = *c.F;
    BigInt order = pow_int(BigInt(static_cast<long>(F.p())), F.deg()) + 1 -
                   trace_power(static_cast<long>(F.p()), t_base, F.deg());
    std::mt19937_64 rng(seed ^ 0xe11c0u);
    Point p1 = ell_torsion_point(c, order, ell, rng, seed);
    for (int tries = 0; tries < 200; ++tries) {
        Point p2 = ell_torsion_point(c, order, ell, rng, seed);
        auto w = weil_pairing(c, p1, p2, ell, seed);
        if (w != F.one()) return TorsionBasis{p1, p2};
    }
    fail(ErrorKind::internal,
         "torsion_basis: no independent pair (is the full ell-torsion rational here?)");
}

namespace {

struct MillerAbort {};  // degenerate line evaluation; retry with a new shift

// evaluate the line through t and u at r, divided by the vertical at t+u
FqField::E line_eval(const Curve& c, const Point& t, const Point& u, const Point& r) {
    const FqField& F = *c.F;
    if (t.inf || u.inf || r.inf) throw MillerAbort{};
    Point s = add(c, t, u);
    if (s.inf) {
        // vertical line x - x_t
        auto v = F.sub(r.x, t.x);
        if (F.is_zero(v)) throw MillerAbort{};
        return v;
    }
    FqField::E lam;
    if (t.x == u.x && t.y == u.y) {
        if (F.is_zero(t.y)) throw MillerAbort{};
        lam = F.mul(F.add(F.mul(F.from_int(3), F.mul(t.x, t.x)), c.a),
                    F.inv(F.add(t.y, t.y)));
    } else {
        if (t.x == u.x) throw MillerAbort{};
        lam = F.mul(F.sub(u.y, t.y), F.inv(F.sub(u.x, t.x)));
    }
    auto num = F.sub(F.sub(r.y, t.y), F.mul(lam, F.sub(r.x, t.x)));
    auto den = F.sub(r.x, s.x);
    if (F.is_zero(num) || F.is_zero(den)) throw MillerAbort{};
    return F.mul(num, F.inv(den));
}

// Miller function f_{n,P} evaluated at r
FqField::E miller(const Curve& c, const Point& p, long n, const Point& r) {
    const FqField& F = *c.F;
    FqField::E f = F.one();
    Point t = p;
    // binary expansion of n, high bit first (skip the leading 1)
    int hi = 63;
    while (hi > 0 && !((n >> hi) & 1)) --hi;
    for (int i = hi - 1; i >= 0; --i) {
        f = F.mul(F.mul(f, f), line_eval(c, t, t, r));
        t = add(c, t, t);
        if ((n >> i) & 1) {
            f = F.mul(f, line_eval(c, t, p, r));
            t = add(c, t, p);
        }
    }
    if (!t.inf) fail(ErrorKind::internal, "miller: point order does not divide n");
    return f;
}

}  // namespace

FqField::E weil_pairing(const Curve& c, const Point& p, const Point& q, long ell,
                        std::uint64_t seed) {
    const FqField& F = *c.F;
    if (p.inf || q.inf) return F.one();
    if (p == q || p == neg(c, q)) return F.one();
    std::mt19937_64 rng(seed ^ 0x3e11u);
    for (int tries = 0; tries < 100; ++tries) {
        Point s = random_point(c, rng, seed + tries);
        try {
            // e(P,Q) = [f_P(Q+S)/f_P(S)] / [f_Q(P-S)/f_Q(-S)]
            Point qs = add(c, q, s);
            Point ps = add(c, p, neg(c, s));
            auto n1 = miller(c, p, ell, qs);
            auto d1 = miller(c, p, ell, s);
            auto n2 = miller(c, q, ell, ps);
            auto d2 = miller(c, q, ell, neg(c, s));
            if (F.is_zero(d1) || F.is_zero(n2) || F.is_zero(d2)) continue;
            auto lhs = F.mul(n1, F.inv(d1));
            auto rhs = F.mul(n2, F.inv(d2));
            return F.mul(lhs, F.inv(rhs));
        } catch (const MillerAbort&) {
            continue;
        }
    }
    fail(ErrorKind::internal, "weil_pairing: no admissible auxiliary point");
}

std::vector<Point> kernel_subgroups(const Curve& c, long ell, const TorsionBasis& basis) {
    std::vector<Point> out;
    out.push_back(basis.p1);
    Point shift = Point::infinity();
    for (long cc = 0; cc < ell; ++cc) {
        out.push_back(add(c, basis.p2, shift));
        shift = add(c, shift, basis.p1);
    }
    return out;
}

long frobenius_order_on_torsion(long p, long t, long ell) {
    auto mm = [&](long x) { return ((x % ell) + ell) % ell; };
    // matrix of phi on E[ell] in a basis where the characteristic polynomial
    // is X^2 - tX + p: companion form [[0, -p], [1, t]]
    long a = 0, b = mm(-p), cc = 1, d = mm(t);
    long ca = a, cb = b, ccc = cc, cd = d;
    for (long k = 1; k <= ell * ell * ell; ++k) {
        if (ca == 1 && cb == 0 && ccc == 0 && cd == 1) return k;
        long na = mm(ca * a + cb * cc), nb = mm(ca * b + cb * d);
        long nc = mm(ccc * a + cd * cc), nd = mm(ccc * b + cd * d);
        ca = na;
        cb = nb;
        ccc = nc;
        cd = nd;
    }
    fail(ErrorKind::internal, "frobenius_order_on_torsion: no finite order found");
}

}  // namespace uegs
