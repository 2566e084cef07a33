#include "uegs/modular_polynomial.hpp"

#include <algorithm>
#include <numeric>

#include "uegs/error.hpp"
#include "uegs/modular_functions.hpp"

namespace uegs {

BigInt ModularPolynomial::coeff(long i, long k) const {
    for (const auto& t : terms)
        if (t.i == i && t.k == k) return t.c;
    return BigInt(0);
}

long modpoly_min_prec(long ell) {
    auto spec = EtaQuotientSpec::for_prime(ell);
    return (spec.v + 1) * (ell + 1) + ell + 4;
}

namespace {

// Express a rational q-series with a pole of order <= v as a polynomial in j
// by greedily removing the lowest term against powers of j (j^k is monic with
// leading term q^{-k}).
std::vector<BigRat> eliminate_against_j(QSeries f, const std::vector<QSeries>& jpow, long v) {
    std::vector<BigRat> c(v + 1);
    while (true) {
        auto o = f.order_num();
        if (!o || *o > 0) break;
        long k = -*o;
        if (k > v)
            fail(ErrorKind::precision,
                 "modpoly: pole order " + std::to_string(k) + " exceeds v = " + std::to_string(v));
        BigRat coef = f.coeff(*o).rational_value();
        c[k] += coef;
        f = f - jpow[k].scaled(Cyclotomic(coef));
    }
    if (f.order_num().has_value())
        fail(ErrorKind::precision,
             "modpoly: elimination left a nonzero tail at q^" +
                 std::to_string(f.order_num().value()) + " (increase precision to at least " +
                 std::to_string(f.prec() + f.order_num().value() + 4) + ")");
    return c;
}

}  // namespace

ModularPolynomial build_canonical_modpoly(long ell, long prec) {
    auto spec = EtaQuotientSpec::for_prime(ell);
    long v = spec.v;
    if (prec < modpoly_min_prec(ell))
        fail(ErrorKind::precision, "modpoly: precision below required " +
                                       std::to_string(modpoly_min_prec(ell)) + " for ell = " +
                                       std::to_string(ell));

    long deg = ell + 1;
    QSeries m = m_ell(ell, prec);
    QSeries m2 = m_ell2_conjugate(ell, 0, prec);

    // power sums of the ell+1 conjugates: the twists of m2 contribute
    // ell * (integer-exponent slice of m2^t)
    std::vector<QSeries> p(deg + 1, QSeries::zero(1, prec));
    QSeries mt = QSeries::constant(Cyclotomic::one(), prec);
    QSeries m2t = QSeries::constant(Cyclotomic::one(), m2.prec()).rescaled(ell);
    Cyclotomic ell_c = Cyclotomic(BigRat(ell));
    for (long t = 1; t <= deg; ++t) {
        mt = mt * m;
        m2t = m2t * m2;
        p[t] = mt + m2t.integer_slice().scaled(ell_c);
        for (const auto& [e, c] : p[t].terms())
            if (!c.is_rational())
                fail(ErrorKind::internal, "modpoly: power sum has an irrational coefficient");
    }

    // Newton's identities: t e_t = sum_{i=1}^{t} (-1)^{i-1} e_{t-i} p_i
    std::vector<QSeries> e(deg + 1, QSeries::zero(1, prec));
    e[0] = QSeries::constant(Cyclotomic::one(), prec);
    for (long t = 1; t <= deg; ++t) {
        QSeries acc = QSeries::zero(1, prec);
        for (long i = 1; i <= t; ++i) {
            QSeries term = e[t - i] * p[i];
            acc = (i % 2 == 1) ? acc + term : acc - term;
        }
        e[t] = acc.scaled(Cyclotomic(BigRat(1, t)));
    }

    // powers of j for the elimination
    long jprec = prec + v + 2;
    std::vector<QSeries> jpow(v + 1);
    jpow[0] = QSeries::constant(Cyclotomic::one(), jprec);
    if (v >= 1) jpow[1] = standard_series(StandardSeries::J, jprec);
    for (long k = 2; k <= v; ++k) jpow[k] = jpow[k - 1] * jpow[1];

    ModularPolynomial out;
    out.ell = ell;
    out.v = v;
    for (long i = 0; i <= deg; ++i) {
        // coefficient of X^{deg-i} is (-1)^i e_i
        QSeries coef = (i % 2 == 0) ? e[i] : -e[i];
        std::vector<BigRat> cj = eliminate_against_j(coef, jpow, v);
        for (long k = v; k >= 0; --k) {
            if (cj[k] == 0) continue;
            if (cj[k].get_den() != 1)
                fail(ErrorKind::internal,
                     "modpoly: non-integer coefficient " + to_string(cj[k]) + " at X^" +
                         std::to_string(deg - i) + " Y^" + std::to_string(k));
            long xi = deg - i;
            if (xi * v > (v - k) * ell + v)
                fail(ErrorKind::internal, "modpoly: term violates the order bound iv <= (v-k)l+v");
            out.terms.push_back(ModPolyTerm{xi, k, cj[k].get_num()});
        }
    }
    if (out.terms.empty() || out.terms.front().i != deg || out.terms.front().c != 1)
        fail(ErrorKind::internal, "modpoly: polynomial is not monic of degree ell+1");
    return out;
}

unsigned long long modpoly_content_hash(const ModularPolynomial& m) {
    std::string s = "cmp/1|" + std::to_string(m.ell) + "|" + std::to_string(m.v);
    for (const auto& t : m.terms)
        s += "|" + std::to_string(t.i) + "," + std::to_string(t.k) + "," + t.c.get_str();
    return fnv1a64(s);
}

namespace {

ModularPolynomial derived(const ModularPolynomial& m, bool wrt_x) {
    ModularPolynomial out;
    out.ell = m.ell;
    out.v = m.v;
    for (const auto& t : m.terms) {
        long e = wrt_x ? t.i : t.k;
        if (e == 0) continue;
        out.terms.push_back(wrt_x ? ModPolyTerm{t.i - 1, t.k, t.c * e}
                                  : ModPolyTerm{t.i, t.k - 1, t.c * e});
    }
    return out;
}

}  // namespace

ModularPolynomial partial_x(const ModularPolynomial& m) { return derived(m, true); }
ModularPolynomial partial_y(const ModularPolynomial& m) { return derived(m, false); }

QSeries specialize(const ModularPolynomial& m, const QSeries& x, const QSeries& y) {
    long d = std::lcm(x.denom(), y.denom());
    long prec = std::min(x.prec() * (d / x.denom()), y.prec() * (d / y.denom()));
    QSeries zero = QSeries::zero(d, prec);
    auto lift = [&](const BigInt& c) {
        return QSeries::constant(Cyclotomic(BigRat(c)), prec).rescaled(d);
    };
    return specialize(m, x.rescaled(d), y.rescaled(d), lift, zero);
}

}  // namespace uegs
