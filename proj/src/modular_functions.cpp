#include "uegs/modular_functions.hpp"

#include <numeric>

#include "uegs/error.hpp"

namespace uegs {

EtaQuotientSpec EtaQuotientSpec::for_prime(long ell) {
    if (ell < 5) fail(ErrorKind::unsupported, "eta quotient needs ell >= 5");
    long g = std::gcd(12l, ell - 1);
    return EtaQuotientSpec{ell, 12 / g, (ell - 1) / g};
}

QSeries eta_tilde(long prec) {
    QSeries s(1, prec);
    s.add_term(0, Cyclotomic::one());
    for (long n = 1;; ++n) {
        long e1 = n * (3 * n - 1) / 2;
        long e2 = n * (3 * n + 1) / 2;
        if (e1 >= prec) break;
        Cyclotomic sign((n % 2) ? BigRat(-1) : BigRat(1));
        s.add_term(e1, sign);
        if (e2 < prec) s.add_term(e2, sign);
    }
    return s;
}

namespace {

QSeries delta_series(long prec) {
    return eta_tilde(prec).pow(24).shifted(1).truncated(prec);
}

QSeries eisenstein(long weight_coef, long factor, long prec) {
    // 1 + factor * sum sigma_k(n) q^n with k = weight_coef
    QSeries s(1, prec);
    s.add_term(0, Cyclotomic::one());
    for (long n = 1; n < prec; ++n) {
        BigInt sig = 0;
        for (long d = 1; d <= n; ++d)
            if (n % d == 0) sig += pow_int(BigInt(d), weight_coef);
        s.add_term(n, Cyclotomic(BigRat(factor * sig)));
    }
    return s;
}

}  // namespace

QSeries standard_series(StandardSeries which, long prec) {
    switch (which) {
        case StandardSeries::Delta:
            return delta_series(prec);
        case StandardSeries::E4:
            return eisenstein(3, 240, prec);
        case StandardSeries::E6:
            return eisenstein(5, -504, prec);
        case StandardSeries::J: {
            long p = prec + 2;
            QSeries e4 = eisenstein(3, 240, p);
            QSeries dinv = delta_series(p + 1).inverse();
            return (e4.pow(3) * dinv).truncated(prec);
        }
    }
    fail(ErrorKind::internal, "standard_series: unreachable");
}

QSeries m_ell(long ell, long prec) {
    auto spec = EtaQuotientSpec::for_prime(ell);
    long p = prec + 2;
    QSeries num = eta_tilde((p + ell - 1) / ell).substitute_power(ell).truncated(p);
    QSeries ratio = num * eta_tilde(p).inverse();
    QSeries out = ratio.pow(static_cast<unsigned>(2 * spec.s))
                      .scaled(Cyclotomic(BigRat(pow_int(BigInt(ell), spec.s))))
                      .shifted(spec.v);
    return out.truncated(prec);
}

QSeries m_ell2_conjugate(long ell, long k, long prec) {
    auto spec = EtaQuotientSpec::for_prime(ell);
    // base precision so that the inverse is still exact below prec
    long base_prec = ell * prec + 2 * spec.v + 2;
    QSeries rooted = m_ell(ell, base_prec).substitute_root(ell);
    QSeries base = rooted.inverse().scaled(Cyclotomic(BigRat(pow_int(BigInt(ell), spec.s))));
    return base.twist(k).truncated(ell * prec);
}

namespace {

// adds c * sum_{j>=1} f(j) u^j for u = zeta_ell^alpha q^{e_num/d}, e_num > 0
template <typename F>
void add_geometric(QSeries& s, long ell, long alpha, long e_num, const F& f, const BigRat& c) {
    for (long j = 1; j * e_num < s.prec(); ++j) {
        Cyclotomic coef(c * f(j));
        long r = ((alpha * j) % ell + ell) % ell;
        if (r != 0) coef *= Cyclotomic::zeta_power(static_cast<unsigned>(ell), r);
        s.add_term(j * e_num, coef);
    }
}

}  // namespace

QSeries tate_x(TorsionLabel label, long ell, long prec) {
    long a = ((label.a % ell) + ell) % ell;
    long b = ((label.b % ell) + ell) % ell;
    if (a == 0 && b == 0) fail(ErrorKind::degenerate_input, "tate_x: label (0,0)");
    long d = (b == 0) ? 1 : ell;
    QSeries s(d, prec * d);
    auto lin = [](long j) { return BigRat(j); };
    s.add_term(0, Cyclotomic(BigRat(1, 12)));
    // -2 sum_{n>=1} q^n/(1-q^n)^2
    for (long n = 1; n * d < s.prec(); ++n)
        add_geometric(s, ell, 0, n * d, lin, BigRat(-2));
    // n = 0 term of the bilateral sum
    if (b == 0) {
        Cyclotomic w = Cyclotomic::zeta_power(static_cast<unsigned>(ell), a);
        Cyclotomic den = Cyclotomic::one() - w;
        s.add_term(0, w * (den * den).inverse());
    } else {
        add_geometric(s, ell, a, b, lin, BigRat(1));
    }
    // n >= 1: q^n w and the reflected q^n w^{-1}
    for (long n = 1;; ++n) {
        long ep = n * d + b;   // q^n w
        long em = n * d - b;   // q^n w^{-1}
        if (em >= s.prec() && ep >= s.prec()) break;
        if (ep < s.prec()) add_geometric(s, ell, a, ep, lin, BigRat(1));
        if (em > 0 && em < s.prec()) add_geometric(s, ell, -a, em, lin, BigRat(1));
    }
    return s;
}

QSeries tate_y(TorsionLabel label, long ell, long prec) {
    long a = ((label.a % ell) + ell) % ell;
    long b = ((label.b % ell) + ell) % ell;
    if (a == 0 && b == 0) fail(ErrorKind::degenerate_input, "tate_y: label (0,0)");
    long d = (b == 0) ? 1 : ell;
    QSeries s(d, prec * d);
    auto sq = [](long j) -> BigRat { return BigRat(j) * BigRat(j); };
    BigRat half(1, 2);
    // n = 0
    if (b == 0) {
        Cyclotomic w = Cyclotomic::zeta_power(static_cast<unsigned>(ell), a);
        Cyclotomic den = Cyclotomic::one() - w;
        s.add_term(0, half * (w * (Cyclotomic::one() + w) * (den * den * den).inverse()));
    } else {
        add_geometric(s, ell, a, b, sq, half);
    }
    for (long n = 1;; ++n) {
        long ep = n * d + b;
        long em = n * d - b;
        if (em >= s.prec() && ep >= s.prec()) break;
        if (ep < s.prec()) add_geometric(s, ell, a, ep, sq, half);
        // reflected terms enter with a minus sign
        if (em > 0 && em < s.prec()) add_geometric(s, ell, -a, em, sq, -half);
    }
    return s;
}

QSeries p1_series(long ell, long prec) {
    QSeries acc(1, prec);
    for (long a = 1; a < ell; ++a) acc = acc + tate_x(TorsionLabel{a, 0}, ell, prec);
    QSeries out(1, acc.prec());
    for (const auto& [e, c] : acc.terms()) {
        long witness = 0;
        auto r = c.to_subfield(1, &witness);
        if (!r)
            fail(ErrorKind::precision,
                 "p1_series: coefficient at q^" + std::to_string(e) +
                     " is not rational (violating automorphism " + std::to_string(witness) + ")");
        out.add_term(e, *r);
    }
    return out;
}

FrickeImages fricke_images(long ell, long prec) {
    auto spec = EtaQuotientSpec::for_prime(ell);
    QSeries m = m_ell(ell, prec + 2 * spec.v + 2);
    FrickeImages out;
    out.m_star =
        m.inverse().scaled(Cyclotomic(BigRat(pow_int(BigInt(ell), spec.s)))).truncated(prec);
    out.m2_star = m_ell(ell, (prec + ell - 1) / ell + 1).substitute_power(ell).truncated(prec);
    out.j_star = standard_series(StandardSeries::J, (prec + ell - 1) / ell + 1)
                     .substitute_power(ell)
                     .truncated(prec);
    return out;
}

}  // namespace uegs
