#include "uegs/gauss_sums.hpp"

#include <numeric>

#include "uegs/error.hpp"

namespace uegs {

namespace {

long mod_pow(long base, long e, long m) {
    long out = 1 % m;
    base %= m;
    if (base < 0) base += m;
    while (e > 0) {
        if (e & 1) out = out * base % m;
        base = base * base % m;
        e >>= 1;
    }
    return out;
}

long multiplicative_order(long a, long ell) {
    long x = a % ell, ord = 1;
    while (x != 1) {
        x = x * a % ell;
        ++ord;
        if (ord > ell) fail(ErrorKind::internal, "multiplicative_order: not a unit");
    }
    return ord;
}

}  // namespace

long smallest_primitive_root(long ell) {
    for (long g = 2; g < ell; ++g)
        if (multiplicative_order(g, ell) == ell - 1) return g;
    fail(ErrorKind::internal, "no primitive root found (composite modulus?)");
}

Character Character::make(long ell, long n) {
    if (n < 1 || (ell - 1) % n != 0)
        fail(ErrorKind::unsupported, "character order must divide ell - 1");
    Character c;
    c.ell = ell;
    c.n = n;
    c.g = smallest_primitive_root(ell);
    c.ind.assign(ell, 0);
    long x = 1;
    for (long e = 0; e < ell - 1; ++e) {
        c.ind[x] = e;
        x = x * c.g % ell;
    }
    return c;
}

long Character::chi_exponent(long a, long c) const {
    long aa = a % ell;
    if (aa < 0) aa += ell;
    if (aa == 0) fail(ErrorKind::degenerate_input, "character evaluated at 0");
    long e = (c % n) * (ind[aa] % n) % n;
    if (e < 0) e += n;
    return e;
}

Cyclotomic Character::chi(long a, long c) const {
    return Cyclotomic::zeta_power(static_cast<unsigned>(n), chi_exponent(a, c));
}

SigmaSpec SigmaSpec::make(long ell, long n, int xi_eps) {
    SigmaSpec s;
    s.ell = ell;
    s.n = n;
    s.chi = Character::make(ell, n);
    s.v_is_x = (n % 2 == 1);
    s.r = s.v_is_x ? 4 : 3;
    s.e = s.v_is_x ? 2 : 3;
    s.xi_eps = xi_eps;
    return s;
}

Cyclotomic cyclotomic_gauss(const Character& chi, long c, int eps) {
    long cc = c % chi.ell;
    if (cc < 0) cc += chi.ell;
    if (cc == 0) fail(ErrorKind::degenerate_input, "cyclotomic_gauss: argument exponent is 0");
    Cyclotomic acc = Cyclotomic::zero();
    for (long lam = 1; lam < chi.ell; ++lam) {
        long ze = (static_cast<long>(eps) * lam % chi.ell * cc) % chi.ell;
        if (ze < 0) ze += chi.ell;
        acc += chi.chi(lam, -1) * Cyclotomic::zeta_power(static_cast<unsigned>(chi.ell), ze);
    }
    return acc;
}

namespace {

QSeries V_series(const SigmaSpec& spec, TorsionLabel label, long prec) {
    return spec.v_is_x ? tate_x(label, spec.ell, prec) : tate_y(label, spec.ell, prec);
}

}  // namespace

QSeries G_series(const SigmaSpec& spec, long prec) {
    QSeries acc(1, prec);
    for (long lam = 1; lam < spec.ell; ++lam)
        acc = acc + V_series(spec, TorsionLabel{lam, 0}, prec).scaled(spec.chi.chi(lam));
    return acc;
}

QSeries H_series(const SigmaSpec& spec, long k, long prec) {
    long qprec = (prec + spec.ell - 1) / spec.ell;
    QSeries acc(spec.ell, qprec * spec.ell);
    for (long lam = 1; lam < spec.ell; ++lam) {
        TorsionLabel label{(k * lam) % spec.ell, lam};
        acc = acc + V_series(spec, label, qprec).scaled(spec.chi.chi(lam));
    }
    return acc.truncated(prec);
}

QSeries sigma_series(const SigmaSpec& spec, long k, long prec) {
    long ell = spec.ell;
    // Delta^{-1} shifts precision by its order 1; give the integer-exponent
    // factors a little slack beyond the numerator target.
    long qprec = (prec + ell - 1) / ell + 3;
    QSeries g = G_series(spec, qprec);
    QSeries h = H_series(spec, k, ell * qprec);
    QSeries p1 = p1_series(ell, qprec);
    QSeries dinv = standard_series(StandardSeries::Delta, qprec + 2).inverse();
    Cyclotomic gx = cyclotomic_gauss(spec.chi, 1, spec.xi_eps);
    QSeries sigma =
        (g * h * p1.pow(static_cast<unsigned>(spec.r)) * dinv).scaled(gx).truncated(prec);
    if (sigma.order_num().value_or(0) < -ell + 1)
        fail(ErrorKind::internal, "sigma: order below -1 + 1/ell");
    if (k != 0) return sigma;
    // property (4): coefficients of sigma(0) lie in Q(zeta_n)
    QSeries out(ell, sigma.prec());
    for (const auto& [e, c] : sigma.terms()) {
        long witness = 0;
        unsigned m = static_cast<unsigned>(std::lcm<long>(c.conductor(), spec.n));
        auto r = c.embedded(m).to_subfield(static_cast<unsigned>(spec.n), &witness);
        if (!r)
            fail(ErrorKind::internal, "sigma: coefficient at exponent " + std::to_string(e) + "/" +
                                          std::to_string(ell) +
                                          " does not descend to Q(zeta_n); automorphism " +
                                          std::to_string(witness));
        out.add_term(e, *r);
    }
    return out;
}

}  // namespace uegs
