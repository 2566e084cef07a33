#include "uegs/representation.hpp"

#include <numeric>

#include "uegs/modular_functions.hpp"

namespace uegs {

RepresentationPlan RepresentationPlan::make(long ell, long n, long margin) {
    auto spec = EtaQuotientSpec::for_prime(ell);
    RepresentationPlan p;
    p.ell = ell;
    p.n = n;
    p.v = spec.v;
    p.prec_target = (ell * ell + ell + 1) * spec.v - 1;
    p.margin = margin;
    return p;
}

ConjugateBasis conjugate_basis(const ModularPolynomial& M, const QSeries& j, const QSeries& m,
                               const QSeries& m2) {
    long ell = M.ell;
    long prec = std::min(j.prec(), m.prec());
    // coefficients of M(X, j) as series in q
    std::vector<QSeries> u(ell + 2, QSeries::zero(1, prec));
    std::vector<QSeries> jpow(M.v + 1);
    jpow[0] = QSeries::constant(Cyclotomic::one(), j.prec());
    for (long k = 1; k <= M.v; ++k) jpow[k] = jpow[k - 1] * j;
    for (const auto& t : M.terms)
        u[t.i] = u[t.i] + jpow[t.k].scaled(Cyclotomic(BigRat(t.c)));

    // synthetic division by (X - m): quotient degree ell
    std::vector<QSeries> q1(ell + 1, QSeries::zero(1, prec));
    q1[ell] = u[ell + 1];
    for (long i = ell - 1; i >= 0; --i) q1[i] = u[i + 1] + m * q1[i + 1];
    QSeries rem1 = u[0] + m * q1[0];
    if (rem1.order_num().has_value())
        fail(ErrorKind::precision, "conjugate_basis: M(X, j)/(X - m) has remainder at q^" +
                                       std::to_string(rem1.order_num().value()));

    // synthetic division of M_{l,2}(X) by (X - m2): quotient degree ell-1
    ConjugateBasis out;
    out.c.assign(ell, QSeries::zero(m2.denom(), m2.prec()));
    out.c[ell - 1] = q1[ell].rescaled(m2.denom());
    for (long i = ell - 2; i >= 0; --i) out.c[i] = q1[i + 1].rescaled(1) + m2 * out.c[i + 1];
    QSeries rem2 = q1[0].rescaled(1) + m2 * out.c[0];
    if (rem2.order_num().has_value())
        fail(ErrorKind::precision, "conjugate_basis: M_{l,2}(X)/(X - m2) has remainder at q^" +
                                       std::to_string(rem2.order_num().value()) + "/" +
                                       std::to_string(m2.denom()));

    out.n_series = QSeries::zero(m2.denom(), m2.prec());
    QSeries m2pow = QSeries::constant(Cyclotomic::one(), m2.prec()).rescaled(m2.denom());
    for (long i = 0; i < ell; ++i) {
        if (i > 0) m2pow = m2pow * m2;
        out.n_series = out.n_series + out.c[i] * m2pow;
    }
    return out;
}

std::vector<QSeries> stage_a_traces(const QSeries& sigma0, const ConjugateBasis& basis, long ell,
                                    long n, long v) {
    std::vector<QSeries> a;
    a.reserve(ell);
    Cyclotomic ell_c((BigRat(ell)));
    for (long i = 0; i < ell; ++i) {
        QSeries ai = slice_product(sigma0, basis.c[i]).scaled(ell_c);
        if (ai.order_num().value_or(0) < -v)
            fail(ErrorKind::internal, "stage A: ord(a_" + std::to_string(i) + ") = " +
                                          std::to_string(*ai.order_num()) + " < -v");
        for (const auto& [e, c] : ai.terms()) {
            if (n % c.conductor() != 0)
                fail(ErrorKind::internal,
                     "stage A: a_" + std::to_string(i) + " coefficient at q^" +
                         std::to_string(e) + " lies outside Q(zeta_n)");
        }
        a.push_back(std::move(ai));
    }
    return a;
}

namespace {

long ceil_div(long x, long y) {
    long q = x / y, r = x % y;
    return q + ((r != 0 && ((r < 0) == (y < 0))) ? 1 : 0);
}

std::map<std::pair<long, long>, Cyclotomic> reduce_against_monomials(QSeries h,
                                                                     const ModularPolynomial& M,
                                                                     const QSeries& m,
                                                                     const QSeries& j) {
    long ell = M.ell, v = M.v;
    auto spec = EtaQuotientSpec::for_prime(ell);
    if (h.order_num().value_or(1 - v) < 1 - v)
        fail(ErrorKind::internal,
             "stage B: ord(h) = " + std::to_string(*h.order_num()) + " < 1 - v");
    std::vector<QSeries> jpow(v);
    jpow[0] = QSeries::constant(Cyclotomic::one(), j.prec() + v + 1);
    for (long k = 1; k < v; ++k) jpow[k] = jpow[k - 1] * j;
    BigInt mlead = pow_int(BigInt(ell), spec.s);  // leading coefficient of m at q^v

    std::map<std::pair<long, long>, Cyclotomic> b;
    long cur_i2 = 0;
    QSeries mpow = QSeries::constant(Cyclotomic::one(), m.prec() + v);
    BigInt mpow_lead = 1;
    while (true) {
        auto o = h.order_num();
        if (!o) break;
        long i2 = ceil_div(*o, v);
        long i3 = i2 * v - *o;
        if (i2 < 0 || i3 < 0 || i3 >= v)
            fail(ErrorKind::internal, "stage B: no monomial of order " + std::to_string(*o));
        if (i2 > ell * ell + ell)
            fail(ErrorKind::precision,
                 "stage B: required m-exponent " + std::to_string(i2) + " exceeds ell^2 + ell");
        if (i2 * v + ell * i3 > (ell * ell + ell) * v - 1)
            fail(ErrorKind::internal, "stage B: index bound i2 v + ell i3 violated");
        while (cur_i2 < i2) {
            mpow = mpow * m;
            mpow_lead *= mlead;
            ++cur_i2;
        }
        // monomial m^{i2} j^{i3} has leading coefficient mlead^{i2} at q^{o}
        Cyclotomic coef = h.coeff(*o) * Cyclotomic(BigRat(1, mpow_lead));
        b[{i2, i3}] += coef;
        h = h - (i3 == 0 ? mpow.scaled(coef) : (mpow * jpow[i3]).scaled(coef));
    }
    return b;
}

}  // namespace

std::map<std::pair<long, long>, Cyclotomic> stage_b_reduce(const QSeries& a,
                                                           const ModularPolynomial& M,
                                                           const QSeries& m, const QSeries& j) {
    QSeries mder = specialize(partial_y(M), m, j);
    return reduce_against_monomials(a * mder, M, m, j);
}

AuxRepresentation reduce_weight0(const QSeries& f, const ModularPolynomial& M, const QSeries& m,
                                 const QSeries& j) {
    AuxRepresentation out;
    out.ell = M.ell;
    out.v = M.v;
    out.b = stage_b_reduce(f, M, m, j);
    return out;
}

RationalRepresentation assemble_and_verify(const RepresentationPlan& plan, int xi_eps,
                                           const ModularPolynomial& M) {
    long ell = plan.ell, n = plan.n, v = plan.v;
    long pq = plan.prec_target + plan.margin;  // q-precision for everything

    SigmaSpec spec = SigmaSpec::make(ell, n, xi_eps);
    QSeries j = standard_series(StandardSeries::J, pq + 2);
    QSeries m = m_ell(ell, pq + 2);
    QSeries m2 = m_ell2_conjugate(ell, 0, pq);
    QSeries sigma0 = sigma_series(spec, 0, ell * pq);

    ConjugateBasis basis = conjugate_basis(M, j, m, m2);
    std::vector<QSeries> a = stage_a_traces(sigma0, basis, ell, n, v);
    QSeries mder = specialize(partial_y(M), m, j);

    RationalRepresentation rep;
    rep.ell = ell;
    rep.n = n;
    rep.g = spec.chi.g;
    rep.xi = xi_eps;
    rep.v = v;
    rep.prec = plan.prec_target;
    rep.modpoly_hash = modpoly_content_hash(M);
    for (long i1 = 0; i1 < ell; ++i1) {
        auto slice = reduce_against_monomials(a[i1] * mder, M, m, j);
        for (const auto& [key, c] : slice) rep.tensor[{i1, key.first, key.second}] = c;
    }

    // verification (i): sigma * N * M' = sum over the tensor, via the
    // evaluation path (exercises the same Horner used at runtime)
    EvalHooks<QSeries> hooks = series_hooks(n, ell, ell * pq);
    QSeries lhs = sigma0;
    QSeries rhs = evaluate(rep, M, j.rescaled(ell).truncated(ell * pq),
                           m.rescaled(ell).truncated(ell * pq), m2, hooks);
    long cap = std::min(lhs.prec(), rhs.prec());
    if (auto d = first_difference(lhs.truncated(cap), rhs.truncated(cap)); d.has_value())
        fail(ErrorKind::precision, "representation verification failed at exponent " +
                                       std::to_string(*d) + "/" + std::to_string(ell));

    // verification (ii): the k = 1 conjugate identity. Evaluating the tensor
    // at m2^{(1)} forces conductor-(ell n) arithmetic, so the genuine
    // evaluation runs at the cheaper a0 precision (2 ell + 1) v - 1, while the
    // full-precision cross-check twists both sides of (i).
    QSeries sigma1 = sigma0.twist(1);
    long pq2 = (2 * ell + 1) * v - 1;
    QSeries m2k = m_ell2_conjugate(ell, 1, pq2);
    EvalHooks<QSeries> hooks1 = series_hooks(n, ell, ell * pq2);
    QSeries rhs1 = evaluate(rep, M, j.truncated(pq2).rescaled(ell),
                            m.truncated(pq2).rescaled(ell), m2k, hooks1);
    long cap1 = std::min({sigma1.prec(), rhs1.prec(), ell * pq2});
    if (auto d = first_difference(sigma1.truncated(cap1), rhs1.truncated(cap1)); d.has_value())
        fail(ErrorKind::precision, "conjugate (k=1) verification failed at exponent " +
                                       std::to_string(*d) + "/" + std::to_string(ell));
    long capt = std::min(sigma1.prec(), rhs.prec());
    if (auto d = first_difference(sigma1.truncated(capt), rhs.twist(1).truncated(capt));
        d.has_value())
        fail(ErrorKind::precision, "twisted-identity cross-check failed at exponent " +
                                       std::to_string(*d) + "/" + std::to_string(ell));
    return rep;
}

EvalHooks<QSeries> series_hooks(long n, long d, long prec) {
    EvalHooks<QSeries> h;
    h.mul = [](const QSeries& a, const QSeries& b) { return a * b; };
    h.add = [](const QSeries& a, const QSeries& b) { return a + b; };
    h.sub = [](const QSeries& a, const QSeries& b) { return a - b; };
    h.inv = [](const QSeries& a) { return a.inverse(); };
    h.is_zero = [](const QSeries& a) { return !a.order_num().has_value(); };
    h.from_rat = [d, prec](const BigRat& r) {
        return QSeries::constant(Cyclotomic(r), prec).rescaled(d);
    };
    unsigned phi = euler_phi(static_cast<unsigned>(n));
    for (unsigned i = 0; i < phi; ++i)
        h.zeta_pow.push_back(
            QSeries::constant(Cyclotomic::zeta_power(static_cast<unsigned>(n), i), prec)
                .rescaled(d));
    return h;
}

}  // namespace uegs
