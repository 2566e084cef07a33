#include "uegs/pipeline.hpp"

#include <algorithm>
#include <numeric>

#include "uegs/modular_functions.hpp"

namespace uegs {

namespace {

long mod_norm(long x, long m) { return ((x % m) + m) % m; }

long mul_mod(long a, long b, long m) {
    return static_cast<long>((static_cast<unsigned __int128>(mod_norm(a, m)) * mod_norm(b, m)) % m);
}

long inv_mod_small(long a, long m) {
    a = mod_norm(a, m);
    for (long t = 1; t < m; ++t)
        if (mul_mod(a, t, m) == 1) return t;
    fail(ErrorKind::internal, "inv_mod_small: not invertible");
}

int legendre(long a, long ell) {
    a = mod_norm(a, ell);
    if (a == 0) return 0;
    for (long s = 1; s < ell; ++s)
        if (mul_mod(s, s, ell) == a) return 1;
    return -1;
}

long j_mod_p(long p, long a, long b) {
    long a3 = mul_mod(mul_mod(a, a, p), a, p);
    long den = mod_norm(4 * a3 + 27 * mul_mod(b, b, p), p);
    if (den == 0) fail(ErrorKind::degenerate_input, "j_mod_p: singular curve");
    return mul_mod(mul_mod(6912 % p, a3, p), inv_mod_small(den, p), p);
}

bool is_prime_small(long n) {
    if (n < 2) return false;
    for (long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

}  // namespace

fp_poly::Poly specialize_modpoly_fp(const ModularPolynomial& M, long p, long a, long b) {
    long jE = j_mod_p(p, a, b);
    fp_poly::Poly f(M.ell + 2, 0);
    // j powers mod p
    std::vector<long> jpow(M.v + 1, 1);
    for (long k = 1; k <= M.v; ++k) jpow[k] = mul_mod(jpow[k - 1], jE, p);
    for (const auto& t : M.terms) {
        long c = static_cast<long>(mpz_fdiv_ui(t.c.get_mpz_t(), static_cast<unsigned long>(p)));
        f[t.i] = mod_norm(f[t.i] + mul_mod(c, jpow[t.k], p), p);
    }
    return fp_poly::trim(std::move(f));
}

ClassifyResult classify(long p, long a, long b, const ModularPolynomial& M) {
    long ell = M.ell;
    if (!is_prime_small(p) || p < 5) fail(ErrorKind::unsupported, "classify: need prime p >= 5");
    if (p == ell) fail(ErrorKind::degenerate_input, "classify: p = ell");
    long jE = j_mod_p(p, a, b);  // also rejects singular curves
    if (jE == 0 || jE == mod_norm(1728, p))
        fail(ErrorKind::degenerate_input, "classify: j(E) in {0, 1728}");
    if (brute_force_trace(p, a, b) == 0)
        fail(ErrorKind::degenerate_input, "classify: supersingular curve");
    fp_poly::Poly f = specialize_modpoly_fp(M, p, a, b);
    if (static_cast<long>(f.size()) != ell + 2)
        fail(ErrorKind::internal, "classify: specialized modular polynomial has wrong degree");
    long r = smallest_factor_degree(f, p);
    ClassifyResult out;
    out.ell = ell;
    out.r = r;
    out.kind = (r == 1) ? CurveKind::elkies : CurveKind::atkin;
    if (out.kind == CurveKind::atkin && (ell + 1) % r != 0)
        fail(ErrorKind::internal, "classify: Atkin factor degree does not divide ell + 1");
    return out;
}

InstanceContext InstanceContext::make(long p, long a, long b, long ell, long n,
                                      const ModularPolynomial& M, std::uint64_t seed) {
    InstanceContext ctx;
    ctx.p = p;
    ctx.a = a;
    ctx.b = b;
    ctx.ell = ell;
    ctx.n = n;
    ClassifyResult cls = classify(p, a, b, M);
    if (cls.kind != CurveKind::atkin)
        fail(ErrorKind::unsupported, "instance: not an Atkin prime for this curve");
    ctx.r = cls.r;
    ctx.t_oracle = brute_force_trace(p, a, b);
    ctx.ord_n_p = ord_mod(p, n);
    ctx.frob_deg = frobenius_order_on_torsion(p, ctx.t_oracle, ell);
    long mdeg = std::lcm(std::lcm(ctx.r, ctx.ord_n_p), ctx.frob_deg);
    ctx.F = std::make_unique<FqField>(static_cast<std::uint64_t>(p),
                                      static_cast<unsigned>(mdeg));
    ctx.curve = Curve(*ctx.F, ctx.F->from_int(a), ctx.F->from_int(b));
    ctx.zeta = ctx.F->nth_root_of_unity(n, seed);
    ctx.j = ctx.curve.j_invariant();
    // roots of M_ell(X, j(E)) in the working field
    std::vector<FqField::E> jp(M.v + 1, ctx.F->one());
    for (long k = 1; k <= M.v; ++k) jp[k] = ctx.F->mul(jp[k - 1], ctx.j);
    std::vector<FqField::E> poly(ell + 2, ctx.F->zero());
    for (const auto& t : M.terms)
        poly[t.i] = ctx.F->add(poly[t.i], ctx.F->mul(ctx.F->from_rat(BigRat(t.c)), jp[t.k]));
    ctx.roots = ctx.F->roots_of(poly, seed);
    if (static_cast<long>(ctx.roots.size()) != ell + 1)
        fail(ErrorKind::internal, "instance: expected ell + 1 roots in the working field, got " +
                                      std::to_string(ctx.roots.size()));
    ctx.basis = torsion_basis(ctx.curve, ell, ctx.t_oracle, seed);
    ctx.chi = Character::make(ell, n);
    return ctx;
}

EvalHooks<FqField::E> field_hooks(const FqField& F, const FqField::E& zeta, long n) {
    EvalHooks<FqField::E> h;
    h.mul = [&F](const FqField::E& a, const FqField::E& b) { return F.mul(a, b); };
    h.add = [&F](const FqField::E& a, const FqField::E& b) { return F.add(a, b); };
    h.sub = [&F](const FqField::E& a, const FqField::E& b) { return F.sub(a, b); };
    h.inv = [&F](const FqField::E& a) {
        if (F.is_zero(a)) fail(ErrorKind::degenerate_input, "field_hooks: inverse of zero");
        return F.inv(a);
    };
    h.is_zero = [&F](const FqField::E& a) { return F.is_zero(a); };
    h.from_rat = [&F](const BigRat& r) { return F.from_rat(r); };
    unsigned phi = euler_phi(static_cast<unsigned>(n));
    FqField::E zp = F.one();
    for (unsigned i = 0; i < phi; ++i) {
        h.zeta_pow.push_back(zp);
        zp = F.mul(zp, zeta);
    }
    return h;
}

FqField::E curve_gauss_sum(const InstanceContext& ctx, const Point& P, long c) {
    const FqField& F = *ctx.F;
    bool v_is_x = (ctx.n % 2 == 1);
    // powers of zeta_n
    std::vector<FqField::E> zp(ctx.n, F.one());
    for (long i = 1; i < ctx.n; ++i) zp[i] = F.mul(zp[i - 1], ctx.zeta);
    FqField::E acc = F.zero();
    Point Q = P;
    for (long a = 1; a < ctx.ell; ++a) {
        if (Q.inf) fail(ErrorKind::internal, "curve_gauss_sum: point order below ell");
        long e = ctx.chi.chi_exponent(a, c);
        acc = F.add(acc, F.mul(zp[e], v_is_x ? Q.x : Q.y));
        Q = add(ctx.curve, Q, P);
    }
    if (!Q.inf) fail(ErrorKind::internal, "curve_gauss_sum: point order is not ell");
    return acc;
}

FqField::E gauss_power_oracle(const InstanceContext& ctx, const Point& P, long c) {
    FqField::E g = curve_gauss_sum(ctx, P, c);
    if (ctx.F->is_zero(g))
        fail(ErrorKind::degenerate_input, "gauss_power_oracle: G = 0 (reject instance)");
    return ctx.F->pow(g, BigInt(ctx.n));
}

KernelMatcher KernelMatcher::build(long ell, const ModularPolynomial& M) {
    long v = M.v;
    long prec = 3 * (ell + 1) * v + 24;
    QSeries j = standard_series(StandardSeries::J, prec + v + 2);
    QSeries m = m_ell(ell, prec + v + 2);
    QSeries p1 = p1_series(ell, prec + 8);
    QSeries delta_inv = standard_series(StandardSeries::Delta, prec + 8).inverse();
    QSeries e4 = standard_series(StandardSeries::E4, prec + 8);
    QSeries e6 = standard_series(StandardSeries::E6, prec + 8);
    QSeries p12 = p1 * p1;
    QSeries p13 = p12 * p1;
    QSeries p14 = p13 * p1;
    QSeries p16 = p13 * p13;

    KernelMatcher km;
    km.p16_delta = reduce_weight0(p16 * delta_inv, M, m, j);
    km.p14_e4 = reduce_weight0(p14 * e4 * delta_inv, M, m, j);
    km.p13_e6 = reduce_weight0(p13 * e6 * delta_inv, M, m, j);

    // self-check: the reductions reproduce their series through the same
    // evaluation path used at runtime
    EvalHooks<QSeries> hooks = series_hooks(1, 1, prec);
    struct Item {
        const AuxRepresentation* rep;
        const QSeries* f;
    };
    QSeries f1 = p16 * delta_inv, f2 = p14 * e4 * delta_inv, f3 = p13 * e6 * delta_inv;
    for (const auto& [rep, f] :
         {Item{&km.p16_delta, &f1}, Item{&km.p14_e4, &f2}, Item{&km.p13_e6, &f3}}) {
        QSeries got = evaluate_aux(*rep, M, j.truncated(prec), m.truncated(prec), hooks);
        long cap = std::min(got.prec(), f->prec());
        if (auto d = first_difference(got.truncated(cap), f->truncated(cap)); d.has_value())
            fail(ErrorKind::precision,
                 "kernel matcher self-check failed at exponent " + std::to_string(*d));
    }
    return km;
}

namespace {

FqField::E kernel_x_sum(const InstanceContext& ctx, const Point& gen) {
    const FqField& F = *ctx.F;
    FqField::E s = F.zero();
    Point q = gen;
    for (long i = 1; i < ctx.ell; ++i) {
        if (q.inf) fail(ErrorKind::internal, "kernel_x_sum: generator order below ell");
        s = F.add(s, q.x);
        q = add(ctx.curve, q, gen);
    }
    return s;
}

}  // namespace

Point match_kernel(const InstanceContext& ctx, const FqField::E& m, const KernelMatcher& km,
                   const ModularPolynomial& M) {
    const FqField& F = *ctx.F;
    EvalHooks<FqField::E> hooks = field_hooks(F, ctx.zeta, ctx.n);
    FqField::E deltaE = ctx.curve.discriminant_16();
    FqField::E e4E = F.from_int(-48 * ctx.a);
    FqField::E e6E = F.from_int(864 * ctx.b);
    FqField::E dinv = F.inv(deltaE);

    FqField::E rhs1 = evaluate_aux(km.p16_delta, M, ctx.j, m, hooks);
    auto cands = kernel_subgroups(ctx.curve, ctx.ell, ctx.basis);
    std::vector<std::pair<Point, FqField::E>> stage1;
    for (const auto& gen : cands) {
        FqField::E s = kernel_x_sum(ctx, gen);
        FqField::E s2 = F.mul(s, s);
        FqField::E s6 = F.mul(F.mul(s2, s2), s2);
        if (F.mul(s6, dinv) == rhs1) stage1.emplace_back(gen, s);
    }
    if (stage1.empty())
        fail(ErrorKind::internal, "match_kernel: no subgroup matches p1^6/Delta (convention bug)");
    if (stage1.size() > 1) {
        FqField::E rhs2 = evaluate_aux(km.p14_e4, M, ctx.j, m, hooks);
        std::vector<std::pair<Point, FqField::E>> stage2;
        for (const auto& [gen, s] : stage1) {
            FqField::E s2 = F.mul(s, s);
            FqField::E s4 = F.mul(s2, s2);
            if (F.mul(F.mul(s4, e4E), dinv) == rhs2) stage2.emplace_back(gen, s);
        }
        stage1 = std::move(stage2);
    }
    if (stage1.size() > 1) {
        FqField::E rhs3 = evaluate_aux(km.p13_e6, M, ctx.j, m, hooks);
        std::vector<std::pair<Point, FqField::E>> stage3;
        for (const auto& [gen, s] : stage1) {
            FqField::E s3 = F.mul(F.mul(s, s), s);
            if (F.mul(F.mul(s3, e6E), dinv) == rhs3) stage3.emplace_back(gen, s);
        }
        stage1 = std::move(stage3);
    }
    if (stage1.empty())
        fail(ErrorKind::internal, "match_kernel: tiebreakers eliminated all candidates");
    if (stage1.size() > 1)
        fail(ErrorKind::degenerate_input,
             "match_kernel: multiple subgroups match after tiebreakers (skip instance)");
    return stage1.front().first;
}

long trace_index_mod_n(const InstanceContext& ctx, const RationalRepresentation& rep,
                       const ModularPolynomial& M, const KernelMatcher& km) {
    const FqField& F = *ctx.F;
    if (rep.ell != ctx.ell || rep.n != ctx.n)
        fail(ErrorKind::degenerate_input, "trace_index: representation does not match instance");
    if (ctx.r <= 2) fail(ErrorKind::unsupported, "trace_index: requires r > 2");

    EvalHooks<FqField::E> hooks = field_hooks(F, ctx.zeta, ctx.n);
    FqField::E m = ctx.roots.front();  // deterministic choice (roots sorted)
    FqField::E m1 = F.frobenius(m);
    FqField::E m2 = F.frobenius(m1);
    if (m1 == m || m2 == m)
        fail(ErrorKind::internal, "trace_index: Frobenius orbit of the root is too short");
    FqField::E r1 = evaluate(rep, M, ctx.j, m, m1, hooks);
    FqField::E r2 = evaluate(rep, M, ctx.j, m, m2, hooks);
    if (F.is_zero(r1) || F.is_zero(r2))
        fail(ErrorKind::degenerate_input, "trace_index: representation vanishes at the instance");
    FqField::E A = F.mul(r1, F.inv(r2));

    Point P = match_kernel(ctx, m, km, M);
    long n = ctx.n, p = ctx.p;

    FqField::E val;
    if (p % n == 1) {
        FqField::E gamma = gauss_power_oracle(ctx, P, 1);
        // runtime check: Gamma lies in F_{p^lcm(r, ord_n(p))}
        long sub = std::lcm(ctx.r, ctx.ord_n_p);
        if (F.pow(gamma, pow_int(BigInt(p), static_cast<unsigned long>(sub))) != gamma)
            fail(ErrorKind::internal, "trace_index: Gamma is not in F_{p^lcm(r, ord_n(p))}");
        BigInt exp = BigInt(p) * (p - 1) / n;
        val = F.mul(A, F.pow(gamma, exp));
    } else {
        // general-p product formula with p = n q1 + m1p, p^2 = n q2 + m2p
        long pprime = inv_mod_small(p % n, n);
        long q1 = p / n, m1p = p % n;
        long p2 = p * p;
        long q2 = p2 / n, m2p = p2 % n;
        FqField::E gp = curve_gauss_sum(ctx, P, pprime);
        FqField::E gp2 = curve_gauss_sum(ctx, P, mod_norm(pprime * pprime, n));
        FqField::E ginv = curve_gauss_sum(ctx, P, n - 1);  // chi^{-1}
        if (F.is_zero(gp) || F.is_zero(gp2) || F.is_zero(ginv))
            fail(ErrorKind::degenerate_input, "trace_index: zero Gauss sum (reject instance)");
        FqField::E num = F.mul(F.mul(F.pow(F.pow(gp, BigInt(n)), BigInt(q1)),
                                     F.pow(gp, BigInt(m1p))),
                               ginv);
        FqField::E den = F.mul(F.mul(F.pow(F.pow(gp2, BigInt(n)), BigInt(q2)),
                                     F.pow(gp2, BigInt(m2p))),
                               ginv);
        if (F.is_zero(num) || F.is_zero(den))
            fail(ErrorKind::degenerate_input, "trace_index: degenerate product (reject instance)");
        val = F.mul(A, F.mul(den, F.inv(num)));
    }

    // val = chi^{-1}(t) = zeta_n^{-e}
    long d = -1;
    FqField::E cur = F.one();
    for (long e = 0; e < n; ++e) {
        if (cur == val) {
            d = e;
            break;
        }
        cur = F.mul(cur, ctx.zeta);
    }
    if (d < 0)
        fail(ErrorKind::internal,
             "trace_index: value is not in mu_n (convention or representation bug)");
    return mod_norm(-d, n);
}

TraceResult trace_mod_ell(long p, long a, long b, long ell,
                          const std::vector<RationalRepresentation>& reps,
                          const ModularPolynomial& M, std::uint64_t seed) {
    ClassifyResult cls = classify(p, a, b, M);
    if (cls.kind != CurveKind::atkin)
        fail(ErrorKind::unsupported, "trace_mod_ell: not an Atkin prime for this curve");
    TraceResult out;
    out.ell = ell;
    out.r = cls.r;
    if (cls.r == 2) {
        out.t_mod_ell = 0;
        if (legendre(mod_norm(-4 * p, ell), ell) != -1)
            fail(ErrorKind::internal, "trace_mod_ell: r = 2 output fails the Atkin law");
        return out;
    }
    long lcm_n = 1;
    KernelMatcher km = KernelMatcher::build(ell, M);
    for (const auto& rep : reps) {
        InstanceContext ctx = InstanceContext::make(p, a, b, ell, rep.n, M, seed);
        long e = trace_index_mod_n(ctx, rep, M, km);
        out.indices.push_back(IndexRecord{rep.n, e});
        lcm_n = std::lcm(lcm_n, rep.n);
    }
    if (lcm_n != ell - 1)
        fail(ErrorKind::missing_artifact,
             "trace_mod_ell: representations cover lcm " + std::to_string(lcm_n) +
                 " but ell - 1 = " + std::to_string(ell - 1));
    long g = smallest_primitive_root(ell);
    long e_full = -1;
    for (long e = 0; e < ell - 1; ++e) {
        bool ok = true;
        for (const auto& rec : out.indices)
            if (e % rec.n != rec.e) ok = false;
        if (ok) {
            e_full = e;
            break;
        }
    }
    if (e_full < 0) fail(ErrorKind::internal, "trace_mod_ell: CRT inconsistency across n");
    long t = 1;
    for (long i = 0; i < e_full; ++i) t = mul_mod(t, g, ell);
    out.t_mod_ell = t;
    if (legendre(mod_norm(t * t - 4 * p, ell), ell) != -1)
        fail(ErrorKind::internal, "trace_mod_ell: output violates the Atkin discriminant law");
    return out;
}

std::vector<FoundInstance> search_instances(long ell, const std::vector<long>& ns, long count,
                                            bool want_r2, bool require_p1_mod_n,
                                            const ModularPolynomial& M, long p_max) {
    std::vector<FoundInstance> out;
    for (long p = 7; p < p_max && static_cast<long>(out.size()) < count; ++p) {
        if (!is_prime_small(p) || p == ell) continue;
        bool pmod_ok = true;
        for (long n : ns) {
            if (require_p1_mod_n && p % n != 1) pmod_ok = false;
            if (!require_p1_mod_n && p % n == 1) pmod_ok = false;
        }
        if (!pmod_ok) continue;
        for (long a = 1; a <= 5 && static_cast<long>(out.size()) < count; ++a) {
            for (long b = 1; b <= 5 && static_cast<long>(out.size()) < count; ++b) {
                long disc = mod_norm(4 * a * a * a + 27 * b * b, p);
                if (disc == 0) continue;
                long jE;
                try {
                    jE = j_mod_p(p, a, b);
                } catch (const Error&) {
                    continue;
                }
                if (jE == 0 || jE == mod_norm(1728, p)) continue;
                long t = brute_force_trace(p, a, b);
                if (t == 0) continue;  // supersingular
                if (legendre(mod_norm(t * t - 4 * p, ell), ell) != -1) continue;  // not Atkin
                ClassifyResult cls = classify(p, a, b, M);
                if (cls.kind != CurveKind::atkin) continue;
                if (want_r2 != (cls.r == 2)) continue;
                if (!want_r2) {
                    // keep the working field small enough for desk-scale runs
                    long D = frobenius_order_on_torsion(p, t, ell);
                    long mdeg = std::lcm(cls.r, D);
                    for (long n : ns) mdeg = std::lcm(mdeg, ord_mod(p, n));
                    if (mdeg > 24) continue;
                }
                out.push_back(FoundInstance{p, a, b, cls.r, t});
            }
        }
    }
    return out;
}

}  // namespace uegs
