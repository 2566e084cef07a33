// Acceptance gate: one pass/fail line per criterion, nonzero exit on any
// failure. Everything is exact arithmetic at desk scale; the slowest part is
// the ell = 13 representation build.
#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <vector>

#include "uegs/error.hpp"
#include "uegs/modular_functions.hpp"
#include "uegs/pipeline.hpp"

using namespace uegs;

namespace {

const std::uint64_t kSeed = 0xC0FFEE;
bool g_all_ok = true;

void report(int num, const std::string& what, bool ok, const std::string& detail = "") {
    std::cout << (ok ? "[PASS] " : "[FAIL] ") << "criterion " << num << ": " << what;
    if (!detail.empty()) std::cout << " (" << detail << ")";
    std::cout << std::endl;
    if (!ok) g_all_ok = false;
}

template <typename F>
void criterion(int num, const std::string& what, F body) {
    auto start = std::chrono::steady_clock::now();
    try {
        std::string detail = body();
        auto secs = std::chrono::duration_cast<std::chrono::seconds>(
                        std::chrono::steady_clock::now() - start)
                        .count();
        report(num, what, true, detail + (detail.empty() ? "" : ", ") +
                                    std::to_string(secs) + "s");
    } catch (const std::exception& e) {
        report(num, what, false, e.what());
    }
}

void require(bool cond, const std::string& msg) {
    if (!cond) throw std::runtime_error(msg);
}

long ind_of(long t, long g, long ell) {
    long x = 1, tm = ((t % ell) + ell) % ell;
    for (long e = 0; e < ell - 1; ++e) {
        if (x == tm) return e;
        x = (x * g) % ell;
    }
    throw std::runtime_error("ind: t = 0 mod ell");
}

// y^2 - (x^3 - E4/48 x + E6/864) at the given torsion label
QSeries tate_residual(TorsionLabel label, long ell, long prec) {
    QSeries x = tate_x(label, ell, prec);
    QSeries y = tate_y(label, ell, prec);
    QSeries e4 = standard_series(StandardSeries::E4, prec);
    QSeries e6 = standard_series(StandardSeries::E6, prec);
    return y * y - x.pow(3) + (e4 * x).scaled(Cyclotomic(BigRat(1, 48))) -
           e6.scaled(Cyclotomic(BigRat(1, 864)));
}

const std::vector<std::pair<long, long>> kPairs = {{5, 2}, {5, 4}, {7, 3}, {13, 4}};

struct Artifacts {
    ModularPolynomial m5, m7, m13;
    std::vector<RationalRepresentation> reps;   // for kPairs, in order
    RationalRepresentation rep13_3;             // extra: needed for ell = 13 CRT
    const ModularPolynomial& modpoly(long ell) const {
        return ell == 5 ? m5 : ell == 7 ? m7 : m13;
    }
    const RationalRepresentation& rep(long ell, long n) const {
        if (ell == 13 && n == 3) return rep13_3;
        for (size_t i = 0; i < kPairs.size(); ++i)
            if (kPairs[i].first == ell && kPairs[i].second == n) return reps[i];
        throw std::runtime_error("no such representation");
    }
};

void oracle_invariants(const InstanceContext& ctx) {
    const FqField& F = *ctx.F;
    auto subs = kernel_subgroups(ctx.curve, ctx.ell, ctx.basis);
    const Point& P = subs.front();

    // Gamma generator-independence across three generators of <P>
    FqField::E g1 = gauss_power_oracle(ctx, P, 1);
    FqField::E g2 = gauss_power_oracle(ctx, scalar_mul(ctx.curve, BigInt(2), P), 1);
    FqField::E g3 = gauss_power_oracle(ctx, scalar_mul(ctx.curve, BigInt(3), P), 1);
    require(g1 == g2 && g1 == g3, "Gamma depends on the subgroup generator");

    // Frobenius law (stated for p = 1 mod n; general p uses chi^{p'})
    Point fP = frobenius_point(ctx.curve, P);
    if (ctx.p % ctx.n == 1) {
        FqField::E lhs = curve_gauss_sum(ctx, fP, 1);
        FqField::E rhs = F.pow(curve_gauss_sum(ctx, P, 1), BigInt(ctx.p));
        require(lhs == rhs, "Frobenius law fails");
    } else {
        long pp = 1;
        while ((pp * ctx.p) % ctx.n != 1) ++pp;
        FqField::E lhs = curve_gauss_sum(ctx, fP, 1);
        FqField::E rhs = F.pow(curve_gauss_sum(ctx, P, pp), BigInt(ctx.p));
        require(lhs == rhs, "general-p Frobenius law fails");
    }

    // pairing law e(P, phi^2 P) = e(P, phi P)^t and the characteristic equation
    Point ffP = frobenius_point(ctx.curve, fP);
    FqField::E w1 = weil_pairing(ctx.curve, P, fP, ctx.ell, kSeed);
    FqField::E w2 = weil_pairing(ctx.curve, P, ffP, ctx.ell, kSeed);
    long tm = ((ctx.t_oracle % ctx.ell) + ctx.ell) % ctx.ell;
    require(w2 == F.pow(w1, BigInt(tm)), "pairing law fails");
    for (const Point& Q : {P, subs.back()}) {
        Point fQ = frobenius_point(ctx.curve, Q);
        Point chk = add(ctx.curve, frobenius_point(ctx.curve, fQ),
                        add(ctx.curve, scalar_mul(ctx.curve, BigInt(-ctx.t_oracle), fQ),
                            scalar_mul(ctx.curve, BigInt(ctx.p), Q)));
        require(chk.inf, "characteristic equation fails");
    }
}

}  // namespace

int main(int argc, char** argv) {
    Artifacts art;

    criterion(1, "Tate equation holds for all 24 5-torsion labels through exponent 40", [] {
        long P = 44;
        for (long a = 0; a < 5; ++a)
            for (long b = 0; b < 5; ++b) {
                if (a == 0 && b == 0) continue;
                QSeries r = tate_residual(TorsionLabel{a, b}, 5, P);
                require(equal_to(r, QSeries::zero(r.denom(), r.prec()), 40, 1),
                        "residual nonzero at label (" + std::to_string(a) + "," +
                            std::to_string(b) + ")");
            }
        return std::string("24 labels");
    });

    criterion(2, "canonical modular polynomials for ell in {5,7,13}", [&art] {
        for (long ell : {5L, 7L, 13L}) {
            long prec = modpoly_min_prec(ell);
            ModularPolynomial M = build_canonical_modpoly(ell, prec);
            long v = EtaQuotientSpec::for_prime(ell).v;
            require(M.v == v, "deg_Y != v");
            require(!M.terms.empty() && M.terms.front().i == ell + 1 &&
                        M.terms.front().k == 0 && M.terms.front().c == 1,
                    "not monic of deg_X = ell + 1");
            for (const auto& t : M.terms) require(t.i <= ell + 1 && t.k <= v, "degree bounds");
            // residual at build precision + 10
            long rp = prec + 10;
            QSeries res = specialize(M, m_ell(ell, rp), standard_series(StandardSeries::J, rp));
            require(res.is_zero_to_prec(), "M(m_ell, j) != 0 at prec + 10");
            // stability under re-derivation at higher precision
            ModularPolynomial M2 = build_canonical_modpoly(ell, prec + 12);
            require(modpoly_content_hash(M2) == modpoly_content_hash(M),
                    "re-derivation changed coefficients");
            if (ell == 5) art.m5 = M;
            if (ell == 7) art.m7 = M;
            if (ell == 13) art.m13 = M;
        }
        return std::string();
    });

    criterion(3, "sigma descent, order bound, (P,Q0)->(2P,3Q0) invariance", [] {
        for (auto [ell, n] : kPairs) {
            SigmaSpec spec = SigmaSpec::make(ell, n);
            long P = 3 * ell;
            QSeries s0 = sigma_series(spec, 0, P);
            for (const auto& [e, c] : s0.terms())
                require(n % c.conductor() == 0, "coefficient outside Q(zeta_n)");
            if (s0.order_num().has_value())
                require(s0.order_num().value() >= -ell + 1, "order below -1 + 1/ell");
            else
                require(ell == 5 && n == 2, "unexpectedly vanishing sigma");

            // rebuild from scratch with (P, Q0) -> (2P, 3Q0)
            long a = 2, b = 3;
            long qprec = (P + ell - 1) / ell + 3;
            auto V = [&](TorsionLabel lab) {
                return spec.v_is_x ? tate_x(lab, ell, qprec) : tate_y(lab, ell, qprec);
            };
            QSeries g2(1, qprec), h3(ell, qprec * ell);
            for (long lam = 1; lam < ell; ++lam) {
                g2 = g2 + V(TorsionLabel{a * lam % ell, 0}).scaled(spec.chi.chi(lam));
                h3 = h3 + V(TorsionLabel{0, b * lam % ell}).scaled(spec.chi.chi(lam));
            }
            QSeries p1 = p1_series(ell, qprec);
            QSeries dinv = standard_series(StandardSeries::Delta, qprec + 2).inverse();
            Cyclotomic gx = cyclotomic_gauss(spec.chi, a * b);
            QSeries s2 = (g2 * h3 * p1.pow(static_cast<unsigned>(spec.r)) * dinv)
                             .scaled(gx)
                             .truncated(P);
            long cap = std::min(s0.prec(), s2.prec());
            require(equal_to(s0, s2, cap, ell), "not invariant under (2P, 3Q0)");
        }
        return std::string("4 pairs");
    });

    criterion(4, "representations assemble and verify (margin 16, k = 1 identity)",
              [&art] {
                  for (auto [ell, n] : kPairs) {
                      const ModularPolynomial& M = art.modpoly(ell);
                      RepresentationPlan plan = RepresentationPlan::make(ell, n);
                      require(plan.prec_target == (ell * ell + ell + 1) * M.v - 1,
                              "wrong precision target");
                      RationalRepresentation rep = assemble_and_verify(plan, +1, M);
                      for (const auto& [key, c] : rep.tensor) {
                          require(key[0] >= 0 && key[0] < ell, "i1 bound");
                          require(key[1] >= 0 && key[1] <= ell * ell + ell, "i2 bound");
                          require(key[2] >= 0 && key[2] < M.v, "i3 bound");
                          require(n % c.conductor() == 0, "coefficient field");
                      }
                      // a0 slice reproducible at the reduced precision (2 ell + 1) v - 1
                      long pq = (2 * ell + 1) * M.v - 1;
                      SigmaSpec spec = SigmaSpec::make(ell, n);
                      QSeries j = standard_series(StandardSeries::J, pq + 2);
                      QSeries m = m_ell(ell, pq + 2);
                      QSeries m2 = m_ell2_conjugate(ell, 0, pq);
                      QSeries sigma0 = sigma_series(spec, 0, ell * pq);
                      ConjugateBasis basis = conjugate_basis(M, j, m, m2);
                      auto a = stage_a_traces(sigma0, basis, ell, n, M.v);
                      for (const auto& ai : a)
                          require(ai.order_num().value_or(0) >= -M.v, "stage A order bound");
                      art.reps.push_back(std::move(rep));
                  }
                  art.rep13_3 = assemble_and_verify(RepresentationPlan::make(13, 3), +1,
                                                    art.modpoly(13));
                  return std::string("pairs (5,2) (5,4) (7,3) (13,4) plus (13,3)");
              });

    std::vector<InstanceContext> accepted;  // reused by criterion 8

    criterion(5, "end-to-end trace: >= 3 instances per ell in {5, 13}", [&art, &accepted] {
        long total = 0;
        for (long ell : {5L, 13L}) {
            const ModularPolynomial& M = art.modpoly(ell);
            std::vector<long> ns = ell == 5 ? std::vector<long>{4} : std::vector<long>{4, 3};
            std::vector<RationalRepresentation> reps;
            for (long n : ns) reps.push_back(art.rep(ell, n));
            auto insts = search_instances(ell, ns, 3, false, true, M);
            require(insts.size() == 3, "fewer than 3 instances found");
            long g = smallest_primitive_root(ell);
            for (const auto& I : insts) {
                require(I.r > 2, "search returned r <= 2");
                TraceResult tr = trace_mod_ell(I.p, I.a, I.b, ell, reps, M, kSeed);
                require(tr.t_mod_ell == ((I.t % ell) + ell) % ell,
                        "t mod ell disagrees with brute force");
                for (const auto& rec : tr.indices)
                    require(rec.e == ind_of(I.t, g, ell) % rec.n,
                            "index e disagrees with ind_g(t)");
                ++total;
                if (accepted.size() < 4)
                    accepted.push_back(
                        InstanceContext::make(I.p, I.a, I.b, ell, ns.front(), M, kSeed));
            }
        }
        return std::to_string(total) + " instances, xi = +1 (calibrated)";
    });

    criterion(6, "r = 2 shortcut returns t = 0 on >= 3 instances", [&art] {
        auto insts = search_instances(5, {4}, 3, true, true, art.modpoly(5));
        require(insts.size() == 3, "fewer than 3 r = 2 instances");
        for (const auto& I : insts) {
            TraceResult tr = trace_mod_ell(I.p, I.a, I.b, 5, {}, art.modpoly(5), kSeed);
            require(tr.r == 2 && tr.t_mod_ell == 0, "shortcut output wrong");
            require(I.t % 5 == 0, "brute force disagrees");
        }
        return std::string("3 instances");
    });

    criterion(7, "general-p path (p != 1 mod n) matches brute force", [&art] {
        auto insts = search_instances(5, {4}, 1, false, false, art.modpoly(5));
        require(insts.size() == 1, "no general-p instance found");
        const auto& I = insts[0];
        require(I.p % 4 != 1, "search returned p = 1 mod n");
        TraceResult tr =
            trace_mod_ell(I.p, I.a, I.b, 5, {art.rep(5, 4)}, art.modpoly(5), kSeed);
        require(tr.t_mod_ell == ((I.t % 5) + 5) % 5, "trace disagrees with brute force");
        return "p = " + std::to_string(I.p);
    });

    criterion(8, "oracle invariants on every accepted instance", [&accepted] {
        require(!accepted.empty(), "no accepted instances from criterion 5");
        for (const auto& ctx : accepted) oracle_invariants(ctx);
        return std::to_string(accepted.size()) + " instances";
    });

    criterion(9, "cost-model exponent fit in [2.2, 3.8]", [&art] {
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        std::ostringstream counts;
        for (auto [ell, n] : std::vector<std::pair<long, long>>{{5, 4}, {7, 3}, {13, 4}}) {
            const ModularPolynomial& M = art.modpoly(ell);
            long pq = 10;
            QSeries j = standard_series(StandardSeries::J, pq + 2);
            QSeries m = m_ell(ell, pq + 2);
            QSeries m2 = m_ell2_conjugate(ell, 0, pq);
            EvalHooks<QSeries> hooks = series_hooks(n, ell, ell * pq);
            (void)evaluate(art.rep(ell, n), M, j.rescaled(ell).truncated(ell * pq),
                           m.rescaled(ell).truncated(ell * pq), m2, hooks);
            counts << " " << ell << ":" << hooks.mults;
            double x = std::log(static_cast<double>(ell));
            double y = std::log(static_cast<double>(hooks.mults));
            sx += x, sy += y, sxx += x * x, sxy += x * y;
        }
        double exponent = (3 * sxy - sx * sy) / (3 * sxx - sx * sx);
        require(exponent >= 2.2 && exponent <= 3.8, "exponent outside [2.2, 3.8]");
        return "exponent " + std::to_string(exponent) + ", mults" + counts.str();
    });

    // README restatement check (path passed by the build system)
    if (argc > 1) {
        std::ifstream in(argv[1]);
        std::stringstream ss;
        ss << in.rdbuf();
        bool ok = in.good() && ss.str().find("not competitive") != std::string::npos;
        report(9, "README restates that the method is not competitive", ok);
    }

    std::cout << (g_all_ok ? "ACCEPTANCE: all criteria passed" : "ACCEPTANCE: FAILURES above")
              << std::endl;
    return g_all_ok ? 0 : 1;
}
