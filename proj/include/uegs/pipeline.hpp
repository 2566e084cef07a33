#ifndef UEGS_PIPELINE_HPP
#define UEGS_PIPELINE_HPP

#include <memory>
#include <vector>

#include "uegs/elliptic_curve.hpp"
#include "uegs/representation.hpp"

namespace uegs {

enum class CurveKind { elkies, atkin };

struct ClassifyResult {
    long ell = 0;
    CurveKind kind = CurveKind::atkin;
    long r = 0;  // smallest degree of an irreducible factor of M_ell(X, j(E))
};

struct IndexRecord {
    long n = 0;
    long e = 0;  // index of t modulo n: chi^{-1}(t) = zeta_n^{-e}
};

struct TraceResult {
    long ell = 0;
    long r = 0;
    std::vector<IndexRecord> indices;
    long t_mod_ell = 0;
};

// M_ell(X, j(E)) as a polynomial over F_p
fp_poly::Poly specialize_modpoly_fp(const ModularPolynomial& M, long p, long a, long b);

// classification by distinct-degree gcd probing; rejects singular curves,
// j in {0, 1728}, p == ell, and supersingular curves (desk scale: brute force)
ClassifyResult classify(long p, long a, long b, const ModularPolynomial& M);

// ---------------------------------------------------------------------------
// Working context for one accepted instance: the curve base-changed to
// F_{p^Mdeg} with the full ell-torsion, a fixed zeta_n image, the roots of
// M_ell(X, j(E)), and the torsion oracle (enumeration-backed at desk scale).
struct InstanceContext {
    long p = 0, a = 0, b = 0, ell = 0, n = 0;
    long t_oracle = 0;  // brute-force trace; used only by the oracle side
    long r = 0;         // factor degree from classify
    long ord_n_p = 1;   // multiplicative order of p mod n
    long frob_deg = 0;  // order of Frobenius on E[ell]
    std::unique_ptr<FqField> F;  // F_{p^Mdeg}, Mdeg = lcm(r, ord_n_p, frob_deg)
    Curve curve;
    FqField::E zeta;    // exact order n
    FqField::E j;       // j(E)
    std::vector<FqField::E> roots;  // all roots of M_ell(X, j(E)) in F
    TorsionBasis basis;
    Character chi;

    static InstanceContext make(long p, long a, long b, long ell, long n,
                                const ModularPolynomial& M, std::uint64_t seed);
};

// hooks for evaluating representations in the instance field
EvalHooks<FqField::E> field_hooks(const FqField& F, const FqField::E& zeta, long n);

// G_{ell,n,chi^c}(E, P) = sum_a chi^c(a) (aP)_V in the instance field
FqField::E curve_gauss_sum(const InstanceContext& ctx, const Point& P, long c);

// Gamma = G_{ell,n,chi^c}(E, P)^n; errors when zero (degenerate instance)
FqField::E gauss_power_oracle(const InstanceContext& ctx, const Point& P, long c);

// the three weight-0 invariants used for kernel matching
struct KernelMatcher {
    AuxRepresentation p16_delta;   // p1^6 / Delta
    AuxRepresentation p14_e4;      // p1^4 E4 / Delta
    AuxRepresentation p13_e6;      // p1^3 E6 / Delta
    static KernelMatcher build(long ell, const ModularPolynomial& M);
};

// the unique kernel subgroup (generator) whose p1-invariants match the
// representation evaluated at (j(E), m)
Point match_kernel(const InstanceContext& ctx, const FqField::E& m, const KernelMatcher& km,
                   const ModularPolynomial& M);

// index e mod n with chi^{-1}(t) = zeta_n^{-e}, via the A-ratio and the
// Gamma oracle; p == 1 mod n uses the direct power, otherwise the
// chi^{p'} product formula
long trace_index_mod_n(const InstanceContext& ctx, const RationalRepresentation& rep,
                       const ModularPolynomial& M, const KernelMatcher& km);

// full per-ell pipeline: classify, r = 2 shortcut, per-n indices, CRT
TraceResult trace_mod_ell(long p, long a, long b, long ell,
                          const std::vector<RationalRepresentation>& reps,
                          const ModularPolynomial& M, std::uint64_t seed);

// search instances at desk scale (p < p_max, small a, b) with the requested
// classification; ns = divisors whose representations will be used
struct FoundInstance {
    long p, a, b, r, t;
};
std::vector<FoundInstance> search_instances(long ell, const std::vector<long>& ns, long count,
                                            bool want_r2, bool require_p1_mod_n,
                                            const ModularPolynomial& M, long p_max = 500);

}  // namespace uegs

#endif
