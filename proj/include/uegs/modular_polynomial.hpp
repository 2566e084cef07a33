#ifndef UEGS_MODULAR_POLYNOMIAL_HPP
#define UEGS_MODULAR_POLYNOMIAL_HPP

#include <vector>

#include "uegs/qseries.hpp"

namespace uegs {

struct ModPolyTerm {
    long i;    // X-exponent, 0 <= i <= ell+1
    long k;    // Y-exponent, 0 <= k <= v
    BigInt c;  // integer coefficient
};

// The canonical modular polynomial M_ell(X, Y): monic of degree ell+1 in X,
// degree v = (ell-1)/gcd(ell-1,12) in Y, with M_ell(m_ell(q), j(q)) = 0.
struct ModularPolynomial {
    long ell = 0;
    long v = 0;
    std::vector<ModPolyTerm> terms;  // sorted (i desc, k desc), zero terms omitted

    // coefficient of X^i Y^k (0 if absent)
    BigInt coeff(long i, long k) const;
};

// Minimum build precision: (v+1)(ell+1) + ell + 4.
long modpoly_min_prec(long ell);

// Build from the elementary symmetric functions of the ell+1 conjugates
// {m_ell} u {m_ell(S_k tau)}, computed via Newton's identities on the power
// sums m_ell^t + ell * slice(m_ell2^t), then greedy elimination of pole terms
// against powers of j. Errors on precision shortfall or a non-integer
// coefficient.
ModularPolynomial build_canonical_modpoly(long ell, long prec);

// FNV-1a over the canonical term list; shared by the .cmp and .uegs formats.
unsigned long long modpoly_content_hash(const ModularPolynomial& m);

ModularPolynomial partial_x(const ModularPolynomial& m);
ModularPolynomial partial_y(const ModularPolynomial& m);

// Horner evaluation over any commutative ring T. `lift` maps a BigInt
// coefficient into T; `zero` is the additive identity of T.
template <typename T, typename Lift>
T specialize(const ModularPolynomial& m, const T& x, const T& y, const Lift& lift, const T& zero) {
    // group into y-polynomials by x-degree (terms are sorted i desc, k desc)
    std::vector<std::vector<std::pair<long, const BigInt*>>> by_x(m.ell + 2);
    long top_i = 0;
    for (const auto& t : m.terms) {
        by_x[t.i].emplace_back(t.k, &t.c);
        top_i = std::max(top_i, t.i);
    }
    auto eval_y = [&](const std::vector<std::pair<long, const BigInt*>>& p) -> T {
        T acc = zero;
        long deg = -1;
        for (const auto& [k, c] : p) {
            if (deg < 0) {
                acc = lift(*c);
                deg = k;
                continue;
            }
            while (deg > k) {
                acc = acc * y;
                --deg;
            }
            acc = acc + lift(*c);
        }
        while (deg > 0) {
            acc = acc * y;
            --deg;
        }
        return acc;
    };
    T acc = zero;
    bool first = true;
    for (long i = top_i; i >= 0; --i) {
        if (first) {
            acc = eval_y(by_x[i]);
            first = false;
            continue;
        }
        acc = acc * x;
        if (!by_x[i].empty()) acc = acc + eval_y(by_x[i]);
    }
    return acc;
}

// Convenience form for q-series arguments.
QSeries specialize(const ModularPolynomial& m, const QSeries& x, const QSeries& y);

}  // namespace uegs

#endif
