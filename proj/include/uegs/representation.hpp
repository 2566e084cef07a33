#ifndef UEGS_REPRESENTATION_HPP
#define UEGS_REPRESENTATION_HPP

#include <array>
#include <functional>
#include <map>
#include <vector>

#include "uegs/error.hpp"
#include "uegs/gauss_sums.hpp"
#include "uegs/modular_polynomial.hpp"

namespace uegs {

struct RepresentationPlan {
    long ell = 0;
    long n = 0;
    long v = 0;
    long prec_target = 0;  // (ell^2 + ell + 1) v - 1
    long margin = 16;
    static RepresentationPlan make(long ell, long n, long margin = 16);
};

// tensor b over Q(zeta_n): sigma * N * M' = sum b_{i1,i2,i3} m2^{i1} m^{i2} j^{i3}
struct RationalRepresentation {
    long ell = 0;
    long n = 0;
    long g = 0;   // character generator
    int xi = +1;  // xi = zeta_ell^xi
    long v = 0;
    long prec = 0;  // prec_target the tensor was determined at
    unsigned long long modpoly_hash = 0;
    std::map<std::array<long, 3>, Cyclotomic> tensor;  // key (i1, i2, i3)
};

// Weight-0 helper representation (functions of j and m only, no m2 slice):
// f * M' = sum b_{i2,i3} m^{i2} j^{i3}
struct AuxRepresentation {
    long ell = 0;
    long v = 0;
    std::map<std::pair<long, long>, Cyclotomic> b;
};

// c_i with M_{l,2}(X) / (X - m2) = sum c_i X^i, where
// M_{l,2}(X) = M_l(X, j) / (X - m); n_series = sum c_i m2^i = dM_{l,2}/dX (m2).
struct ConjugateBasis {
    std::vector<QSeries> c;  // size ell, d = ell
    QSeries n_series;
};
ConjugateBasis conjugate_basis(const ModularPolynomial& M, const QSeries& j, const QSeries& m,
                               const QSeries& m2);

// a_i = Tr(sigma * c_i) = ell * slice(sigma * c_i); enforces integer exponents,
// descent to Q(zeta_n) and ord(a_i) >= -v.
std::vector<QSeries> stage_a_traces(const QSeries& sigma0, const ConjugateBasis& basis, long ell,
                                    long n, long v);

// greedy reduction of h = a * (dM/dY)(m, j) against the monomials m^{i2} j^{i3}
std::map<std::pair<long, long>, Cyclotomic> stage_b_reduce(const QSeries& a,
                                                           const ModularPolynomial& M,
                                                           const QSeries& m, const QSeries& j);

AuxRepresentation reduce_weight0(const QSeries& f, const ModularPolynomial& M, const QSeries& m,
                                 const QSeries& j);

// Full build: series at prec_target + margin, Stage A + B, then verification
// of the assembled identity and of the k = 1 conjugate identity.
RationalRepresentation assemble_and_verify(const RepresentationPlan& plan, int xi_eps,
                                           const ModularPolynomial& M);

// Domain hooks for evaluate(): a commutative ring with division containing an
// image of zeta_n. Multiplications are counted through mul.
template <typename T>
struct EvalHooks {
    std::function<T(const T&, const T&)> mul, add, sub;
    std::function<T(const T&)> inv;  // errors on zero
    std::function<bool(const T&)> is_zero;
    std::function<T(const BigRat&)> from_rat;
    std::vector<T> zeta_pow;  // zeta_n^0 .. zeta_n^{phi(n)-1} (power basis)
    long mults = 0;

    T lift(const Cyclotomic& c) {
        T acc = from_rat(BigRat(0));
        const auto& co = c.coeffs();
        for (size_t i = 0; i < co.size(); ++i) {
            if (co[i] == 0) continue;
            T term = from_rat(co[i]);
            if (i > 0) {
                term = mul(term, zeta_pow[i]);
                ++mults;
            }
            acc = add(acc, term);
        }
        return acc;
    }
    T lift_int(const BigInt& c) { return from_rat(BigRat(c)); }
};

// Horner evaluation of a sparse two-variable polynomial through the hooks.
template <typename T>
T eval_poly(const ModularPolynomial& M, const T& x, const T& y, EvalHooks<T>& h) {
    std::vector<std::vector<std::pair<long, const BigInt*>>> by_x(M.ell + 2);
    long top = 0;
    for (const auto& t : M.terms) {
        by_x[t.i].emplace_back(t.k, &t.c);
        top = std::max(top, t.i);
    }
    T zero = h.from_rat(BigRat(0));
    auto eval_y = [&](const std::vector<std::pair<long, const BigInt*>>& p) -> T {
        T acc = zero;
        long deg = -1;
        for (const auto& [k, c] : p) {
            if (deg < 0) {
                acc = h.lift_int(*c);
                deg = k;
                continue;
            }
            while (deg > k) {
                acc = h.mul(acc, y);
                ++h.mults;
                --deg;
            }
            acc = h.add(acc, h.lift_int(*c));
        }
        while (deg > 0) {
            acc = h.mul(acc, y);
            ++h.mults;
            --deg;
        }
        return acc;
    };
    T acc = zero;
    bool first = true;
    for (long i = top; i >= 0; --i) {
        if (first) {
            acc = eval_y(by_x[i]);
            first = false;
            continue;
        }
        acc = h.mul(acc, x);
        ++h.mults;
        if (!by_x[i].empty()) acc = h.add(acc, eval_y(by_x[i]));
    }
    return acc;
}

// sigma(E) = num / (N * M') with N = (dM/dX)(m', j) / (m' - m) and
// M' = (dM/dY)(m, j); nested Horner over the index structure i1 -> i2 -> i3.
template <typename T>
T evaluate(const RationalRepresentation& rep, const ModularPolynomial& M, const T& j, const T& m,
           const T& mp, EvalHooks<T>& h) {
    T zero = h.from_rat(BigRat(0));
    // regroup tensor: i1 -> i2 -> (i3, coeff)
    std::map<long, std::map<long, std::vector<std::pair<long, const Cyclotomic*>>>> g;
    for (const auto& [key, c] : rep.tensor) g[key[0]][key[1]].emplace_back(key[2], &c);
    // dense nested Horner over the full structural summation range
    // i2 = 0 .. ell^2 + ell: every i1 slice is treated as a polynomial of the
    // proven m-degree bound, which is what the ell^3 v cost model charges;
    // the built tensors happen to be much sparser, a future optimization point
    long max_i2 = rep.tensor.empty() ? 0 : rep.ell * rep.ell + rep.ell;
    auto eval_i2_dense = [&](const std::map<long, std::vector<std::pair<long, const Cyclotomic*>>>&
                                 gm,
                             const auto& eval_inner) -> T {
        T acc = zero;
        for (long d = max_i2; d >= 0; --d) {
            if (d < max_i2) {
                acc = h.mul(acc, m);
                ++h.mults;
            }
            auto it = gm.find(d);
            if (it != gm.end()) acc = h.add(acc, eval_inner(it->second));
        }
        return acc;
    };
    auto horner = [&](const auto& groups, const T& var, const auto& eval_inner) -> T {
        T acc = zero;
        long deg = -1;
        for (auto it = groups.rbegin(); it != groups.rend(); ++it) {
            if (deg < 0) {
                acc = eval_inner(it->second);
                deg = it->first;
                continue;
            }
            while (deg > it->first) {
                acc = h.mul(acc, var);
                ++h.mults;
                --deg;
            }
            acc = h.add(acc, eval_inner(it->second));
        }
        while (deg > 0) {
            acc = h.mul(acc, var);
            ++h.mults;
            --deg;
        }
        return acc;
    };
    auto eval_i3 = [&](const std::vector<std::pair<long, const Cyclotomic*>>& p) -> T {
        T acc = zero;
        long deg = -1;
        for (auto it = p.rbegin(); it != p.rend(); ++it) {
            if (deg < 0) {
                acc = h.lift(*it->second);
                deg = it->first;
                continue;
            }
            while (deg > it->first) {
                acc = h.mul(acc, j);
                ++h.mults;
                --deg;
            }
            acc = h.add(acc, h.lift(*it->second));
        }
        while (deg > 0) {
            acc = h.mul(acc, j);
            ++h.mults;
            --deg;
        }
        return acc;
    };
    auto eval_i2 = [&](const std::map<long, std::vector<std::pair<long, const Cyclotomic*>>>& gm)
        -> T { return eval_i2_dense(gm, eval_i3); };
    T num = horner(g, mp, eval_i2);

    T diff = h.sub(mp, m);
    if (h.is_zero(diff)) fail(ErrorKind::degenerate_input, "evaluate: m' = m");
    T pdx = eval_poly(partial_x(M), mp, j, h);
    T pdy = eval_poly(partial_y(M), m, j, h);
    T den = h.mul(h.mul(pdx, h.inv(diff)), pdy);
    h.mults += 2;
    if (h.is_zero(den)) fail(ErrorKind::degenerate_input, "evaluate: zero denominator");
    T out = h.mul(num, h.inv(den));
    ++h.mults;
    return out;
}

// f(E) = (sum b m^{i2} j^{i3}) / (dM/dY)(m, j) for a weight-0 auxiliary.
template <typename T>
T evaluate_aux(const AuxRepresentation& rep, const ModularPolynomial& M, const T& j, const T& m,
               EvalHooks<T>& h) {
    T zero = h.from_rat(BigRat(0));
    T num = zero;
    // sparse double Horner (i2 outer)
    std::map<long, std::vector<std::pair<long, const Cyclotomic*>>> g;
    for (const auto& [key, c] : rep.b) g[key.first].emplace_back(key.second, &c);
    long deg = -1;
    for (auto it = g.rbegin(); it != g.rend(); ++it) {
        T inner = zero;
        long jd = -1;
        for (auto jt = it->second.rbegin(); jt != it->second.rend(); ++jt) {
            if (jd < 0) {
                inner = h.lift(*jt->second);
                jd = jt->first;
                continue;
            }
            while (jd > jt->first) {
                inner = h.mul(inner, j);
                ++h.mults;
                --jd;
            }
            inner = h.add(inner, h.lift(*jt->second));
        }
        while (jd > 0) {
            inner = h.mul(inner, j);
            ++h.mults;
            --jd;
        }
        if (deg < 0) {
            num = inner;
            deg = it->first;
            continue;
        }
        while (deg > it->first) {
            num = h.mul(num, m);
            ++h.mults;
            --deg;
        }
        num = h.add(num, inner);
    }
    while (deg > 0) {
        num = h.mul(num, m);
        ++h.mults;
        --deg;
    }
    T den = eval_poly(partial_y(M), m, j, h);
    if (h.is_zero(den)) fail(ErrorKind::degenerate_input, "evaluate_aux: zero denominator");
    T out = h.mul(num, h.inv(den));
    ++h.mults;
    return out;
}

// hooks for exact q-series arguments (used by the self-tests and verification)
EvalHooks<QSeries> series_hooks(long n, long d, long prec);

}  // namespace uegs

#endif
