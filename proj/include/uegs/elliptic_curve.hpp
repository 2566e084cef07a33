#ifndef UEGS_ELLIPTIC_CURVE_HPP
#define UEGS_ELLIPTIC_CURVE_HPP

#include <vector>

#include "uegs/finite_field.hpp"

namespace uegs {

// Y^2 = X^3 + a X + b over the given field
struct Curve {
    const FqField* F = nullptr;
    FqField::E a, b;

    Curve() = default;
    Curve(const FqField& field, FqField::E a_, FqField::E b_);
    FqField::E discriminant_16() const;  // -16 (4a^3 + 27b^2)
    FqField::E j_invariant() const;      // 6912 a^3 / (4a^3 + 27b^2)
    FqField::E rhs(const FqField::E& x) const;
};

struct Point {
    bool inf = true;
    FqField::E x, y;
    static Point infinity() { return Point{}; }
    static Point affine(FqField::E x, FqField::E y) { return Point{false, std::move(x), std::move(y)}; }
    bool operator==(const Point& o) const = default;
};

bool on_curve(const Curve& c, const Point& p);
Point neg(const Curve& c, const Point& p);
Point add(const Curve& c, const Point& p, const Point& q);
Point scalar_mul(const Curve& c, const BigInt& k, const Point& p);
Point frobenius_point(const Curve& c, const Point& p);  // (x^p, y^p)

// exact order of a point known to have order dividing ell^k for a prime ell
long order_in_ell_group(const Curve& c, const Point& p, long ell);

// #E(F_p) by enumeration; requires p < 10^6 prime, returns the point count.
// trace t = p + 1 - count, asserted to satisfy |t| <= 2 sqrt(p).
long brute_force_count(long p, long a, long b);
long brute_force_trace(long p, long a, long b);

// trace of Frobenius of the base-change to F_{p^m}: alpha^m + beta^m with
// alpha beta = p, alpha + beta = t (integer recurrence)
BigInt trace_power(long p, long t, unsigned m);

// odd ell >= 3: the univariate division polynomial psi_ell(x) whose roots are
// exactly the x-coordinates of the nonzero ell-torsion (y^2 replaced by rhs)
std::vector<FqField::E> division_polynomial(const Curve& c, long ell);

struct TorsionBasis {
    Point p1, p2;
};

// independent points of exact order ell over c's field (which must contain
// the full ell-torsion); t_base = trace over the base prime field
TorsionBasis torsion_basis(const Curve& c, long ell, long t_base, std::uint64_t seed);

// Weil pairing e_ell(P, Q) by Miller's algorithm; bilinear, alternating
FqField::E weil_pairing(const Curve& c, const Point& p, const Point& q, long ell,
                        std::uint64_t seed);

// generators of the ell+1 cyclic subgroups of E[ell]
std::vector<Point> kernel_subgroups(const Curve& c, long ell, const TorsionBasis& basis);

// order of the Frobenius action on E[ell]: smallest D with phi^D = id on
// E[ell], from the matrix [[0, -p], [1, t]] mod ell
long frobenius_order_on_torsion(long p, long t, long ell);

}  // namespace uegs

#endif
