#ifndef UEGS_FINITE_FIELD_HPP
#define UEGS_FINITE_FIELD_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "uegs/rational.hpp"

namespace uegs {

// F_{p^m} as F_p[x] modulo the lexicographically first monic irreducible of
// degree m. Elements are coefficient vectors of length m (low to high).
// Desk scale: p < 2^20, m <= ~40.
class FqField {
public:
    using E = std::vector<std::uint64_t>;

    FqField(std::uint64_t p, unsigned m);

    std::uint64_t p() const { return p_; }
    unsigned deg() const { return m_; }
    const std::vector<std::uint64_t>& modulus() const { return mod_; }
    BigInt order() const;  // p^m

    E zero() const { return E(m_, 0); }
    E one() const;
    E from_int(long v) const;      // image of an integer
    E from_rat(const BigRat& r) const;

    bool is_zero(const E& a) const;
    bool eq(const E& a, const E& b) const { return a == b; }

    E add(const E& a, const E& b) const;
    E sub(const E& a, const E& b) const;
    E neg(const E& a) const;
    E mul(const E& a, const E& b) const;
    E inv(const E& a) const;  // error on zero
    E pow(const E& a, const BigInt& e) const;
    E frobenius(const E& a) const { return pow(a, BigInt(static_cast<long>(p_))); }

    // square root in the field, if one exists (generic, works for any odd q)
    std::optional<E> sqrt(const E& a, std::uint64_t seed) const;

    // all roots in this field of a monic polynomial with coefficients here
    // (seeded Cantor-Zassenhaus equal-degree splitting)
    std::vector<E> roots_of(const std::vector<E>& poly, std::uint64_t seed) const;

    // element of exact multiplicative order n (error when n does not divide
    // p^m - 1); deterministic given the seed
    E nth_root_of_unity(long n, std::uint64_t seed) const;

    // e with val = zeta^e, 0 <= e < n, by linear scan; error if val is not in
    // the group generated by zeta
    long discrete_log_in_mu_n(const E& val, const E& zeta, long n) const;

private:
    std::uint64_t p_;
    unsigned m_;
    std::vector<std::uint64_t> mod_;  // monic, length m_+1
};

// dense polynomials over F_p (coefficients low to high, no trailing zeros)
namespace fp_poly {
using Poly = std::vector<std::uint64_t>;
Poly trim(Poly a);
Poly mulmod(const Poly& a, const Poly& b, const Poly& f, std::uint64_t p);
Poly powmod(const Poly& b, const BigInt& e, const Poly& f, std::uint64_t p);
Poly powmod_xq(const Poly& f, const BigInt& q, std::uint64_t p);  // x^q mod f
Poly gcd(Poly a, Poly b, std::uint64_t p);
bool is_irreducible(const Poly& f, std::uint64_t p);
}  // namespace fp_poly

// smallest d >= 1 such that f (monic, over F_p) has an irreducible factor of
// degree d; also reports whether f has a root in F_p (d == 1)
long smallest_factor_degree(const fp_poly::Poly& f, std::uint64_t p);

long ord_mod(long a, long n);  // multiplicative order of a modulo n

}  // namespace uegs

#endif
