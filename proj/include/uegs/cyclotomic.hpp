#ifndef UEGS_CYCLOTOMIC_HPP
#define UEGS_CYCLOTOMIC_HPP

#include <optional>
#include <string>
#include <vector>

#include "uegs/rational.hpp"

namespace uegs {

// Phi_m(X), monic of degree phi(m), coefficients low-to-high.
std::vector<BigInt> cyclotomic_polynomial(unsigned m);

unsigned euler_phi(unsigned m);

// An exact element of Q(zeta_m), stored in the power basis
// {zeta_m^i, 0 <= i < phi(m)} modulo Phi_m. Elements of different
// conductors are combined by embedding into the lcm conductor.
// Immutable value semantics; all operations are exact.
class Cyclotomic {
public:
    Cyclotomic() : m_(1), c_(1) {}  // zero at conductor 1
    explicit Cyclotomic(const BigRat& r) : m_(1), c_{r} {}
    Cyclotomic(unsigned m, std::vector<BigRat> coeffs);

    static Cyclotomic zero(unsigned m = 1);
    static Cyclotomic one() { return Cyclotomic(BigRat(1)); }
    // zeta_m^k
    static Cyclotomic zeta_power(unsigned m, long k);

    unsigned conductor() const { return m_; }
    const std::vector<BigRat>& coeffs() const { return c_; }

    bool is_zero() const;
    bool is_rational() const;
    // Valid only when is_rational(); the value as an element of Q.
    BigRat rational_value() const;

    Cyclotomic embedded(unsigned m) const;  // m_ | m required

    friend Cyclotomic operator+(const Cyclotomic& a, const Cyclotomic& b);
    friend Cyclotomic operator-(const Cyclotomic& a, const Cyclotomic& b);
    friend Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b);
    friend Cyclotomic operator/(const Cyclotomic& a, const Cyclotomic& b);
    Cyclotomic operator-() const;
    Cyclotomic& operator+=(const Cyclotomic& b) { return *this = *this + b; }
    Cyclotomic& operator-=(const Cyclotomic& b) { return *this = *this - b; }
    Cyclotomic& operator*=(const Cyclotomic& b) { return *this = *this * b; }

    Cyclotomic inverse() const;  // error on zero

    friend bool operator==(const Cyclotomic& a, const Cyclotomic& b);

    // Image under zeta_m -> zeta_m^c; requires gcd(c, m) = 1.
    Cyclotomic galois(long c) const;

    // Descend to conductor d (d | m). On failure returns nullopt and, if
    // given, reports the first automorphism c with galois(c) != *this.
    std::optional<Cyclotomic> to_subfield(unsigned d, long* violating = nullptr) const;

    std::string str() const;  // debug form, e.g. "1 + 2*z5^3"

private:
    unsigned m_;
    std::vector<BigRat> c_;  // size phi(m_)
};

inline Cyclotomic operator*(const BigRat& s, const Cyclotomic& a) {
    return Cyclotomic(s) * a;
}

}  // namespace uegs

#endif
