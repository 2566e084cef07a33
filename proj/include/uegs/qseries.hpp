#ifndef UEGS_QSERIES_HPP
#define UEGS_QSERIES_HPP

#include <map>
#include <optional>
#include <string>

#include "uegs/cyclotomic.hpp"

namespace uegs {

// Truncated Puiseux/Laurent series in q^{1/d} over Q(zeta_m).
//
// Exponents are stored as integer numerators over the fixed denominator d;
// the series is exact for all exponents e/d < prec()/d and unknown beyond.
// Precision is tracked per value and propagated through every operation.
// Values are immutable once built (the mutating helpers are builder-side).
class QSeries {
public:
    QSeries() : d_(1), prec_(0) {}
    QSeries(long d, long prec_num) : d_(d), prec_(prec_num) {}

    static QSeries zero(long d, long prec_num) { return QSeries(d, prec_num); }
    static QSeries constant(const Cyclotomic& c, long prec_num) {
        QSeries s(1, prec_num);
        s.add_term(0, c);
        return s;
    }
    static QSeries monomial(const Cyclotomic& c, long e_num, long d, long prec_num) {
        QSeries s(d, prec_num);
        s.add_term(e_num, c);
        return s;
    }

    long denom() const { return d_; }
    long prec() const { return prec_; }  // numerator units: exact below prec()/denom()
    const std::map<long, Cyclotomic>& terms() const { return c_; }
    bool is_zero_to_prec() const { return c_.empty(); }

    // exponent numerator of the lowest term; nullopt when zero to precision
    std::optional<long> order_num() const;

    const Cyclotomic& coeff(long e_num) const;  // zero when absent

    void add_term(long e_num, const Cyclotomic& c);  // builder-side

    QSeries rescaled(long new_d) const;  // d_ | new_d
    QSeries truncated(long prec_num) const;
    QSeries shifted(long e_num_delta) const;  // multiply by q^{delta/d}

    friend QSeries operator+(const QSeries& a, const QSeries& b);
    friend QSeries operator-(const QSeries& a, const QSeries& b);
    friend QSeries operator*(const QSeries& a, const QSeries& b);
    QSeries operator-() const;

    QSeries scaled(const Cyclotomic& s) const;
    QSeries inverse() const;      // error on zero series
    QSeries pow(unsigned e) const;

    // q -> q^k (exponents times k) and q -> q^{1/k} (denominator times k)
    QSeries substitute_power(long k) const;
    QSeries substitute_root(long k) const;

    // coset action tau -> tau + k: coefficient at e/d times zeta_d^{ke}
    QSeries twist(long k) const;

    // terms with integer exponent, as a d = 1 series
    QSeries integer_slice() const;

    std::string dump() const;  // lines "e/d : cycrat" sorted by exponent

private:
    void normalize();

    long d_;
    long prec_;
    std::map<long, Cyclotomic> c_;
};

// Exponent numerator (over lcm of the denominators) of the first coefficient
// where a and b disagree below the joint precision; nullopt when they agree.
std::optional<long> first_difference(const QSeries& a, const QSeries& b);

// a == b for all exponents < cap_num/cap_den and within tracked precision
bool equal_to(const QSeries& a, const QSeries& b, long cap_num, long cap_den);

// integer_slice(a * b) without forming the fractional part of the product
QSeries slice_product(const QSeries& a, const QSeries& b);

}  // namespace uegs

#endif
