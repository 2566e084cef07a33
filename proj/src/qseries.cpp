#include "uegs/qseries.hpp"

#include <numeric>
#include <sstream>
#include <vector>

#include "uegs/error.hpp"

namespace uegs {

namespace {

long floor_div(long a, long b) {
    long q = a / b, r = a % b;
    return (r != 0 && ((r < 0) != (b < 0))) ? q - 1 : q;
}

long ceil_div(long a, long b) { return -floor_div(-a, b); }

}  // namespace

void QSeries::normalize() {
    for (auto it = c_.begin(); it != c_.end();) {
        if (it->first >= prec_ || it->second.is_zero())
            it = c_.erase(it);
        else
            ++it;
    }
}

std::optional<long> QSeries::order_num() const {
    if (c_.empty()) return std::nullopt;
    return c_.begin()->first;
}

const Cyclotomic& QSeries::coeff(long e_num) const {
    static const Cyclotomic zero;
    auto it = c_.find(e_num);
    return it == c_.end() ? zero : it->second;
}

void QSeries::add_term(long e_num, const Cyclotomic& c) {
    if (e_num >= prec_ || c.is_zero()) return;
    auto [it, inserted] = c_.emplace(e_num, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) c_.erase(it);
    }
}

QSeries QSeries::rescaled(long new_d) const {
    if (new_d == d_) return *this;
    if (new_d % d_ != 0) fail(ErrorKind::internal, "QSeries: rescale target not a multiple");
    long f = new_d / d_;
    QSeries out(new_d, prec_ * f);
    for (const auto& [e, c] : c_) out.c_.emplace(e * f, c);
    return out;
}

QSeries QSeries::truncated(long prec_num) const {
    QSeries out = *this;
    out.prec_ = std::min(out.prec_, prec_num);
    out.normalize();
    return out;
}

QSeries QSeries::shifted(long delta) const {
    QSeries out(d_, prec_ + delta);
    for (const auto& [e, c] : c_) out.c_.emplace(e + delta, c);
    return out;
}

QSeries operator+(const QSeries& a, const QSeries& b) {
    long d = std::lcm(a.d_, b.d_);
    QSeries x = a.rescaled(d), y = b.rescaled(d);
    QSeries out(d, std::min(x.prec_, y.prec_));
    out.c_ = std::move(x.c_);
    for (auto& [e, c] : y.c_) {
        auto [it, inserted] = out.c_.try_emplace(e, std::move(c));
        if (!inserted) it->second += c;
    }
    out.normalize();
    return out;
}

QSeries QSeries::operator-() const {
    QSeries out(d_, prec_);
    for (const auto& [e, c] : c_) out.c_.emplace(e, -c);
    return out;
}

QSeries operator-(const QSeries& a, const QSeries& b) { return a + (-b); }

QSeries operator*(const QSeries& a, const QSeries& b) {
    long d = std::lcm(a.d_, b.d_);
    QSeries x = a.rescaled(d), y = b.rescaled(d);
    long ox = x.order_num().value_or(x.prec_);
    long oy = y.order_num().value_or(y.prec_);
    QSeries out(d, std::min(x.prec_ + oy, y.prec_ + ox));
    for (const auto& [e1, c1] : x.c_) {
        for (const auto& [e2, c2] : y.c_) {
            if (e1 + e2 >= out.prec_) break;
            out.add_term(e1 + e2, c1 * c2);
        }
    }
    return out;
}

QSeries QSeries::scaled(const Cyclotomic& s) const {
    if (s.is_zero()) return QSeries::zero(d_, prec_);
    QSeries out(d_, prec_);
    for (const auto& [e, c] : c_) out.c_.emplace(e, c * s);
    out.normalize();
    return out;
}

QSeries QSeries::inverse() const {
    auto o = order_num();
    if (!o) fail(ErrorKind::precision, "QSeries: inverting a series that is zero to precision");
    long e0 = *o;
    long n = prec_ - e0;  // relative precision (number of known numerator steps)
    const Cyclotomic lead = c_.begin()->second;
    Cyclotomic lead_inv = lead.inverse();
    // dense relative coefficients u[k] = coeff(e0+k)/lead
    std::vector<Cyclotomic> u(n), g(n);
    for (const auto& [e, c] : c_) u[e - e0] = c * lead_inv;
    g[0] = Cyclotomic::one();
    for (long k = 1; k < n; ++k) {
        Cyclotomic acc = Cyclotomic::zero();
        for (long j = 1; j <= k; ++j)
            if (!u[j].is_zero() && !g[k - j].is_zero()) acc += u[j] * g[k - j];
        g[k] = -acc;
    }
    QSeries out(d_, prec_ - 2 * e0);
    for (long k = 0; k < n; ++k)
        if (!g[k].is_zero()) out.add_term(-e0 + k, g[k] * lead_inv);
    return out;
}

QSeries QSeries::pow(unsigned e) const {
    if (e == 0) return QSeries::constant(Cyclotomic::one(), prec_).rescaled(d_);
    QSeries acc = *this;
    // left-to-right binary powering
    int top = 31;
    while (top > 0 && !((e >> top) & 1u)) --top;
    for (int i = top - 1; i >= 0; --i) {
        acc = acc * acc;
        if ((e >> i) & 1u) acc = acc * *this;
    }
    return acc;
}

QSeries QSeries::substitute_power(long k) const {
    if (k < 1) fail(ErrorKind::internal, "QSeries: substitute_power needs k >= 1");
    QSeries out(d_, prec_ * k);
    for (const auto& [e, c] : c_) out.c_.emplace(e * k, c);
    return out;
}

QSeries QSeries::substitute_root(long k) const {
    if (k < 1) fail(ErrorKind::internal, "QSeries: substitute_root needs k >= 1");
    QSeries out(d_ * k, prec_);
    out.c_ = c_;
    return out;
}

QSeries QSeries::twist(long k) const {
    if (d_ == 1) return *this;
    QSeries out(d_, prec_);
    for (const auto& [e, c] : c_) {
        long r = ((k * e) % d_ + d_) % d_;
        if (r == 0)
            out.c_.emplace(e, c);
        else
            out.c_.emplace(e, c * Cyclotomic::zeta_power(static_cast<unsigned>(d_), r));
    }
    out.normalize();
    return out;
}

QSeries QSeries::integer_slice() const {
    QSeries out(1, ceil_div(prec_, d_));
    for (const auto& [e, c] : c_)
        if (e % d_ == 0) out.c_.emplace(e / d_, c);
    out.normalize();
    return out;
}

std::string QSeries::dump() const {
    std::ostringstream os;
    for (const auto& [e, c] : c_) os << e << "/" << d_ << " : " << c.str() << "\n";
    return os.str();
}

std::optional<long> first_difference(const QSeries& a, const QSeries& b) {
    long d = std::lcm(a.denom(), b.denom());
    QSeries x = a.rescaled(d), y = b.rescaled(d);
    long cap = std::min(x.prec(), y.prec());
    auto ix = x.terms().begin(), iy = y.terms().begin();
    while (true) {
        long ex = ix == x.terms().end() ? cap : std::min(ix->first, cap);
        long ey = iy == y.terms().end() ? cap : std::min(iy->first, cap);
        if (ex >= cap && ey >= cap) return std::nullopt;
        if (ex < ey) return ex;
        if (ey < ex) return ey;
        if (!(ix->second == iy->second)) return ex;
        ++ix;
        ++iy;
    }
}

QSeries slice_product(const QSeries& a, const QSeries& b) {
    long d = std::lcm(a.denom(), b.denom());
    QSeries x = a.rescaled(d), y = b.rescaled(d);
    long ox = x.order_num().value_or(x.prec());
    long oy = y.order_num().value_or(y.prec());
    long prec_num = std::min(x.prec() + oy, y.prec() + ox);
    QSeries out(1, ceil_div(prec_num, d));
    for (const auto& [e1, c1] : x.terms()) {
        for (const auto& [e2, c2] : y.terms()) {
            long e = e1 + e2;
            if (e >= prec_num) break;
            if (e % d == 0) out.add_term(e / d, c1 * c2);
        }
    }
    return out;
}

bool equal_to(const QSeries& a, const QSeries& b, long cap_num, long cap_den) {
    auto diff = first_difference(a, b);
    if (!diff) return true;
    long d = std::lcm(a.denom(), b.denom());
    // differ at *diff/d; acceptable only if at or beyond the cap
    return *diff * cap_den >= cap_num * d;
}

}  // namespace uegs
