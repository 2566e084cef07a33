#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "uegs/qseries.hpp"

using namespace uegs;

namespace {

QSeries from_ints(std::initializer_list<std::pair<long, long>> terms, long d, long prec) {
    QSeries s(d, prec);
    for (auto& [e, v] : terms) s.add_term(e, Cyclotomic(BigRat(v)));
    return s;
}

QSeries random_series(std::mt19937_64& rng, long d, long prec) {
    std::uniform_int_distribution<long> coef(-4, 4);
    std::uniform_int_distribution<long> lo(-3, 2);
    QSeries s(d, prec);
    for (long e = lo(rng); e < prec; ++e) s.add_term(e, Cyclotomic(BigRat(coef(rng))));
    return s;
}

}  // namespace

TEST_CASE("series arithmetic basics") {
    auto one_plus_q = from_ints({{0, 1}, {1, 1}}, 1, 10);
    auto one_minus_q = from_ints({{0, 1}, {1, -1}}, 1, 10);
    auto prod = one_plus_q * one_minus_q;
    CHECK(prod.coeff(0).rational_value() == 1);
    CHECK(prod.coeff(1).is_zero());
    CHECK(prod.coeff(2).rational_value() == -1);

    auto f = from_ints({{-1, 1}, {0, 1}}, 1, 10);
    auto g = from_ints({{-1, -1}}, 1, 10);
    auto sum = f + g;
    CHECK(sum.order_num().value() == 0);
    CHECK(sum.coeff(0).rational_value() == 1);

    auto a = QSeries::monomial(Cyclotomic::one(), 1, 5, 50);
    auto b = QSeries::monomial(Cyclotomic::one(), 2, 5, 50);
    CHECK((a * b).coeff(3).rational_value() == 1);
    CHECK((a * b).denom() == 5);
}

TEST_CASE("inverse: geometric series and monomial") {
    auto f = from_ints({{0, 1}, {1, -1}}, 1, 8);  // 1 - q
    auto g = f.inverse();
    for (long k = 0; k < 8; ++k) CHECK(g.coeff(k).rational_value() == 1);
    auto check = f * g;
    CHECK(check.coeff(0).rational_value() == 1);
    CHECK(first_difference(check, QSeries::constant(Cyclotomic::one(), check.prec())) ==
          std::nullopt);

    auto q = from_ints({{1, 1}}, 1, 8);
    CHECK(q.inverse().order_num().value() == -1);
}

TEST_CASE("substitute power and root") {
    auto f = from_ints({{0, 1}, {1, -1}}, 1, 10);
    auto f5 = f.substitute_power(5);
    CHECK(f5.coeff(5).rational_value() == -1);
    CHECK(f5.prec() == 50);

    auto q = from_ints({{1, 1}}, 1, 10);
    auto r = q.substitute_root(5);
    CHECK(r.denom() == 5);
    CHECK(r.coeff(1).rational_value() == 1);  // q^{1/5} numerator 1 over d=5
}

TEST_CASE("twist") {
    auto f = QSeries::monomial(Cyclotomic::one(), 2, 5, 50);  // q^{2/5}
    auto t = f.twist(1);
    CHECK(t.coeff(2) == Cyclotomic::zeta_power(5, 2));

    auto q = from_ints({{1, 1}}, 1, 10);
    CHECK(first_difference(q.twist(3), q) == std::nullopt);

    std::mt19937_64 rng(5);
    auto g = random_series(rng, 5, 30);
    CHECK(first_difference(g.twist(1).twist(4), g) == std::nullopt);  // order-5 action
}

TEST_CASE("twist is multiplicative") {
    std::mt19937_64 rng(17);
    for (int it = 0; it < 5; ++it) {
        auto f = random_series(rng, 5, 25), g = random_series(rng, 5, 25);
        CHECK(first_difference((f * g).twist(2), f.twist(2) * g.twist(2)) == std::nullopt);
    }
}

TEST_CASE("trace over twists kills fractional exponents") {
    std::mt19937_64 rng(23);
    auto f = random_series(rng, 5, 30);
    QSeries acc(5, f.prec());
    for (long k = 0; k < 5; ++k) acc = acc + f.twist(k);
    for (const auto& [e, c] : acc.terms()) CHECK(e % 5 == 0);
    // equals 5 * integer slice
    auto slice5 = f.integer_slice().scaled(Cyclotomic(BigRat(5)));
    CHECK(first_difference(acc, slice5.rescaled(5).truncated(acc.prec())) == std::nullopt);
}

TEST_CASE("truncation soundness") {
    std::mt19937_64 rng(31);
    for (int it = 0; it < 5; ++it) {
        auto f = random_series(rng, 1, 40), g = random_series(rng, 1, 40);
        auto full = (f * g).truncated(12);
        auto trunc = f.truncated(12) * g.truncated(12);
        long cap = std::min(full.prec(), trunc.prec());
        CHECK(equal_to(full, trunc, cap, 1));
    }
}

TEST_CASE("precision propagation in multiplication") {
    auto f = from_ints({{-2, 1}}, 1, 10);  // q^{-2}, exact below 10
    auto g = from_ints({{3, 1}}, 1, 10);   // q^3
    auto h = f * g;
    CHECK(h.prec() == 8);  // min(10+3, 10-2)
    CHECK(h.coeff(1).rational_value() == 1);
}
