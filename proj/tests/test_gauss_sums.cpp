#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "uegs/error.hpp"
#include "uegs/gauss_sums.hpp"

using namespace uegs;

TEST_CASE("smallest primitive roots") {
    CHECK(smallest_primitive_root(5) == 2);
    CHECK(smallest_primitive_root(7) == 3);
    CHECK(smallest_primitive_root(13) == 2);
}

TEST_CASE("character laws") {
    Character chi = Character::make(13, 4);
    CHECK(chi.g == 2);
    // chi(g) = zeta_n
    CHECK(chi.chi(2) == Cyclotomic::zeta_power(4, 1));
    // multiplicativity over all pairs
    for (long a = 1; a < 13; ++a)
        for (long b = 1; b < 13; ++b) CHECK(chi.chi(a) * chi.chi(b) == chi.chi(a * b % 13));
    // exact order n: chi(g)^k != 1 for 0 < k < n
    for (long k = 1; k < 4; ++k) CHECK(!(chi.chi(2, k) == Cyclotomic::one()));
    CHECK(chi.chi(2, 4) == Cyclotomic::one());
    CHECK_THROWS_AS(Character::make(13, 5), Error);
}

TEST_CASE("cyclotomic Gauss sum: quadratic sum squares to ell") {
    // ell = 5, n = 2: sum of legendre(lambda|5) zeta_5^lambda; square = 5
    Character chi = Character::make(5, 2);
    Cyclotomic g = cyclotomic_gauss(chi, 1);
    // brute-force oracle: legendre symbols mod 5 are (1,-1,-1,1) for 1..4
    Cyclotomic oracle = Cyclotomic::zeta_power(5, 1) - Cyclotomic::zeta_power(5, 2) -
                        Cyclotomic::zeta_power(5, 3) + Cyclotomic::zeta_power(5, 4);
    CHECK(g == oracle);
    CHECK(g * g == Cyclotomic(BigRat(5)));
}

TEST_CASE("cyclotomic Gauss sum: scaling and modulus laws") {
    for (auto [ell, n] : std::vector<std::pair<long, long>>{{5, 4}, {7, 3}, {13, 4}, {13, 3}}) {
        Character chi = Character::make(ell, n);
        Cyclotomic g1 = cyclotomic_gauss(chi, 1);
        for (long c = 1; c < ell; ++c) {
            INFO("ell ", ell, " n ", n, " c ", c);
            CHECK(cyclotomic_gauss(chi, c) == chi.chi(c) * g1);
        }
        // |G|^2 = G * conj(G) = ell for a primitive character (conjugation is
        // the Galois action -1 on the full conductor)
        unsigned m = static_cast<unsigned>(ell * n);
        Cyclotomic norm = g1.embedded(m) * g1.embedded(m).galois(-1);
        CHECK(norm == Cyclotomic(BigRat(ell)));
    }
    CHECK_THROWS_AS(cyclotomic_gauss(Character::make(5, 4), 0), Error);
}

TEST_CASE("G and H series: structure and twist consistency") {
    SigmaSpec spec = SigmaSpec::make(5, 4);
    CHECK(!spec.v_is_x);  // n even -> V = y
    CHECK(spec.r == 3);

    long P = 8;
    QSeries g = G_series(spec, P);
    CHECK(g.denom() == 1);

    QSeries h0 = H_series(spec, 0, 5 * P);
    CHECK(h0.denom() == 5);
    // H(k) = twist(H(0), k) and equals its own direct construction
    for (long k = 1; k < 5; ++k) {
        QSeries hk = H_series(spec, k, 5 * P);
        CHECK(first_difference(hk, h0.twist(k)) == std::nullopt);
    }
    // ord(H(0)) >= 1/ell for n even
    REQUIRE(h0.order_num().has_value());
    CHECK(h0.order_num().value() >= 1);
}

TEST_CASE("coefficient Galois action on G gives chi^{-1}") {
    // zeta_ell -> zeta_ell^c with zeta_n fixed: exponent u = c mod ell, 1 mod n
    SigmaSpec spec = SigmaSpec::make(5, 4);
    long P = 6;
    QSeries g = G_series(spec, P);
    long ell = 5, n = 4, m = ell * n;
    for (long c = 2; c < ell; ++c) {
        long u = 0;
        for (long t = 0; t < m; ++t)
            if (t % ell == c && t % n == 1) u = t;
        QSeries lhs(1, P), rhs = g.scaled(spec.chi.chi(c, -1));
        for (const auto& [e, co] : g.terms())
            lhs.add_term(e, co.embedded(static_cast<unsigned>(m)).galois(u));
        INFO("c = ", c);
        CHECK(first_difference(lhs, rhs) == std::nullopt);
    }
}

TEST_CASE("sigma: descent to Q(zeta_n), order bound, twist conjugates") {
    for (auto [ell, n] : std::vector<std::pair<long, long>>{{5, 2}, {5, 4}, {7, 3}}) {
        SigmaSpec spec = SigmaSpec::make(ell, n);
        long P = 3 * ell;  // numerator precision over d = ell
        QSeries s0 = sigma_series(spec, 0, P);
        INFO("ell ", ell, " n ", n);
        // descent enforced inside sigma_series; check conductors directly
        for (const auto& [e, c] : s0.terms()) CHECK(n % c.conductor() == 0);
        if (ell == 5 && n == 2) {
            // degenerate: chi(-1) = +1 while y is odd under point negation, so
            // both G and H vanish identically and sigma = 0; the order bound
            // holds vacuously
            CHECK(!s0.order_num().has_value());
        } else {
            REQUIRE(s0.order_num().has_value());
            CHECK(s0.order_num().value() >= -ell + 1);
        }
        // conjugates are twists of sigma(0)
        for (long k : {1L, 2L}) {
            QSeries sk = sigma_series(spec, k, P);
            CHECK(first_difference(sk, s0.twist(k)) == std::nullopt);
        }
        // trace sanity: sum over all conjugates has integer exponents
        QSeries acc = s0;
        for (long k = 1; k < ell; ++k) acc = acc + s0.twist(k);
        for (const auto& [e, c] : acc.terms()) CHECK(e % ell == 0);
    }
}

TEST_CASE("sigma: invariance under (P, Q0) -> (2P, 3Q0)") {
    SigmaSpec spec = SigmaSpec::make(5, 4);
    long a = 2, b = 3, ell = 5;
    long P = 2 * ell;
    QSeries s = sigma_series(spec, 0, P);

    // rebuild every component from scratch with the transformed points
    long qprec = (P + ell - 1) / ell + 3;
    QSeries g2(1, qprec);
    for (long lam = 1; lam < ell; ++lam)
        g2 = g2 + tate_y(TorsionLabel{a * lam % ell, 0}, ell, qprec).scaled(spec.chi.chi(lam));
    QSeries h3(ell, qprec * ell);
    for (long lam = 1; lam < ell; ++lam)
        h3 = h3 + tate_y(TorsionLabel{0, b * lam % ell}, ell, qprec).scaled(spec.chi.chi(lam));
    QSeries p1 = p1_series(ell, qprec);
    QSeries dinv = standard_series(StandardSeries::Delta, qprec + 2).inverse();
    Cyclotomic gx = cyclotomic_gauss(spec.chi, a * b);  // xi -> xi^{ab}
    QSeries s2 = (g2 * h3 * p1.pow(3) * dinv).scaled(gx).truncated(P);

    long cap = std::min(s.prec(), s2.prec());
    CHECK(equal_to(s, s2, cap, ell));
}
