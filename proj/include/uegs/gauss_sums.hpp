#ifndef UEGS_GAUSS_SUMS_HPP
#define UEGS_GAUSS_SUMS_HPP

#include <vector>

#include "uegs/modular_functions.hpp"
#include "uegs/qseries.hpp"

namespace uegs {

// Character chi: F_ell* -> mu_n of exact order n, fixed by chi(g) = zeta_n for
// the smallest primitive root g of ell.
struct Character {
    long ell = 0;
    long n = 0;
    long g = 0;
    std::vector<long> ind;  // ind[a] = e with g^e = a (mod ell), for 1 <= a < ell

    static Character make(long ell, long n);

    // exponent of chi^c at a: c * ind[a] mod n
    long chi_exponent(long a, long c = 1) const;
    // chi^c(a) as an element of Q(zeta_n)
    Cyclotomic chi(long a, long c = 1) const;
};

long smallest_primitive_root(long ell);

// Parameters of the universal elliptic Gauss sum sigma_{ell,n,chi}.
struct SigmaSpec {
    long ell = 0;
    long n = 0;
    Character chi;
    bool v_is_x = true;  // V = x for n odd, V = y for n even
    long r = 4;          // 4 for n odd, 3 for n even
    long e = 2;          // weight: 2 for n odd, 3 for n even
    int xi_eps = +1;     // xi = zeta_ell^eps

    static SigmaSpec make(long ell, long n, int xi_eps = +1);
};

// G_{chi^{-1}}(xi^c) = sum_{lambda} chi^{-1}(lambda) zeta_ell^{eps lambda c},
// an element of Q(zeta_{ell n}).
Cyclotomic cyclotomic_gauss(const Character& chi, long c, int eps = +1);

// G_{ell,n,chi}(q) = sum_lambda chi(lambda) V(zeta_ell^lambda, q); d = 1.
QSeries G_series(const SigmaSpec& spec, long prec);

// H-conjugate k: sum_lambda chi(lambda) V(zeta_ell^{k lambda} q^{lambda/ell}, q);
// d = ell; prec is the numerator precision over d = ell.
QSeries H_series(const SigmaSpec& spec, long k, long prec);

// sigma(k) = G * H(k) * p1^r * G_{chi^{-1}}(xi) / Delta; d = ell; prec is the
// numerator precision over d = ell. For k = 0 the coefficients are descended
// to Q(zeta_n) (enforced; failure is an error).
QSeries sigma_series(const SigmaSpec& spec, long k, long prec);

}  // namespace uegs

#endif
