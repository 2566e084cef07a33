#ifndef UEGS_MODULAR_FUNCTIONS_HPP
#define UEGS_MODULAR_FUNCTIONS_HPP

#include "uegs/qseries.hpp"

namespace uegs {

// s = 12/gcd(12, ell-1), v = (ell-1)/gcd(ell-1, 12) = ord(m_ell)
struct EtaQuotientSpec {
    long ell;
    long s;
    long v;
    static EtaQuotientSpec for_prime(long ell);
};

// the torsion point w = zeta_ell^a q^{b/ell}; (a, b) != (0, 0)
struct TorsionLabel {
    long a;
    long b;
};

// eta(q)/q^{1/24}: the pentagonal-number series, exact below `prec`.
QSeries eta_tilde(long prec);

enum class StandardSeries { Delta, E4, E6, J };
QSeries standard_series(StandardSeries which, long prec);

// m_ell = ell^s q^v (eta~(q^ell)/eta~(q))^{2s}, d = 1
QSeries m_ell(long ell, long prec);

// m_ell(S_k tau) = twist(ell^s m_ell(q^{1/ell})^{-1}, k), d = ell
QSeries m_ell2_conjugate(long ell, long k, long prec);

// Tate parameterization x(w, q), y(w, q) at w = zeta_ell^a q^{b/ell}
QSeries tate_x(TorsionLabel label, long ell, long prec);
QSeries tate_y(TorsionLabel label, long ell, long prec);

// p1 = sum over nontrivial ell-th roots of unity of x(zeta, q); coefficients
// descend to Q, enforced.
QSeries p1_series(long ell, long prec);

struct FrickeImages {
    QSeries m_star;   // ell^s / m_ell
    QSeries m2_star;  // m_ell(q^ell)
    QSeries j_star;   // j(q^ell)
};
FrickeImages fricke_images(long ell, long prec);

}  // namespace uegs

#endif
