#ifndef SIEGEL_HECKE_HPP
#define SIEGEL_HECKE_HPP

#include <optional>

#include "siegel/fourier.hpp"

namespace siegel {

enum class HeckeOp { Tp, T1Tilde, T1, T2Level };

const char* hecke_op_name(HeckeOp op);

// Result of one coefficient-level operator application. The window narrows:
// floor(B/p) for T(p), floor(B/p^2) for the p^2 operators.
struct HeckeOutcome {
  FourierExpansion out;
  HeckeOp op;
  Int p = 0;
};

// Coefficient action of T(p): the class-(Lambda) output coefficient is
//   chi(p^2) p^(2k-3) c(Lambda^(1/p))
// + chi(p)   p^(k-2)  sum over index-p sublattices of c(Omega^(1/p))
// + c(Lambda^p).
HeckeOutcome apply_T_p(const FourierExpansion& f, Int p);

// Coefficient action of the shifted operator at p^2:
//   chi(p^2) p^(2k-3) sum over index-p even superlattices of c(Omega)
// + chi(p)   p^(k-2)  alpha(Lambda; p) c(Lambda)
// + sum over index-p sublattices of c(Omega).
HeckeOutcome apply_T1tilde_p2(const FourierExpansion& f, Int p);

// T1(p^2) = T1~(p^2) - chi(p) p^(k-3) (p+1); needs k >= 3 for integrality.
HeckeOutcome apply_T1_p2(const FourierExpansion& f, Int p);

// For p dividing the level, the p^2 operator of the second kind is T(p)
// applied twice.
HeckeOutcome apply_T2_p2_level(const FourierExpansion& f, Int p);

// The single rational rho with outcome = rho * F on every class of the
// narrowed window, or nullopt if no such rho exists. The pivot is the first
// class (in (c,a,b) order) where F does not vanish.
std::optional<BigRat> extract_eigenvalue(const FourierExpansion& f, const HeckeOutcome& outcome);

}  // namespace siegel

#endif
