#ifndef SIEGEL_RELATIONS_HPP
#define SIEGEL_RELATIONS_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "siegel/fourier.hpp"
#include "siegel/hecke.hpp"
#include "siegel/report.hpp"

namespace siegel {

enum class EtaBase { TwoI, DiagOneP0 };

// The recursively defined scalars eta(p^r), kappa(p^r) attached to a
// simultaneous eigenform: eta(1)=0, kappa(1)=1,
//   kappa(p)   = lambda(p) - chi(p) p^(k-2) eta(p),
//   eta(p^r)   = lt1 kappa(p^(r-2)) - chi(p^2) p^(2k-3) eta(p^(r-2))
//                - chi(p) p^(k-2) alpha(Delta^(p^(r-2)); p) kappa(p^(r-2)),
//   kappa(p^r) = lambda(p) kappa(p^(r-1)) - chi(p^2) p^(2k-3) kappa(p^(r-2))
//                - chi(p) p^(k-2) eta(p^r),
// with Delta = (1,0,1) for the 2I base and (1,0,p0) for the diag base.
struct EtaKappaTable {
  Int p = 0;
  int weight = 0;
  RealCharacter chi = RealCharacter::trivial(1);
  EtaBase base = EtaBase::TwoI;
  Int p0 = 0;
  BigRat lambda_p, lambda1_tilde;
  std::vector<BigRat> eta, kappa;  // indexed by r
};

// The base value eta(p): for the 2I base, 1+chi(-1)(-1)^k / 0 / 1 according
// to p = 1 mod 4, 3 mod 4, or 2. For the diag(1,p0) base with p odd:
// chi(-1)(-1)^k when p = p0, and 0 when (-p0|p) = -1; anything else is
// unsupported.
BigRat eta_of_p(Int p, int weight, const RealCharacter& chi, EtaBase base, Int p0);

EtaKappaTable build_eta_kappa(Int p, int up_to_r, int weight, const RealCharacter& chi,
                              const BigRat& lambda_p, const BigRat& lambda1_tilde, EtaBase base, Int p0);

// An expansion together with lazily extracted eigenvalues and an optional
// raw evaluator answering coefficient queries beyond the stored bound.
class EigenformContext {
 public:
  explicit EigenformContext(const FourierExpansion& f, RawEval fallback = nullptr)
      : f_(&f), fallback_(std::move(fallback)) {}

  const FourierExpansion& form() const { return *f_; }
  CoeffView view() const { return CoeffView(*f_, fallback_); }

  // lambda(p) and the shifted p^2 eigenvalue; raises NotEigenform when the
  // operators are not proportional to the input on the narrowed windows.
  BigRat lambda(Int p);
  BigRat lambda1_tilde(Int p);

  EtaKappaTable eta_kappa(Int p, int up_to_r, EtaBase base, Int p0 = 0);

 private:
  const FourierExpansion* f_;
  RawEval fallback_;
  std::map<Int, BigRat> lambda_, lambda1_;
};

// Sublattice/superlattice scaling duality for an arbitrary class: the sum of
// coefficients of the two scaling routes agrees term by term. Holds for any
// expansion, eigenform or not.
RelationReport verify_duality(const FourierExpansion& f, RawEval fallback, const BinQF& cls, Int p, Int m);

// Coefficient recursions of an eigenform against the eta/kappa table, for
// r = 0..up_to_r: the sublattice sum equals eta(p^r) c(Delta^m), and
// c(Delta^(p^r m)) = kappa(p^r) c(Delta^m).
RelationReport verify_prop32(EigenformContext& ctx, Int p, Int m, int up_to_r);

// Eigenvalue/coefficient identities at mI:
//   lambda(p) a(mI) = chi(p) p^(k-2) eta(p) a(mI) + a(pmI)
//   chi(p) p^(k-2) lt1 a(mI) = chi(p^2) p^(2k-4) (alpha(I;p)-p) a(mI)
//                              + lambda(p) a(pmI) - a(p^2 mI)
RelationReport verify_thm11a(EigenformContext& ctx, Int p, Int m);

// The four-term product identity expressing a(mI) a(p^(r+1) I).
RelationReport verify_thm11b(EigenformContext& ctx, Int p, Int r, Int m);

// eta(p) a(p^r m I) - eta(p^(r+1)) a(mI) = -eps (diagonal + u-sum terms).
RelationReport verify_prop33(EigenformContext& ctx, Int p, Int r, Int m);

// Multiplicativity across coprime scalings: a(I) a(mnI) = a(mI) a(nI), zero
// propagation, and the kappa-product route.
RelationReport verify_thm11c(EigenformContext& ctx, Int m, Int n);

// The diag(1,p0) variant over the prime set S.
RelationReport verify_thm12(EigenformContext& ctx, Int p0, Int m, Int n);

std::string report_to_json(const RelationReport& report);

// Trial-division factorization, smallest prime first.
std::vector<std::pair<Int, int>> factorize(Int n);

}  // namespace siegel

#endif
