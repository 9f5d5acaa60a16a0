#ifndef SIEGEL_LATTICE_OPS_HPP
#define SIEGEL_LATTICE_OPS_HPP

#include <optional>
#include <vector>

#include "siegel/binform.hpp"

namespace siegel {

// One index-p sublattice of the lattice with form T: basis matrix H with
// det H = p, child form tH*T*H, tag u in {0..p-1} or p+1 standing for the
// line at infinity.
struct SublatticeStep {
  BinQF parent;
  Mat2 basis;
  BinQF child;
  Int tag;  // 0..p-1, or kInfinityTag
  static constexpr Int kInfinityTag = -1;
};

// The p+1 sublattices of index p: bases [[1,0],[u,p]] for 0 <= u < p and
// [[p,0],[0,1]].
std::vector<SublatticeStep> sublattices_1_p(const BinQF& t, Int p);

// All index-p superlattices that are even integral, as forms: the integral
// members of {child/p^2}.
std::vector<BinQF> superlattices_1overp_1(const BinQF& t, Int p);

// (num/den) * T when all three scaled entries are integers, else nullopt
// (a non-even-integral scaling carries coefficient 0).
std::optional<BinQF> scale(const BinQF& t, Int num, Int den);

// Number of isotropic lines of the form a*x^2 + b*xy + c*y^2 on the p+1
// lines of F_p^2.
Int alpha(const BinQF& t, Int p);

void require_prime(Int p);

}  // namespace siegel

#endif
