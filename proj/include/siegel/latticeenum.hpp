#ifndef SIEGEL_LATTICEENUM_HPP
#define SIEGEL_LATTICEENUM_HPP

#include <functional>
#include <map>
#include <vector>

#include "siegel/arith.hpp"

namespace siegel {

// Dense small matrices over Z, row major.
using MatZ = std::vector<std::vector<BigInt>>;
using VecZ = std::vector<BigInt>;

MatZ identity_matrix(int n);
MatZ mat_mul(const MatZ& a, const MatZ& b);
MatZ mat_transpose(const MatZ& a);
VecZ mat_vec(const MatZ& a, const VecZ& v);
// tU * G * U for symmetric G.
MatZ congruence(const MatZ& g, const MatZ& u);
BigInt dot(const VecZ& a, const VecZ& b);

// Exact determinant (fraction-free not needed at this scale).
BigInt det_exact(const MatZ& a);

// Inverse of a nonsingular rational matrix, via Gaussian elimination.
std::vector<std::vector<BigRat>> invert_exact(const MatZ& a);

// Solve G x = rhs exactly; G nonsingular.
std::vector<BigRat> solve_exact(const MatZ& g, const std::vector<BigRat>& rhs);

// Q(z) = sum_i d[i] * (z_i + sum_{j>i} r[i][j] z_j)^2. Raises
// NotPositiveDefinite when some pivot fails to be positive.
struct Cholesky {
  int n = 0;
  std::vector<BigRat> d;
  std::vector<std::vector<BigRat>> r;
};
Cholesky cholesky(const MatZ& gram);

// LLL (delta = 3/4) on a positive definite Gram matrix; returns the
// unimodular column transform U with tU*G*U reduced.
MatZ lll_transform(const MatZ& gram);

// Visit every integer point x with (x-t)^T G (x-t) <= bound, where the form
// is presented by its Cholesky data. The callback receives x, the exact
// attained value, and a multiplicity: with symmetric=true (center must be 0)
// only one of each +-pair is visited and reported with multiplicity 2.
using FpLeaf = std::function<void(const std::vector<Int>&, const BigRat&, int)>;
void fp_enumerate(const Cholesky& ch, const std::vector<BigRat>& center, const BigRat& bound,
                  const FpLeaf& leaf, bool symmetric = false);

// Stream all v with 0 <= v^T G v <= max_norm in original coordinates
// (LLL-preconditioned internally); one of each +-pair, multiplicity 2.
void ball_enumerate(const MatZ& gram, Int max_norm,
                    const std::function<void(const std::vector<Int>&, Int, int)>& leaf);

// Counts lattice points on affine hyperplane sections: for a fixed v, the
// solutions x of v^T G x = b form a coset of the rank n-1 kernel lattice.
// Built once per v; histogram() answers one b at a time, returning
// norm -> #solutions for all norms <= max_norm.
class SectionCounter {
 public:
  SectionCounter(const MatZ& gram, const std::vector<Int>& v);
  std::map<Int, long long> histogram(Int b, Int max_norm) const;

 private:
  const MatZ gram_;
  int n_;
  BigInt content_;
  VecZ u0_;       // G v . u0 = content
  MatZ w_;        // n x (n-1) kernel basis (columns), LLL-reduced
  MatZ gsec_;     // tW * G * W
  Cholesky ch_;
};

}  // namespace siegel

#endif
