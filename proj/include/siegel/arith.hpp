#ifndef SIEGEL_ARITH_HPP
#define SIEGEL_ARITH_HPP

#include <gmpxx.h>

#include <cstdint>
#include <string>

#include "siegel/errors.hpp"

namespace siegel {

// All coefficient arithmetic is exact: big integers for coefficients,
// big rationals for eigenvalues and the eta/kappa scalars. No floating
// point anywhere.
using BigInt = mpz_class;
using BigRat = mpq_class;
using Int = std::int64_t;

BigInt pow_int(const BigInt& base, unsigned long e);

// Floor of sqrt(x), x >= 0.
Int isqrt(Int x);

bool is_prime(Int n);

// Kronecker symbol (d|n), the full extension of the Jacobi symbol to all
// integer pairs.
int kronecker(const BigInt& d, const BigInt& n);
int kronecker(Int d, Int n);

// A Dirichlet character taking values in {-1,0,1}: either the trivial
// character mod N, or n -> (d|n) restricted to units mod N.
class RealCharacter {
 public:
  enum class Kind { Trivial, Kronecker };

  static RealCharacter trivial(Int modulus);
  static RealCharacter kronecker_char(Int modulus, Int d);

  int operator()(const BigInt& n) const;
  int operator()(Int n) const { return (*this)(BigInt(n)); }

  Int modulus() const { return modulus_; }
  Kind kind() const { return kind_; }
  Int d() const { return d_; }

  bool operator==(const RealCharacter& o) const {
    return modulus_ == o.modulus_ && kind_ == o.kind_ && (kind_ == Kind::Trivial || d_ == o.d_);
  }

 private:
  RealCharacter(Int modulus, Kind kind, Int d);
  void validate() const;

  Int modulus_ = 1;
  Kind kind_ = Kind::Trivial;
  Int d_ = 1;
};

// 1 + chi(-1)(-1)^k, always 0 or 2 for real characters.
int epsilon(const RealCharacter& chi, int weight);

}  // namespace siegel

#endif
