#include "siegel/arith.hpp"

#include <numeric>
#include <vector>

namespace siegel {

BigInt pow_int(const BigInt& base, unsigned long e) {
  BigInt r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

Int isqrt(Int x) {
  if (x < 0) raise(ErrorCode::InvalidInput, "isqrt of negative value");
  mpz_class m(static_cast<long>(x)), r;
  mpz_sqrt(r.get_mpz_t(), m.get_mpz_t());
  return static_cast<Int>(r.get_si());
}

bool is_prime(Int n) {
  if (n < 2) return false;
  for (Int d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

int kronecker(const BigInt& d, const BigInt& n) {
  return mpz_kronecker(d.get_mpz_t(), n.get_mpz_t());
}

int kronecker(Int d, Int n) { return kronecker(BigInt(static_cast<long>(d)), BigInt(static_cast<long>(n))); }

RealCharacter::RealCharacter(Int modulus, Kind kind, Int d) : modulus_(modulus), kind_(kind), d_(d) {
  if (modulus_ < 1) raise(ErrorCode::InvalidCharacter, "modulus must be positive");
  validate();
}

RealCharacter RealCharacter::trivial(Int modulus) { return RealCharacter(modulus, Kind::Trivial, 1); }

RealCharacter RealCharacter::kronecker_char(Int modulus, Int d) {
  return RealCharacter(modulus, Kind::Kronecker, d);
}

int RealCharacter::operator()(const BigInt& n) const {
  BigInt g;
  BigInt mod(static_cast<long>(modulus_));
  mpz_gcd(g.get_mpz_t(), n.get_mpz_t(), mod.get_mpz_t());
  if (g != 1) return 0;
  if (kind_ == Kind::Trivial) return 1;
  return kronecker(BigInt(static_cast<long>(d_)), n);
}

// Checked once at construction: the map n -> (d|n) zeroed outside the units
// mod N must descend to a character mod N, i.e. (d|n) depends only on n mod N
// for n coprime to N, and never vanishes there. (d|.) is periodic with period
// dividing 4|d|, so it suffices to scan one common period lcm(4|d|, N).
void RealCharacter::validate() const {
  if (kind_ == Kind::Trivial) return;
  if (d_ == 0) raise(ErrorCode::InvalidCharacter, "kronecker character needs d != 0");
  std::vector<int> ref(static_cast<size_t>(modulus_), 2);  // 2 = unset
  Int period = std::lcm(4 * (d_ < 0 ? -d_ : d_), modulus_);
  for (Int n = 0; n < period; ++n) {
    if (std::gcd(n, modulus_) != 1) continue;
    int v = kronecker(d_, n);
    if (v == 0)
      raise(ErrorCode::InvalidCharacter,
            "(d|n) vanishes on a unit mod N; conductor does not divide " + std::to_string(modulus_));
    int& r = ref[static_cast<size_t>(n % modulus_)];
    if (r == 2)
      r = v;
    else if (r != v)
      raise(ErrorCode::InvalidCharacter, "(d|.) is not well defined mod " + std::to_string(modulus_));
  }
}

int epsilon(const RealCharacter& chi, int weight) {
  if (weight < 0) raise(ErrorCode::UnsupportedWeight, "weight must be nonnegative");
  int sign = (weight % 2 == 0) ? 1 : -1;
  return 1 + chi(BigInt(-1)) * sign;
}

}  // namespace siegel
