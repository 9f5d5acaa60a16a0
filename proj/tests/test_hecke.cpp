#include <random>

#include "doctest.h"
#include "siegel/generators.hpp"
#include "siegel/hecke.hpp"

using namespace siegel;

namespace {

FourierExpansion random_expansion(int weight, const RealCharacter& chi, Int bound, unsigned long seed) {
  FourierExpansion f;
  f.weight = weight;
  f.level = chi.modulus();
  f.chi = chi;
  f.oriented = orientation_for(chi, weight);
  f.bound = bound;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> val(-9, 9);
  for (const BinQF& key : window_classes(bound)) {
    if (f.oriented && has_improper_automorphism(key))
      f.coeffs[key] = 0;
    else
      f.coeffs[key] = BigInt(val(rng));
  }
  validate_expansion(f);
  return f;
}

FourierExpansion zero_expansion(int weight, const RealCharacter& chi, Int bound) {
  FourierExpansion f;
  f.weight = weight;
  f.level = chi.modulus();
  f.chi = chi;
  f.oriented = orientation_for(chi, weight);
  f.bound = bound;
  for (const BinQF& key : window_classes(bound)) f.coeffs[key] = 0;
  return f;
}

FourierExpansion add(const FourierExpansion& x, const FourierExpansion& y) {
  FourierExpansion out = x;
  for (auto& [key, val] : out.coeffs) val += y.coeffs.at(key);
  return out;
}

}  // namespace

TEST_CASE("T(p) is linear and kills the zero expansion") {
  RealCharacter triv = RealCharacter::trivial(1);
  FourierExpansion z = zero_expansion(4, triv, 6);
  HeckeOutcome oz = apply_T_p(z, 2);
  for (const auto& [key, val] : oz.out.coeffs) {
    (void)key;
    CHECK(val == 0);
  }

  FourierExpansion f = random_expansion(4, triv, 6, 101);
  FourierExpansion g = random_expansion(4, triv, 6, 102);
  FourierExpansion sum = add(f, g);
  HeckeOutcome of = apply_T_p(f, 2), og = apply_T_p(g, 2), osum = apply_T_p(sum, 2);
  for (const auto& [key, val] : osum.out.coeffs) CHECK(val == of.out.coeffs.at(key) + og.out.coeffs.at(key));
}

TEST_CASE("operator bounds narrow and small windows are rejected") {
  RealCharacter triv = RealCharacter::trivial(1);
  FourierExpansion f = random_expansion(4, triv, 9, 103);
  CHECK(apply_T_p(f, 2).out.bound == 4);
  CHECK(apply_T1tilde_p2(f, 2).out.bound == 2);
  CHECK(apply_T1tilde_p2(f, 3).out.bound == 1);
  CHECK_THROWS_AS(apply_T_p(random_expansion(4, triv, 1, 1), 2), SiegelError);
  CHECK_THROWS_AS(apply_T1tilde_p2(random_expansion(4, triv, 3, 1), 2), SiegelError);
  CHECK_THROWS_AS(apply_T_p(f, 6), SiegelError);  // composite
}

TEST_CASE("weight guards") {
  RealCharacter triv = RealCharacter::trivial(1);
  FourierExpansion f = random_expansion(1, triv, 6, 104);
  CHECK_THROWS_AS(apply_T_p(f, 2), SiegelError);
  FourierExpansion g = random_expansion(2, triv, 8, 105);
  CHECK_THROWS_AS(apply_T1_p2(g, 2), SiegelError);  // k < 3
  CHECK(apply_T1tilde_p2(g, 2).out.bound == 2);     // shifted operator is fine at k = 2
}

TEST_CASE("output classes answer queries through any representative") {
  RealCharacter triv = RealCharacter::trivial(1);
  FourierExpansion f = random_expansion(4, triv, 9, 106);
  HeckeOutcome o = apply_T_p(f, 2);
  CoeffView out(o.out);
  for (const BinQF& key : window_classes(o.out.bound)) {
    BinQF moved = transform(key, Mat2{{{1, 2}, {0, 1}}});
    CHECK(out.coeff(moved) == out.coeff(key));
  }
}

TEST_CASE("T(p) collapse when chi(p) = 0") {
  EvenLattice l = scaled_identity_lattice(8, 2);
  FourierExpansion f = theta_series(l, 6);
  REQUIRE(f.chi(2) == 0);
  HeckeOutcome o = apply_T_p(f, 2);
  CoeffView in(f);
  for (const auto& [key, val] : o.out.coeffs) {
    CHECK(val == in.coeff_scaled(key, 2, 1));  // only the c(Lambda^p) term survives
  }
}

TEST_CASE("p^2 operator of the second kind at p | level is T(p) twice") {
  EvenLattice l = scaled_identity_lattice(8, 2);
  FourierExpansion f = theta_series(l, 6);
  HeckeOutcome twice = apply_T_p(apply_T_p(f, 2).out, 2);
  HeckeOutcome direct = apply_T2_p2_level(f, 2);
  CHECK(direct.out.coeffs == twice.out.coeffs);
  CHECK(direct.out.bound == f.bound / 4);
  CoeffView in(f);
  for (const auto& [key, val] : direct.out.coeffs) CHECK(val == in.coeff_scaled(key, 4, 1));

  FourierExpansion level1 = random_expansion(4, RealCharacter::trivial(1), 6, 107);
  CHECK_THROWS_AS(apply_T2_p2_level(level1, 2), SiegelError);
}

TEST_CASE("unshifted p^2 operator differs by the stated multiple of the input") {
  RealCharacter triv = RealCharacter::trivial(1);
  FourierExpansion f = random_expansion(4, triv, 9, 108);
  HeckeOutcome shifted = apply_T1tilde_p2(f, 2);
  HeckeOutcome plain = apply_T1_p2(f, 2);
  CoeffView in(f);
  BigInt mult = BigInt(2) * 3;  // chi(p) p^(k-3) (p+1) = 1 * 2 * 3
  for (const auto& [key, val] : plain.out.coeffs)
    CHECK(val == shifted.out.coeffs.at(key) - mult * in.coeff(key));

  EvenLattice l = scaled_identity_lattice(8, 2);
  FourierExpansion g = theta_series(l, 4);
  CHECK(apply_T1_p2(g, 2).out.coeffs == apply_T1tilde_p2(g, 2).out.coeffs);  // chi(p) = 0
}

TEST_CASE("operators at distinct primes commute on arbitrary expansions") {
  RealCharacter triv = RealCharacter::trivial(1);
  FourierExpansion f = random_expansion(4, triv, 6, 109);
  FourierExpansion ab = apply_T_p(apply_T_p(f, 2).out, 3).out;
  FourierExpansion ba = apply_T_p(apply_T_p(f, 3).out, 2).out;
  CHECK(ab.coeffs == ba.coeffs);
}

TEST_CASE("T(p) commutes with the shifted p^2 operator on arbitrary expansions") {
  RealCharacter triv = RealCharacter::trivial(1);
  FourierExpansion f = random_expansion(4, triv, 8, 110);
  FourierExpansion ab = apply_T1tilde_p2(apply_T_p(f, 2).out, 2).out;
  FourierExpansion ba = apply_T_p(apply_T1tilde_p2(f, 2).out, 2).out;
  CHECK(ab.coeffs == ba.coeffs);
}

TEST_CASE("T(2) at the principal class on the rank-8 window") {
  // chi(4) term vanishes on the non-integral 1/2-scaling, exactly one child
  // has an even-integral 1/2-scaling (the principal class), so the output is
  // 2^(k-2) a(I) + a(2I).
  EvenLattice e8 = e8_lattice();
  FourierExpansion f = theta_series(e8, 6);
  HeckeOutcome o = apply_T_p(f, 2);
  CHECK(o.out.coeffs.at(BinQF{1, 0, 1}) ==
        4 * f.coeffs.at(BinQF{1, 0, 1}) + f.coeffs.at(BinQF{2, 0, 2}));
}

TEST_CASE("eigenvalue extraction") {
  EvenLattice e8 = e8_lattice();
  FourierExpansion f = theta_series(e8, 6);
  HeckeOutcome o2 = apply_T_p(f, 2);
  auto rho = extract_eigenvalue(f, o2);
  REQUIRE(rho.has_value());
  CHECK(*rho == 45);

  // homogeneity: scaling the input leaves the eigenvalue unchanged
  FourierExpansion scaled = f;
  for (auto& [key, val] : scaled.coeffs) val *= 7;
  for (auto& [m, val] : scaled.degenerate) val *= 7;
  HeckeOutcome so = apply_T_p(scaled, 2);
  auto srho = extract_eigenvalue(scaled, so);
  REQUIRE(srho.has_value());
  CHECK(*srho == 45);

  // non-eigenform control
  FourierExpansion mixed = f;
  mixed.coeffs[BinQF{1, 0, 1}] += 1;
  HeckeOutcome mo = apply_T_p(mixed, 2);
  CHECK(!extract_eigenvalue(mixed, mo).has_value());

  // all-zero window is undecidable
  FourierExpansion z = zero_expansion(4, RealCharacter::trivial(1), 6);
  HeckeOutcome zo = apply_T_p(z, 2);
  CHECK_THROWS_AS(extract_eigenvalue(z, zo), SiegelError);
}
