#include <random>

#include "doctest.h"
#include "siegel/fourier.hpp"

using namespace siegel;

namespace {

// Synthetic expansion with deterministic pseudorandom coefficients; oriented
// mode forces ambiguous classes to zero.
FourierExpansion synthetic(int weight, const RealCharacter& chi, Int bound, unsigned long seed) {
  FourierExpansion f;
  f.weight = weight;
  f.level = chi.modulus();
  f.chi = chi;
  f.oriented = orientation_for(chi, weight);
  f.bound = bound;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> val(-50, 50);
  for (const BinQF& key : window_classes(bound)) {
    if (f.oriented && has_improper_automorphism(key))
      f.coeffs[key] = 0;
    else
      f.coeffs[key] = BigInt(val(rng));
  }
  f.degenerate[0] = 1;
  validate_expansion(f);
  return f;
}

Mat2 random_unimodular(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> coin(0, 3);
  std::uniform_int_distribution<Int> shear(-2, 2);
  Mat2 g = Mat2::identity();
  for (int i = 0; i < 5; ++i) {
    switch (coin(rng)) {
      case 0: g = g * Mat2{{{1, shear(rng)}, {0, 1}}}; break;
      case 1: g = g * Mat2{{{1, 0}, {shear(rng), 1}}}; break;
      case 2: g = g * Mat2{{{0, -1}, {1, 0}}}; break;
      default: g = g * Mat2{{{1, 0}, {0, -1}}}; break;
    }
  }
  return g;
}

}  // namespace

TEST_CASE("window enumeration is canonical and sorted") {
  auto window = window_classes(3);
  for (size_t i = 0; i < window.size(); ++i) {
    CHECK(window[i].positive_definite());
    CHECK(0 <= window[i].b);
    CHECK(window[i].b <= window[i].a);
    CHECK(window[i].a <= window[i].c);
    if (i > 0) CHECK(window[i - 1] < window[i]);
  }
  CHECK(window.size() == 16);  // 2 + 5 + 9 classes at c = 1, 2, 3
}

TEST_CASE("plain-mode coefficient lookup is class invariant") {
  FourierExpansion f = synthetic(4, RealCharacter::trivial(1), 6, 11);
  CoeffView view(f);
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 500; ++trial) {
    BinQF key = window_classes(6)[static_cast<size_t>(rng() % 77)];
    Mat2 g = random_unimodular(rng);
    CHECK(view.coeff(transform(key, g)) == f.coeffs.at(key));
  }
}

TEST_CASE("oriented-mode sign rules") {
  RealCharacter chi = RealCharacter::trivial(1);
  FourierExpansion f = synthetic(5, chi, 6, 12);  // odd weight, trivial chi: oriented
  REQUIRE(f.oriented);
  CoeffView view(f);
  std::mt19937_64 rng(17);
  const Mat2 mirror{{{1, 0}, {0, -1}}};
  for (int trial = 0; trial < 500; ++trial) {
    BinQF key = window_classes(6)[static_cast<size_t>(rng() % 77)];
    Mat2 g = random_unimodular(rng);
    BigInt expected = f.coeffs.at(key);
    if (g.det() == -1) expected = -expected;
    CHECK(view.coeff(transform(key, g)) == expected);
    CHECK(view.coeff(transform(key, mirror)) == -f.coeffs.at(key));
  }
  // ambiguous classes carry 0
  CHECK(view.coeff(BinQF{1, 0, 1}) == 0);
  CHECK(view.coeff(BinQF{1, 1, 1}) == 0);
}

TEST_CASE("coeff_scaled handles non-integral scalings") {
  FourierExpansion f = synthetic(4, RealCharacter::trivial(1), 6, 13);
  CoeffView view(f);
  CHECK(view.coeff_scaled(BinQF{1, 0, 1}, 1, 2) == 0);
  CHECK(view.coeff_scaled(BinQF{2, 0, 2}, 1, 2) == f.coeffs.at(BinQF{1, 0, 1}));
  CHECK(view.coeff_scaled(BinQF{5, 20, 25}, 1, 5) == view.coeff(BinQF{1, 4, 5}));
}

TEST_CASE("out-of-bound lookups raise and fallbacks answer them") {
  FourierExpansion f = synthetic(4, RealCharacter::trivial(1), 3, 14);
  CoeffView bare(f);
  CHECK_THROWS_AS(bare.coeff(BinQF{4, 0, 4}), SiegelError);
  CoeffView extended(f, [](const BinQF& t) { return BigInt(100 * t.c + t.a); });
  CHECK(extended.coeff(BinQF{4, 0, 4}) == 404);
  CHECK(extended.coeff(BinQF{1, 0, 1}) == f.coeffs.at(BinQF{1, 0, 1}));
}

TEST_CASE("validate_expansion rejects broken documents") {
  FourierExpansion f = synthetic(4, RealCharacter::trivial(1), 3, 15);
  FourierExpansion missing = f;
  missing.coeffs.erase(BinQF{1, 0, 1});
  CHECK_THROWS_AS(validate_expansion(missing), SiegelError);
  FourierExpansion extra = f;
  extra.coeffs[BinQF{1, -1, 2}] = 7;  // non-canonical key
  CHECK_THROWS_AS(validate_expansion(extra), SiegelError);
  FourierExpansion wrong_flag = f;
  wrong_flag.oriented = true;
  CHECK_THROWS_AS(validate_expansion(wrong_flag), SiegelError);
  FourierExpansion wrong_level = f;
  wrong_level.level = 3;  // character stays mod 1
  CHECK_THROWS_AS(validate_expansion(wrong_level), SiegelError);
}

TEST_CASE("class consistency self check flags corruption") {
  FourierExpansion f = synthetic(5, RealCharacter::trivial(1), 5, 16);
  CHECK(check_class_consistency(f, nullptr, 3, 99).pass());
  FourierExpansion bad = f;
  bad.coeffs[BinQF{1, 0, 1}] += 1;  // ambiguous class must store zero
  CHECK(!check_class_consistency(bad, nullptr, 3, 99).pass());
}

TEST_CASE("serialization round trip is bit exact") {
  for (unsigned long seed : {21UL, 22UL}) {
    FourierExpansion f = synthetic(4, RealCharacter::kronecker_char(4, -4), 5, seed);
    f.degenerate[3] = BigInt("123456789012345678901234567890");
    std::string text = expansion_to_json(f);
    FourierExpansion g = expansion_from_json(text);
    CHECK(g.weight == f.weight);
    CHECK(g.level == f.level);
    CHECK(g.bound == f.bound);
    CHECK(g.coeffs == f.coeffs);
    CHECK(g.degenerate == f.degenerate);
    CHECK(expansion_to_json(g) == text);
  }
}

TEST_CASE("series multiply basics") {
  SparseSeries one;
  one.trace4 = 40;
  one.add_term({0, 0, 0}, 1);
  one.normalize();

  SparseSeries s;
  s.trace4 = 40;
  s.add_term({4, 4, 4}, 3);
  s.add_term({8, 0, 8}, -2);
  s.normalize();

  SparseSeries t = multiply(s, one);
  CHECK(t.terms == s.terms);

  SparseSeries u;
  u.trace4 = 40;
  u.add_term({4, -4, 8}, 5);
  u.normalize();
  SparseSeries su = multiply(s, u);
  REQUIRE(su.terms.size() == 2);
  CHECK(su.terms[0].first == SeriesKey{8, 0, 12});
  CHECK(su.terms[0].second == 15);
  CHECK(su.terms[1].first == SeriesKey{12, -4, 16});
  CHECK(su.terms[1].second == -10);
}

TEST_CASE("series multiply is commutative and associative on the shared window") {
  std::mt19937_64 rng(31);
  auto random_series = [&](Int trace4) {
    SparseSeries s;
    s.trace4 = trace4;
    std::uniform_int_distribution<Int> idx(0, 6), val(-4, 4);
    for (int i = 0; i < 12; ++i) {
      Int a = idx(rng), c = idx(rng), b = idx(rng) - 3;
      s.add_term({a, b, c}, val(rng));
    }
    s.normalize();
    return s;
  };
  for (int trial = 0; trial < 20; ++trial) {
    SparseSeries x = random_series(12), y = random_series(12), z = random_series(12);
    CHECK(multiply(x, y).terms == multiply(y, x).terms);
    CHECK(multiply(multiply(x, y), z).terms == multiply(x, multiply(y, z)).terms);
  }
}
