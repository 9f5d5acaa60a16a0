#include "doctest.h"
#include "siegel/lattice_ops.hpp"

using namespace siegel;

TEST_CASE("sublattice family size and fixed children") {
  auto steps = sublattices_1_p(BinQF{1, 0, 1}, 2);
  CHECK(steps.size() == 3);
  for (const auto& s : steps) {
    CHECK(s.child == transform(s.parent, s.basis));
    CHECK(s.child.disc() == 4 * s.parent.disc());
  }

  auto steps3 = sublattices_1_p(BinQF{1, 0, 1}, 3);
  REQUIRE(steps3.size() == 4);
  CHECK(steps3[1].tag == 1);
  CHECK(steps3[1].child == BinQF{2, 6, 9});

  auto steps5 = sublattices_1_p(BinQF{1, 0, 1}, 5);
  REQUIRE(steps5.size() == 6);
  CHECK(steps5[2].tag == 2);
  CHECK(steps5[2].child == BinQF{5, 20, 25});
  auto scaled = scale(steps5[2].child, 1, 5);
  REQUIRE(scaled.has_value());
  CHECK(*scaled == BinQF{1, 4, 5});
}

TEST_CASE("sublattices reject composite p") {
  CHECK_THROWS_AS(sublattices_1_p(BinQF{1, 0, 1}, 6), SiegelError);
  CHECK_THROWS_AS(superlattices_1overp_1(BinQF{1, 0, 1}, 4), SiegelError);
  CHECK_THROWS_AS(alpha(BinQF{1, 0, 1}, 9), SiegelError);
}

TEST_CASE("superlattice families") {
  // No index-p overlattice of the principal form is even integral unless the
  // form itself is divisible by p^2.
  CHECK(superlattices_1overp_1(BinQF{1, 0, 1}, 3).empty());
  CHECK(superlattices_1overp_1(BinQF{1, 0, 1}, 5).empty());

  auto sup = superlattices_1overp_1(BinQF{9, 0, 1}, 3);
  bool contains_principal = false;
  for (const BinQF& s : sup)
    if (s == BinQF{1, 0, 1}) contains_principal = true;
  CHECK(contains_principal);
}

TEST_CASE("children with even-integral 1/p-scaling of the principal form") {
  // Counts 1, 0, 2 for p = 2, 3, 5; the scaled children all lie in the
  // principal class.
  auto count_scaled = [](Int p) {
    int n = 0;
    for (const auto& s : sublattices_1_p(BinQF{1, 0, 1}, p)) {
      if (auto half = scale(s.child, 1, p)) {
        ++n;
        CHECK(reduce(*half, false).canonical == BinQF{1, 0, 1});
      }
    }
    return n;
  };
  CHECK(count_scaled(2) == 1);
  CHECK(count_scaled(3) == 0);
  CHECK(count_scaled(5) == 2);
}

TEST_CASE("scale") {
  CHECK(*scale(BinQF{1, 0, 1}, 3, 1) == BinQF{3, 0, 3});
  CHECK(!scale(BinQF{1, 0, 1}, 1, 2).has_value());
  CHECK(*scale(BinQF{5, 20, 25}, 1, 5) == BinQF{1, 4, 5});
}

TEST_CASE("alpha against stated values and line enumeration") {
  CHECK(alpha(BinQF{1, 0, 1}, 5) == 2);
  CHECK(alpha(BinQF{1, 0, 1}, 3) == 0);
  CHECK(alpha(BinQF{1, 0, 1}, 2) == 1);
  CHECK(alpha(BinQF{3, 0, 3}, 3) == 4);
  CHECK(alpha(BinQF{1, 1, 1}, 3) == 1);
}

TEST_CASE("alpha is insensitive to prime-to-p scaling") {
  for (Int p : {2, 3, 5, 7}) {
    for (Int m = 1; m <= 10; ++m) {
      if (m % p == 0) continue;
      CHECK(alpha(BinQF{1, 0, 1}, p) == alpha(BinQF{m, 0, m}, p));
      CHECK(alpha(BinQF{2, 1, 3}, p) == alpha(BinQF{2 * m, m, 3 * m}, p));
    }
  }
}

TEST_CASE("alpha of p-power scalings of the principal form is p+1") {
  for (Int p : {2, 3, 5}) {
    Int s = p;
    for (int r = 1; r <= 3; ++r) {
      CHECK(alpha(BinQF{s, 0, s}, p) == p + 1);
      s *= p;
    }
  }
}

TEST_CASE("duality bijection between divisible children and even superlattices") {
  for (Int p : {2, 3, 5}) {
    for (const BinQF& t : {BinQF{1, 0, 1}, BinQF{2, 1, 3}, BinQF{4, 2, 5}, BinQF{p * p, 0, 1}}) {
      auto children = sublattices_1_p(t, p);
      size_t divisible = 0;
      for (const auto& s : children)
        if (scale(s.child, 1, p * p)) ++divisible;
      CHECK(divisible == superlattices_1overp_1(t, p).size());
    }
  }
}
