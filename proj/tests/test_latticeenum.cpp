#include <map>
#include <vector>

#include "doctest.h"
#include "siegel/latticeenum.hpp"

using namespace siegel;

namespace {

BigInt quad_value(const MatZ& g, const std::vector<Int>& x) {
  int n = static_cast<int>(g.size());
  BigInt q = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) q += g[i][j] * x[i] * x[j];
  return q;
}

// every integer point of the box [-box, box]^n, for oracle counting
template <typename F>
void box_scan(int n, Int box, F&& f) {
  std::vector<Int> x(n, -box);
  for (;;) {
    f(x);
    int i = 0;
    while (i < n && ++x[i] > box) x[i++] = -box;
    if (i == n) return;
  }
}

const MatZ kA2Plus{VecZ{2, 1, 0}, VecZ{1, 2, 0}, VecZ{0, 0, 4}};

}  // namespace

TEST_CASE("cholesky reproduces the form and rejects indefinite input") {
  Cholesky ch = cholesky(kA2Plus);
  box_scan(3, 2, [&](const std::vector<Int>& x) {
    BigRat q = 0;
    for (int i = 0; i < 3; ++i) {
      BigRat inner(x[i]);
      for (int j = i + 1; j < 3; ++j) inner += ch.r[i][j] * BigRat(x[j]);
      q += ch.d[i] * inner * inner;
    }
    CHECK(q == BigRat(quad_value(kA2Plus, x)));
  });
  MatZ indefinite{VecZ{2, 3}, VecZ{3, 2}};
  CHECK_THROWS_AS(cholesky(indefinite), SiegelError);
}

TEST_CASE("lll transform is unimodular and preserves the determinant") {
  MatZ skew{VecZ{2, 5, 0}, VecZ{5, 14, 3}, VecZ{0, 3, 12}};
  CHECK(det_exact(skew) > 0);
  MatZ u = lll_transform(skew);
  BigInt du = det_exact(u);
  CHECK((du == 1 || du == -1));
  MatZ red = congruence(skew, u);
  CHECK(det_exact(red) == det_exact(skew));
  cholesky(red);  // still positive definite
}

TEST_CASE("fp enumeration counts match box scans, centered and shifted") {
  Cholesky ch = cholesky(kA2Plus);
  for (Int bound : {5, 9, 16}) {
    long long oracle = 0;
    box_scan(3, 8, [&](const std::vector<Int>& x) {
      if (quad_value(kA2Plus, x) <= bound) ++oracle;
    });
    long long direct = 0, folded = 0;
    std::vector<BigRat> zero(3, BigRat(0));
    fp_enumerate(ch, zero, BigRat(bound), [&](const std::vector<Int>& x, const BigRat& q, int mult) {
      CHECK(q == BigRat(quad_value(kA2Plus, x)));
      CHECK(mult == 1);
      ++direct;
    });
    fp_enumerate(
        ch, zero, BigRat(bound),
        [&](const std::vector<Int>&, const BigRat&, int mult) { folded += mult; }, true);
    CHECK(direct == oracle);
    CHECK(folded == oracle);
  }

  // rational center: integer points of a shifted ellipsoid
  std::vector<BigRat> center{BigRat(1, 3), BigRat(-1, 2), BigRat(2)};
  long long oracle = 0;
  box_scan(3, 8, [&](const std::vector<Int>& x) {
    std::vector<BigRat> d(3);
    for (int i = 0; i < 3; ++i) d[i] = BigRat(x[i]) - center[i];
    BigRat q = 0;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) q += BigRat(kA2Plus[i][j]) * d[i] * d[j];
    if (q <= 10) ++oracle;
  });
  long long direct = 0;
  fp_enumerate(cholesky(kA2Plus), center, BigRat(10),
               [&](const std::vector<Int>&, const BigRat&, int) { ++direct; });
  CHECK(direct == oracle);
}

TEST_CASE("ball enumeration reports exact norms in original coordinates") {
  MatZ skew{VecZ{2, 5, 0}, VecZ{5, 14, 3}, VecZ{0, 3, 12}};
  long long oracle = 0;
  box_scan(3, 16, [&](const std::vector<Int>& x) {
    BigInt q = quad_value(skew, x);
    if (q > 0 && q <= 24) ++oracle;
  });
  long long seen = 0;
  ball_enumerate(skew, 24, [&](const std::vector<Int>& v, Int norm, int mult) {
    CHECK(BigInt(norm) == quad_value(skew, v));
    if (norm > 0) seen += mult;
  });
  CHECK(seen == oracle);
}

TEST_CASE("section histograms match constrained box scans") {
  const MatZ g{VecZ{2, 0, 0, 0}, VecZ{0, 2, 0, 0}, VecZ{0, 0, 2, 0}, VecZ{0, 0, 0, 2}};
  std::vector<Int> v{1, 1, 0, 0};
  SectionCounter sec(g, v);
  for (Int b : {-2, 0, 1, 2, 3}) {
    std::map<Int, long long> oracle;
    box_scan(4, 5, [&](const std::vector<Int>& x) {
      Int ip = 2 * (x[0] + x[1]);  // v^T G x
      if (ip != b) return;
      BigInt q = quad_value(g, x);
      if (q <= 16) ++oracle[static_cast<Int>(q.get_si())];
    });
    CHECK(sec.histogram(b, 16) == oracle);
  }
  // unsolvable inner products give empty histograms
  CHECK(sec.histogram(1, 16).empty());
}

TEST_CASE("rank-1 sections") {
  MatZ g{VecZ{4}};
  SectionCounter sec(g, std::vector<Int>{1});
  // v^T G x = 4x: only multiples of 4 are attainable, each by one point
  CHECK(sec.histogram(4, 100) == std::map<Int, long long>{{4, 1}});
  CHECK(sec.histogram(2, 100).empty());
  CHECK(sec.histogram(0, 100) == std::map<Int, long long>{{0, 1}});
}
