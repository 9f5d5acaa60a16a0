#ifndef SIEGEL_BINFORM_HPP
#define SIEGEL_BINFORM_HPP

#include <optional>
#include <vector>

#include "siegel/arith.hpp"

namespace siegel {

// Half-integral symmetric 2x2 matrix T = [[a, b/2], [b/2, c]], encoded as the
// integer triple (a, b, c). The associated even lattice has Gram matrix
// [[2a, b], [b, 2c]]; disc = 4ac - b^2.
struct BinQF {
  Int a = 0, b = 0, c = 0;

  Int disc() const { return 4 * a * c - b * b; }
  bool positive_definite() const { return a > 0 && disc() > 0; }
  bool positive_semidefinite() const { return a >= 0 && c >= 0 && disc() >= 0; }
  Int trace() const { return a + c; }

  bool operator==(const BinQF& o) const { return a == o.a && b == o.b && c == o.c; }
  // Canonical output order: lexicographic by (c, a, b).
  bool operator<(const BinQF& o) const {
    if (c != o.c) return c < o.c;
    if (a != o.a) return a < o.a;
    return b < o.b;
  }
};

// Integer 2x2 matrix, row major.
struct Mat2 {
  Int m[2][2] = {{1, 0}, {0, 1}};

  static Mat2 identity() { return Mat2{}; }
  Int det() const { return m[0][0] * m[1][1] - m[0][1] * m[1][0]; }
  bool unimodular() const { Int d = det(); return d == 1 || d == -1; }

  Mat2 operator*(const Mat2& o) const {
    Mat2 r;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        r.m[i][j] = m[i][0] * o.m[0][j] + m[i][1] * o.m[1][j];
    return r;
  }
  // Inverse, valid for det = +-1 only.
  Mat2 inverse() const;

  bool operator==(const Mat2& o) const {
    return m[0][0] == o.m[0][0] && m[0][1] == o.m[0][1] && m[1][0] == o.m[1][0] && m[1][1] == o.m[1][1];
  }
  bool operator<(const Mat2& o) const {
    if (m[0][0] != o.m[0][0]) return m[0][0] < o.m[0][0];
    if (m[0][1] != o.m[0][1]) return m[0][1] < o.m[0][1];
    if (m[1][0] != o.m[1][0]) return m[1][0] < o.m[1][0];
    return m[1][1] < o.m[1][1];
  }
};

// tG * T * G on triples, exactly.
BinQF transform(const BinQF& t, const Mat2& g);

struct Reduction {
  BinQF canonical;
  Mat2 g;  // tG * T * G == canonical
};

// Gauss reduction. proper=false: GL_2(Z)-canonical 0 <= b <= a <= c.
// proper=true: SL_2(Z)-canonical -a < b <= a <= c with b >= 0 when a == c
// (then det g == 1).
Reduction reduce(const BinQF& t, bool proper);

// A transform G with tG*T1*G == T2 if the classes coincide (det G = 1 when
// proper), otherwise nullopt.
std::optional<Mat2> equivalent(const BinQF& t1, const BinQF& t2, bool proper);

// The full finite group {G : tG*T*G == T}.
std::vector<Mat2> automorphisms(const BinQF& t);

bool has_improper_automorphism(const BinQF& t);

}  // namespace siegel

#endif
