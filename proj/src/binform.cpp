#include "siegel/binform.hpp"

#include <algorithm>
#include <set>

namespace siegel {

Mat2 Mat2::inverse() const {
  Int d = det();
  if (d != 1 && d != -1) raise(ErrorCode::InvalidInput, "inverse of non-unimodular matrix");
  Mat2 r;
  r.m[0][0] = d * m[1][1];
  r.m[0][1] = -d * m[0][1];
  r.m[1][0] = -d * m[1][0];
  r.m[1][1] = d * m[0][0];
  return r;
}

BinQF transform(const BinQF& t, const Mat2& g) {
  // Columns of g are the images of the basis vectors.
  Int p = g.m[0][0], q = g.m[0][1], r = g.m[1][0], s = g.m[1][1];
  BinQF out;
  out.a = t.a * p * p + t.b * p * r + t.c * r * r;
  out.b = 2 * t.a * p * q + t.b * (p * s + q * r) + 2 * t.c * r * s;
  out.c = t.a * q * q + t.b * q * s + t.c * s * s;
  return out;
}

namespace {

// Floor division for possibly negative numerator.
Int fdiv(Int a, Int b) {
  Int q = a / b, r = a % b;
  if (r != 0 && ((r < 0) != (b < 0))) --q;
  return q;
}

const Mat2 kSwap{{{0, -1}, {1, 0}}};    // (a,b,c) -> (c,-b,a), det 1
const Mat2 kMirror{{{1, 0}, {0, -1}}};  // (a,b,c) -> (a,-b,c), det -1

Mat2 translation(Int q) { return Mat2{{{1, -q}, {0, 1}}}; }

}  // namespace

Reduction reduce(const BinQF& t, bool proper) {
  if (!t.positive_definite())
    raise(ErrorCode::NotPositiveDefinite, "reduce requires a positive definite form");
  BinQF cur = t;
  Mat2 g = Mat2::identity();
  for (;;) {
    if (cur.a > cur.c) {
      cur = transform(cur, kSwap);
      g = g * kSwap;
      continue;
    }
    if (cur.b > cur.a || cur.b <= -cur.a) {
      // Normalize b into (-a, a]: q = ceil((b-a)/2a).
      Int q = fdiv(cur.b + cur.a - 1, 2 * cur.a);
      Mat2 u = translation(q);
      cur = transform(cur, u);
      g = g * u;
      continue;
    }
    break;
  }
  if (cur.a == cur.c && cur.b < 0) {
    cur = transform(cur, kSwap);
    g = g * kSwap;
  }
  if (!proper && cur.b < 0) {
    cur = transform(cur, kMirror);
    g = g * kMirror;
  }
  return Reduction{cur, g};
}

std::optional<Mat2> equivalent(const BinQF& t1, const BinQF& t2, bool proper) {
  Reduction r1 = reduce(t1, proper);
  Reduction r2 = reduce(t2, proper);
  if (!(r1.canonical == r2.canonical)) return std::nullopt;
  Mat2 g = r1.g * r2.g.inverse();
  return g;
}

std::vector<Mat2> automorphisms(const BinQF& t) {
  Reduction red = reduce(t, true);
  const BinQF& r = red.canonical;
  // For a reduced form, any automorphism column representing c has entries
  // within 1 + ceil(sqrt(c/a)); the other entries are even smaller.
  Int s = isqrt((r.c + r.a - 1) / r.a);
  while (s * s * r.a < r.c) ++s;
  Int bd = 1 + s;
  std::vector<Mat2> auts;
  for (Int p = -bd; p <= bd; ++p)
    for (Int q = -bd; q <= bd; ++q)
      for (Int u = -bd; u <= bd; ++u)
        for (Int v = -bd; v <= bd; ++v) {
          Mat2 m{{{p, q}, {u, v}}};
          if (!m.unimodular()) continue;
          if (transform(r, m) == r) auts.push_back(m);
        }
  // Conjugate back to automorphisms of t itself.
  Mat2 ginv = red.g.inverse();
  std::set<Mat2> out;
  for (const Mat2& m : auts) out.insert(red.g * m * ginv);
  return std::vector<Mat2>(out.begin(), out.end());
}

bool has_improper_automorphism(const BinQF& t) {
  for (const Mat2& m : automorphisms(t))
    if (m.det() == -1) return true;
  return false;
}

}  // namespace siegel
