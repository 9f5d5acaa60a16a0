#include "siegel/latticeenum.hpp"

#include <algorithm>

namespace siegel {

MatZ identity_matrix(int n) {
  MatZ m(n, VecZ(n, 0));
  for (int i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

MatZ mat_mul(const MatZ& a, const MatZ& b) {
  int n = static_cast<int>(a.size());
  int k = static_cast<int>(b.size());
  int m = static_cast<int>(b[0].size());
  MatZ r(n, VecZ(m, 0));
  for (int i = 0; i < n; ++i)
    for (int l = 0; l < k; ++l) {
      if (a[i][l] == 0) continue;
      for (int j = 0; j < m; ++j) r[i][j] += a[i][l] * b[l][j];
    }
  return r;
}

MatZ mat_transpose(const MatZ& a) {
  int n = static_cast<int>(a.size());
  int m = static_cast<int>(a[0].size());
  MatZ r(m, VecZ(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j) r[j][i] = a[i][j];
  return r;
}

VecZ mat_vec(const MatZ& a, const VecZ& v) {
  int n = static_cast<int>(a.size());
  int m = static_cast<int>(a[0].size());
  VecZ r(n, 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j) r[i] += a[i][j] * v[j];
  return r;
}

MatZ congruence(const MatZ& g, const MatZ& u) { return mat_mul(mat_transpose(u), mat_mul(g, u)); }

BigInt dot(const VecZ& a, const VecZ& b) {
  BigInt s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

BigInt det_exact(const MatZ& a) {
  int n = static_cast<int>(a.size());
  std::vector<std::vector<BigRat>> m(n, std::vector<BigRat>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m[i][j] = BigRat(a[i][j]);
  BigRat det = 1;
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int row = col; row < n; ++row)
      if (m[row][col] != 0) {
        piv = row;
        break;
      }
    if (piv < 0) return BigInt(0);
    if (piv != col) {
      std::swap(m[piv], m[col]);
      det = -det;
    }
    det *= m[col][col];
    for (int row = col + 1; row < n; ++row) {
      if (m[row][col] == 0) continue;
      BigRat f = m[row][col] / m[col][col];
      for (int j = col; j < n; ++j) m[row][j] -= f * m[col][j];
    }
  }
  if (det.get_den() != 1) raise(ErrorCode::InvalidInput, "non-integral determinant");
  return BigInt(det.get_num());
}

std::vector<std::vector<BigRat>> invert_exact(const MatZ& a) {
  int n = static_cast<int>(a.size());
  std::vector<std::vector<BigRat>> m(n, std::vector<BigRat>(2 * n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) m[i][j] = BigRat(a[i][j]);
    m[i][n + i] = 1;
  }
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int row = col; row < n; ++row)
      if (m[row][col] != 0) {
        piv = row;
        break;
      }
    if (piv < 0) raise(ErrorCode::InvalidInput, "singular matrix");
    std::swap(m[piv], m[col]);
    BigRat d = m[col][col];
    for (int j = 0; j < 2 * n; ++j) m[col][j] /= d;
    for (int row = 0; row < n; ++row) {
      if (row == col || m[row][col] == 0) continue;
      BigRat f = m[row][col];
      for (int j = 0; j < 2 * n; ++j) m[row][j] -= f * m[col][j];
    }
  }
  std::vector<std::vector<BigRat>> inv(n, std::vector<BigRat>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) inv[i][j] = m[i][n + j];
  return inv;
}

std::vector<BigRat> solve_exact(const MatZ& g, const std::vector<BigRat>& rhs) {
  auto inv = invert_exact(g);
  int n = static_cast<int>(g.size());
  std::vector<BigRat> x(n, BigRat(0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) x[i] += inv[i][j] * rhs[j];
  return x;
}

Cholesky cholesky(const MatZ& gram) {
  int n = static_cast<int>(gram.size());
  std::vector<std::vector<BigRat>> a(n, std::vector<BigRat>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a[i][j] = BigRat(gram[i][j]);
  Cholesky ch;
  ch.n = n;
  ch.d.assign(n, BigRat(0));
  ch.r.assign(n, std::vector<BigRat>(n, BigRat(0)));
  for (int i = 0; i < n; ++i) {
    if (a[i][i] <= 0) raise(ErrorCode::NotPositiveDefinite, "cholesky pivot <= 0");
    ch.d[i] = a[i][i];
    for (int j = i + 1; j < n; ++j) ch.r[i][j] = a[i][j] / a[i][i];
    for (int k = i + 1; k < n; ++k)
      for (int l = k; l < n; ++l) a[k][l] -= ch.r[i][k] * a[i][l];
    for (int k = i + 1; k < n; ++k)
      for (int l = i + 1; l < k; ++l) a[k][l] = a[l][k];
  }
  return ch;
}

// ---------------------------------------------------------------------------
// LLL, Gram-only variant with an explicit transform.

namespace {

struct Gso {
  std::vector<BigRat> bstar;
  std::vector<std::vector<BigRat>> mu;
};

Gso compute_gso(const MatZ& g) {
  int n = static_cast<int>(g.size());
  Gso s;
  s.bstar.assign(n, BigRat(0));
  s.mu.assign(n, std::vector<BigRat>(n, BigRat(0)));
  for (int i = 0; i < n; ++i) {
    // <b_i, b*_j> = g_ij - sum_{l<j} mu_jl * <b_i, b*_l>
    std::vector<BigRat> inner(i + 1, BigRat(0));
    for (int j = 0; j <= i; ++j) {
      BigRat v(g[i][j]);
      for (int l = 0; l < j; ++l) v -= s.mu[j][l] * inner[l];
      inner[j] = v;
      if (j < i) {
        if (s.bstar[j] == 0) raise(ErrorCode::NotPositiveDefinite, "gso breakdown");
        s.mu[i][j] = v / s.bstar[j];
      } else {
        s.bstar[i] = v;
        if (v <= 0) raise(ErrorCode::NotPositiveDefinite, "gso pivot <= 0");
      }
    }
  }
  return s;
}

// basis_k -= r * basis_j on the Gram matrix and the transform columns.
void row_col_op(MatZ& g, MatZ& u, int k, int j, const BigInt& r) {
  int n = static_cast<int>(g.size());
  for (int t = 0; t < n; ++t) g[k][t] -= r * g[j][t];
  for (int t = 0; t < n; ++t) g[t][k] -= r * g[t][j];
  for (int t = 0; t < n; ++t) u[t][k] -= r * u[t][j];
}

void swap_rows_cols(MatZ& g, MatZ& u, int k) {
  int n = static_cast<int>(g.size());
  std::swap(g[k], g[k - 1]);
  for (int t = 0; t < n; ++t) std::swap(g[t][k], g[t][k - 1]);
  for (int t = 0; t < n; ++t) std::swap(u[t][k], u[t][k - 1]);
}

BigInt round_rat(const BigRat& q) {
  // nearest integer, ties toward even not needed; floor(q + 1/2)
  BigRat h = q + BigRat(1, 2);
  BigInt num = h.get_num(), den = h.get_den(), out;
  mpz_fdiv_q(out.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  return out;
}

}  // namespace

MatZ lll_transform(const MatZ& gram) {
  int n = static_cast<int>(gram.size());
  MatZ g = gram;
  MatZ u = identity_matrix(n);
  if (n <= 1) return u;
  Gso s = compute_gso(g);
  int k = 1;
  const BigRat delta(3, 4);
  while (k < n) {
    for (int j = k - 1; j >= 0; --j) {
      BigRat mu = s.mu[k][j];
      if (mu > BigRat(1, 2) || mu < BigRat(-1, 2)) {
        BigInt r = round_rat(mu);
        row_col_op(g, u, k, j, r);
        s = compute_gso(g);
      }
    }
    BigRat lhs = s.bstar[k];
    BigRat rhs = (delta - s.mu[k][k - 1] * s.mu[k][k - 1]) * s.bstar[k - 1];
    if (lhs >= rhs) {
      ++k;
    } else {
      swap_rows_cols(g, u, k);
      s = compute_gso(g);
      k = std::max(1, k - 1);
    }
  }
  return u;
}

// ---------------------------------------------------------------------------
// Fincke-Pohst with exact rational bounds.

namespace {

// Largest m >= 0 with m^2 * q <= p (p >= 0, q > 0).
void floor_sqrt_ratio(const BigInt& p, const BigInt& q, BigInt& m) {
  BigInt t;
  mpz_fdiv_q(t.get_mpz_t(), p.get_mpz_t(), q.get_mpz_t());
  mpz_sqrt(m.get_mpz_t(), t.get_mpz_t());
  while ((m + 1) * (m + 1) * q <= p) ++m;
  while (m > 0 && m * m * q > p) --m;
}

struct FpState {
  const Cholesky* ch;
  const std::vector<BigRat>* t;
  const FpLeaf* leaf;
  BigRat bound;
  bool symmetric = false;
  std::vector<Int> x;
  std::vector<BigRat> rem;    // rem[i]: budget entering level i
  std::vector<BigRat> center; // c_i per level
  std::vector<BigRat> diff, scratch;
  BigInt p, q, alpha, beta, fl, tmp, lo, hi;

  // sym_prefix: in symmetric mode, all coordinates fixed so far are zero, so
  // the +-mirror of whatever follows is congruent; visit one of the pair.
  void descend(int i, bool sym_prefix) {
    const Cholesky& c = *ch;
    if (i < 0) {
      (*leaf)(x, BigRat(bound - rem[0]), (symmetric && !sym_prefix) ? 2 : 1);
      return;
    }
    // center c_i = t_i - sum_{j>i} r_ij (x_j - t_j)
    BigRat& ci = center[i];
    ci = (*t)[i];
    for (int j = i + 1; j < c.n; ++j) {
      if (c.r[i][j] == 0) continue;
      scratch[i] = BigRat(x[j]) - (*t)[j];
      ci -= c.r[i][j] * scratch[i];
    }
    const BigRat& remi = (i + 1 < c.n) ? rem[i + 1] : bound;
    if (remi < 0) return;
    // x range: d_i (x - c_i)^2 <= rem_i
    p = remi.get_num() * c.d[i].get_den();
    q = remi.get_den() * c.d[i].get_num();
    alpha = ci.get_num();
    beta = ci.get_den();
    floor_sqrt_ratio(p * beta * beta, q, fl);
    tmp = alpha + fl;
    mpz_fdiv_q(hi.get_mpz_t(), tmp.get_mpz_t(), beta.get_mpz_t());
    tmp = fl - alpha;
    mpz_fdiv_q(lo.get_mpz_t(), tmp.get_mpz_t(), beta.get_mpz_t());
    mpz_neg(lo.get_mpz_t(), lo.get_mpz_t());
    if (!lo.fits_slong_p() || !hi.fits_slong_p())
      raise(ErrorCode::InvalidInput, "enumeration range exceeds machine integers");
    Int lo_i = static_cast<Int>(lo.get_si());
    Int hi_i = static_cast<Int>(hi.get_si());
    if (sym_prefix && lo_i < 0) lo_i = 0;
    for (Int v = lo_i; v <= hi_i; ++v) {
      x[i] = v;
      diff[i] = BigRat(v) - ci;
      rem[i] = remi - c.d[i] * diff[i] * diff[i];
      // exact boundary: range guarantees rem[i] >= 0
      descend(i - 1, sym_prefix && v == 0);
    }
    x[i] = 0;
  }
};

}  // namespace

void fp_enumerate(const Cholesky& ch, const std::vector<BigRat>& center, const BigRat& bound,
                  const FpLeaf& leaf, bool symmetric) {
  if (bound < 0) return;
  if (ch.n == 0) {
    leaf({}, BigRat(0), 1);
    return;
  }
  if (symmetric) {
    for (const BigRat& t : center)
      if (t != 0) raise(ErrorCode::InvalidInput, "symmetric enumeration needs a zero center");
  }
  FpState st;
  st.ch = &ch;
  st.t = &center;
  st.leaf = &leaf;
  st.bound = bound;
  st.symmetric = symmetric;
  st.x.assign(ch.n, 0);
  st.rem.assign(ch.n, BigRat(0));
  st.center.assign(ch.n, BigRat(0));
  st.diff.assign(ch.n, BigRat(0));
  st.scratch.assign(ch.n, BigRat(0));
  st.descend(ch.n - 1, symmetric);
}

void ball_enumerate(const MatZ& gram, Int max_norm,
                    const std::function<void(const std::vector<Int>&, Int, int)>& leaf) {
  int n = static_cast<int>(gram.size());
  MatZ u = lll_transform(gram);
  MatZ g = congruence(gram, u);
  Cholesky ch = cholesky(g);
  std::vector<BigRat> center(n, BigRat(0));
  std::vector<Int> orig(n);
  fp_enumerate(
      ch, center, BigRat(max_norm),
      [&](const std::vector<Int>& y, const BigRat& qv, int mult) {
        if (qv.get_den() != 1) raise(ErrorCode::InvalidInput, "non-integral norm in integral lattice");
        for (int i = 0; i < n; ++i) {
          BigInt s = 0;
          for (int j = 0; j < n; ++j) s += u[i][j] * y[j];
          if (!s.fits_slong_p()) raise(ErrorCode::InvalidInput, "vector coordinate overflow");
          orig[i] = static_cast<Int>(s.get_si());
        }
        leaf(orig, static_cast<Int>(BigInt(qv.get_num()).get_si()), mult);
      },
      true);
}

// ---------------------------------------------------------------------------
// SectionCounter

SectionCounter::SectionCounter(const MatZ& gram, const std::vector<Int>& v) : gram_(gram) {
  n_ = static_cast<int>(gram.size());
  VecZ vz(n_);
  for (int i = 0; i < n_; ++i) vz[i] = v[i];
  VecZ w = mat_vec(gram_, vz);
  // Column operations turning w^T U into (g, 0, ..., 0).
  MatZ u = identity_matrix(n_);
  VecZ ww = w;
  for (int i = 1; i < n_; ++i) {
    if (ww[i] == 0) continue;
    BigInt g, s, t;
    mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), ww[0].get_mpz_t(), ww[i].get_mpz_t());
    BigInt a0 = ww[0] / g, ai = ww[i] / g;
    for (int row = 0; row < n_; ++row) {
      BigInt c0 = u[row][0], ci = u[row][i];
      u[row][0] = s * c0 + t * ci;
      u[row][i] = -ai * c0 + a0 * ci;
    }
    ww[0] = g;
    ww[i] = 0;
  }
  if (ww[0] == 0) raise(ErrorCode::InvalidInput, "zero direction vector");
  if (ww[0] < 0) {
    ww[0] = -ww[0];
    for (int row = 0; row < n_; ++row) u[row][0] = -u[row][0];
  }
  content_ = ww[0];
  u0_.assign(n_, 0);
  for (int row = 0; row < n_; ++row) u0_[row] = u[row][0];
  if (n_ == 1) return;  // rank-0 kernel
  MatZ wbasis(n_, VecZ(n_ - 1));
  for (int row = 0; row < n_; ++row)
    for (int col = 1; col < n_; ++col) wbasis[row][col - 1] = u[row][col];
  MatZ gsec = congruence(gram_, wbasis);
  MatZ red = lll_transform(gsec);
  w_ = mat_mul(wbasis, red);
  gsec_ = congruence(gram_, w_);
  ch_ = cholesky(gsec_);
}

std::map<Int, long long> SectionCounter::histogram(Int b, Int max_norm) const {
  std::map<Int, long long> hist;
  BigInt bb(static_cast<long>(b));
  if (!mpz_divisible_p(bb.get_mpz_t(), content_.get_mpz_t())) return hist;
  BigInt scale = bb / content_;
  VecZ x0(n_);
  for (int i = 0; i < n_; ++i) x0[i] = scale * u0_[i];
  BigInt c0 = dot(x0, mat_vec(gram_, x0));
  if (n_ == 1) {
    if (c0 <= max_norm) hist[static_cast<Int>(c0.get_si())] += 1;
    return hist;
  }
  VecZ gx0 = mat_vec(gram_, x0);
  int m = n_ - 1;
  std::vector<BigRat> lp(m, BigRat(0));
  for (int col = 0; col < m; ++col) {
    BigInt s = 0;
    for (int row = 0; row < n_; ++row) s += w_[row][col] * gx0[row];
    lp[col] = BigRat(-s);
  }
  std::vector<BigRat> center = solve_exact(gsec_, lp);  // t = -G^-1 L
  BigRat off(c0);
  for (int col = 0; col < m; ++col) off -= lp[col] * center[col];  // c0 + L^t t, lp = -L
  BigRat budget = BigRat(max_norm) - off;
  if (budget < 0) return hist;
  fp_enumerate(
      ch_, center, budget,
      [&](const std::vector<Int>&, const BigRat& qv, int mult) {
        BigRat norm = off + qv;
        if (norm.get_den() != 1) raise(ErrorCode::InvalidInput, "non-integral section norm");
        hist[static_cast<Int>(BigInt(norm.get_num()).get_si())] += mult;
      },
      b == 0);
  return hist;
}

}  // namespace siegel
