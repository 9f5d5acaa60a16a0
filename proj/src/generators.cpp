#include "siegel/generators.hpp"

#include <omp.h>

#include <algorithm>

#include "siegel/lattice_ops.hpp"

namespace siegel {

namespace {

bool is_scaled_identity(const MatZ& g, Int* scale) {
  int n = static_cast<int>(g.size());
  BigInt s = g[0][0];
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j && g[i][j] != s) return false;
      if (i != j && g[i][j] != 0) return false;
    }
  if (!s.fits_slong_p()) return false;
  *scale = static_cast<Int>(s.get_si());
  return true;
}

MatZ e8_cartan() {
  // Simple-root Gram matrix; node 2 attaches to node 4 of the 1-3-4-5-6-7-8
  // chain (Bourbaki numbering).
  const int edges[7][2] = {{1, 3}, {3, 4}, {2, 4}, {4, 5}, {5, 6}, {6, 7}, {7, 8}};
  MatZ g(8, VecZ(8, 0));
  for (int i = 0; i < 8; ++i) g[i][i] = 2;
  for (const auto& e : edges) {
    g[e[0] - 1][e[1] - 1] = -1;
    g[e[1] - 1][e[0] - 1] = -1;
  }
  return g;
}

}  // namespace

EvenLattice make_even_lattice(const MatZ& gram) {
  EvenLattice l;
  l.n = static_cast<int>(gram.size());
  if (l.n <= 0 || l.n % 2 != 0 || l.n > 16)
    raise(ErrorCode::RankUnsupported, "rank must be even and at most 16");
  for (int i = 0; i < l.n; ++i) {
    if (static_cast<int>(gram[i].size()) != l.n) raise(ErrorCode::InvalidInput, "gram not square");
    if (gram[i][i] % 2 != 0) raise(ErrorCode::InvalidInput, "gram diagonal must be even");
    for (int j = 0; j < l.n; ++j)
      if (gram[i][j] != gram[j][i]) raise(ErrorCode::InvalidInput, "gram not symmetric");
  }
  l.gram = gram;
  cholesky(gram);  // positive definite or throws
  l.weight = l.n / 2;

  // level: least L with L * Gram^-1 integral and of even diagonal
  auto inv = invert_exact(gram);
  BigInt level = 1;
  for (int i = 0; i < l.n; ++i)
    for (int j = 0; j < l.n; ++j) {
      BigInt den = inv[i][j].get_den();
      BigInt need = den;
      if (i == j && inv[i][j].get_num() % 2 != 0) need = den * 2;
      mpz_lcm(level.get_mpz_t(), level.get_mpz_t(), need.get_mpz_t());
    }
  if (!level.fits_slong_p()) raise(ErrorCode::InvalidInput, "level overflow");
  l.level = static_cast<Int>(level.get_si());

  BigInt det = det_exact(gram);
  BigInt d = (l.weight % 2 == 0) ? det : -det;
  if (!d.fits_slong_p()) raise(ErrorCode::InvalidInput, "character discriminant overflow");
  Int dd = static_cast<Int>(d.get_si());
  l.character = (dd == 1) ? RealCharacter::trivial(l.level)
                          : RealCharacter::kronecker_char(l.level, dd);

  Int s = 0;
  if (gram == e8_cartan())
    l.symmetry = EvenLattice::Symmetry::WeylE8;
  else if (is_scaled_identity(gram, &s))
    l.symmetry = EvenLattice::Symmetry::SignedPerm;

  l.gram_si.resize(static_cast<size_t>(l.n) * l.n);
  for (int i = 0; i < l.n; ++i)
    for (int j = 0; j < l.n; ++j) {
      if (!gram[i][j].fits_slong_p()) raise(ErrorCode::InvalidInput, "gram entry overflow");
      l.gram_si[static_cast<size_t>(i) * l.n + j] = static_cast<Int>(gram[i][j].get_si());
    }
  return l;
}

EvenLattice e8_lattice() {
  EvenLattice l = make_even_lattice(e8_cartan());
  if (det_exact(l.gram) != 1) raise(ErrorCode::InvalidInput, "e8 gram must have determinant 1");
  // minimum norm 2: no nonzero vector of norm < 2, and norm 2 is attained
  long long count1 = 0, count2 = 0;
  ball_enumerate(l.gram, 2, [&](const std::vector<Int>&, Int q, int mult) {
    if (q == 1) count1 += mult;
    if (q == 2) count2 += mult;
  });
  if (count1 != 0 || count2 == 0) raise(ErrorCode::InvalidInput, "e8 minimum norm check failed");
  return l;
}

EvenLattice scaled_identity_lattice(int n, Int s) {
  if (s <= 0 || s % 2 != 0) raise(ErrorCode::InvalidInput, "scale must be positive and even");
  MatZ g(n, VecZ(n, 0));
  for (int i = 0; i < n; ++i) g[i][i] = s;
  return make_even_lattice(g);
}

std::map<Int, std::vector<std::vector<Int>>> enumerate_vectors(const EvenLattice& l, Int max_norm) {
  std::map<Int, std::vector<std::vector<Int>>> out;
  if (max_norm <= 0) return out;
  ball_enumerate(l.gram, max_norm, [&](const std::vector<Int>& v, Int q, int mult) {
    if (q == 0) return;
    out[q].push_back(v);
    if (mult == 2) {
      std::vector<Int> neg(v.size());
      for (size_t i = 0; i < v.size(); ++i) neg[i] = -v[i];
      out[q].push_back(std::move(neg));
    }
  });
  for (auto& [q, vecs] : out) {
    (void)q;
    std::sort(vecs.begin(), vecs.end());
  }
  return out;
}

std::vector<Int> orbit_canonical(const EvenLattice& l, std::vector<Int> v) {
  switch (l.symmetry) {
    case EvenLattice::Symmetry::None:
      return v;
    case EvenLattice::Symmetry::SignedPerm: {
      for (Int& e : v)
        if (e < 0) e = -e;
      std::sort(v.begin(), v.end(), std::greater<Int>());
      return v;
    }
    case EvenLattice::Symmetry::WeylE8: {
      // Reflect through basis roots until all pairings are nonnegative; the
      // dominant representative is unique per orbit.
      std::vector<Int> w(8, 0);
      for (int i = 0; i < 8; ++i) {
        Int s = 0;
        for (int j = 0; j < 8; ++j) s += l.gram_si[static_cast<size_t>(i) * 8 + j] * v[j];
        w[i] = s;
      }
      for (;;) {
        int neg = -1;
        for (int i = 0; i < 8; ++i)
          if (w[i] < 0) {
            neg = i;
            break;
          }
        if (neg < 0) break;
        Int wi = w[neg];
        v[neg] -= wi;
        for (int j = 0; j < 8; ++j) w[j] -= wi * l.gram_si[static_cast<size_t>(j) * 8 + neg];
      }
      return v;
    }
  }
  return v;
}

namespace {

// Orbit decomposition of every sphere up to max_norm: norm -> (rep -> size).
std::map<Int, std::map<std::vector<Int>, long long>> sphere_orbits(const EvenLattice& l, Int max_norm) {
  std::map<Int, std::map<std::vector<Int>, long long>> orbits;
  const bool fold = l.symmetry != EvenLattice::Symmetry::None;
  ball_enumerate(l.gram, max_norm, [&](const std::vector<Int>& v, Int q, int mult) {
    if (q == 0) return;
    if (fold) {
      orbits[q][orbit_canonical(l, v)] += mult;
    } else {
      orbits[q][v] += 1;
      if (mult == 2) {
        std::vector<Int> neg(v.size());
        for (size_t i = 0; i < v.size(); ++i) neg[i] = -v[i];
        orbits[q][std::move(neg)] += 1;
      }
    }
  });
  return orbits;
}

}  // namespace

BigInt theta_coefficient(const EvenLattice& l, const BinQF& t) {
  // Count from the smaller sphere; ordered pair counts are symmetric in the
  // two slots once b is carried along.
  Int a2 = 2 * t.a, c2 = 2 * t.c, b = t.b;
  if (a2 > c2) std::swap(a2, c2);
  if (a2 < 0) return BigInt(0);
  if (a2 == 0) {
    if (b != 0) return BigInt(0);
    if (c2 == 0) return BigInt(1);
    BigInt n = 0;
    ball_enumerate(l.gram, c2, [&](const std::vector<Int>&, Int q, int mult) {
      if (q == c2) n += mult;
    });
    return n;
  }
  BigInt total = 0;
  auto orbits = sphere_orbits(l, a2);
  auto it = orbits.find(a2);
  if (it == orbits.end()) return BigInt(0);
  for (const auto& [rep, size] : it->second) {
    SectionCounter sec(l.gram, rep);
    auto hist = sec.histogram(b, c2);
    auto hit = hist.find(c2);
    if (hit != hist.end()) total += BigInt(static_cast<long>(size)) * BigInt(static_cast<long>(hit->second));
  }
  return total;
}

RawEval theta_raw_eval(const EvenLattice& l) {
  return [&l](const BinQF& t) { return theta_coefficient(l, t); };
}

namespace {

void fill_degenerate(const std::map<Int, std::map<std::vector<Int>, long long>>& orbits, Int bound,
                     FourierExpansion* f) {
  // Rank <= 1 indices reduce to diag(m, 0); their coefficient is the sphere
  // size |S_2m| (pairs (v, 0)), and the constant term is 1.
  f->degenerate[0] = 1;
  for (Int m = 1; m <= bound; ++m) {
    long long total = 0;
    auto it = orbits.find(2 * m);
    if (it != orbits.end())
      for (const auto& [rep, size] : it->second) {
        (void)rep;
        total += size;
      }
    f->degenerate[m] = BigInt(static_cast<long>(total));
  }
}

FourierExpansion theta_header(const EvenLattice& l, Int bound) {
  FourierExpansion f;
  f.weight = l.weight;
  f.level = l.level;
  f.chi = l.character;
  f.oriented = orientation_for(f.chi, f.weight);
  f.bound = bound;
  return f;
}

}  // namespace

FourierExpansion theta_series(const EvenLattice& l, Int bound) {
  if (bound < 1) raise(ErrorCode::InvalidInput, "bound must be >= 1");
  FourierExpansion f = theta_header(l, bound);

  // Outer loop: orbit representatives of the norm-2a spheres (all vectors
  // when the lattice has no recognized symmetry).
  auto orbits = sphere_orbits(l, 2 * bound);

  struct Task {
    Int a;
    const std::vector<Int>* rep;
    long long size;
  };
  std::vector<Task> tasks;
  for (Int a = 1; a <= bound; ++a) {
    auto it = orbits.find(2 * a);
    if (it == orbits.end()) continue;
    for (const auto& [rep, size] : it->second) tasks.push_back(Task{a, &rep, size});
  }

  // counts[(a,b,c)] accumulated per task, merged in task order.
  std::vector<std::map<BinQF, long long>> partial(tasks.size());
#pragma omp parallel for schedule(dynamic)
  for (size_t ti = 0; ti < tasks.size(); ++ti) {
    const Task& task = tasks[ti];
    SectionCounter sec(l.gram, *task.rep);
    for (Int b = 0; b <= task.a; ++b) {
      auto hist = sec.histogram(b, 2 * bound);
      for (const auto& [norm, cnt] : hist) {
        if (norm % 2 != 0) continue;
        Int c = norm / 2;
        if (c < task.a || c > bound) continue;
        partial[ti][BinQF{task.a, b, c}] += task.size * cnt;
      }
    }
  }

  for (const BinQF& key : window_classes(bound)) f.coeffs[key] = 0;
  for (const auto& part : partial)
    for (const auto& [key, cnt] : part) f.coeffs[key] += BigInt(static_cast<long>(cnt));

  fill_degenerate(orbits, bound, &f);
  validate_expansion(f);
  return f;
}

FourierExpansion theta_series_reference(const EvenLattice& l, Int bound) {
  if (bound < 1) raise(ErrorCode::InvalidInput, "bound must be >= 1");
  FourierExpansion f = theta_header(l, bound);
  for (const BinQF& key : window_classes(bound)) f.coeffs[key] = 0;

  std::vector<std::vector<Int>> vecs;
  std::vector<Int> norms;
  ball_enumerate(l.gram, 2 * bound, [&](const std::vector<Int>& v, Int q, int mult) {
    if (q == 0) return;
    vecs.push_back(v);
    norms.push_back(q);
    if (mult == 2) {
      std::vector<Int> neg(v.size());
      for (size_t i = 0; i < v.size(); ++i) neg[i] = -v[i];
      vecs.push_back(std::move(neg));
      norms.push_back(q);
    }
  });
  int n = l.n;
  std::vector<Int> gramsi(static_cast<size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) gramsi[static_cast<size_t>(i) * n + j] = static_cast<Int>(l.gram[i][j].get_si());
  for (size_t i = 0; i < vecs.size(); ++i) {
    if (norms[i] % 2 != 0) continue;
    Int a = norms[i] / 2;
    if (a > bound) continue;
    std::vector<Int> gv(n, 0);
    for (int r = 0; r < n; ++r)
      for (int s = 0; s < n; ++s) gv[r] += gramsi[static_cast<size_t>(r) * n + s] * vecs[i][s];
    for (size_t j = 0; j < vecs.size(); ++j) {
      if (norms[j] % 2 != 0) continue;
      Int c = norms[j] / 2;
      if (c < a || c > bound) continue;
      Int b = 0;
      for (int r = 0; r < n; ++r) b += gv[r] * vecs[j][r];
      if (b < 0 || b > a) continue;
      f.coeffs[BinQF{a, b, c}] += 1;
    }
  }
  f.degenerate[0] = 1;
  for (Int m = 1; m <= bound; ++m) {
    long long total = 0;
    for (size_t i = 0; i < norms.size(); ++i)
      if (norms[i] == 2 * m) ++total;
    f.degenerate[m] = BigInt(static_cast<long>(total));
  }
  validate_expansion(f);
  return f;
}

// ---------------------------------------------------------------------------
// Theta constants and chi10.

std::vector<ThetaCharacteristic> even_characteristics() {
  std::vector<ThetaCharacteristic> out;
  for (int a1 = 0; a1 < 2; ++a1)
    for (int a2 = 0; a2 < 2; ++a2)
      for (int b1 = 0; b1 < 2; ++b1)
        for (int b2 = 0; b2 < 2; ++b2) {
          ThetaCharacteristic m{a1, a2, b1, b2};
          if (m.even()) out.push_back(m);
        }
  return out;
}

SparseSeries theta_constant(const ThetaCharacteristic& m, Int trace_bound) {
  if (!m.even()) raise(ErrorCode::OddCharacteristic, "theta constant needs an even characteristic");
  if (trace_bound < 0) raise(ErrorCode::InvalidInput, "trace bound must be >= 0");
  SparseSeries s;
  s.trace4 = 4 * trace_bound;
  // Terms are indexed by x = n1 + a1/2, y = n2 + a2/2; with p = 2x, q = 2y
  // the (times 4) index triple is (p^2, 2pq, q^2) and the sign is
  // (-1)^(n1 b1 + n2 b2 + (a1 b1 + a2 b2)/2).
  Int pmax = isqrt(s.trace4);
  for (Int p = -pmax - 1; p <= pmax + 1; ++p) {
    if (((p % 2) + 2) % 2 != m.a1) continue;
    for (Int q = -pmax - 1; q <= pmax + 1; ++q) {
      if (((q % 2) + 2) % 2 != m.a2) continue;
      if (p * p + q * q > s.trace4) continue;
      Int n1 = (p - m.a1) / 2, n2 = (q - m.a2) / 2;
      Int e = n1 * m.b1 + n2 * m.b2 + (m.a1 * m.b1 + m.a2 * m.b2) / 2;
      SeriesVal sign = (((e % 2) + 2) % 2 == 0) ? 1 : -1;
      s.add_term(SeriesKey{p * p, 2 * p * q, q * q}, sign);
    }
  }
  s.normalize();
  return s;
}

FourierExpansion igusa_chi10(Int bound) {
  if (bound < 3) raise(ErrorCode::InvalidInput, "bound must be >= 3 (first nonzero class)");
  // A theta term with vector x carries the stored index 4*x x^t, which is
  // twice the honest half-integral index x x^t / 2; the twenty-fold product
  // therefore lands on stored triples divisible by 8, and the constants have
  // to be generated to twice the target trace.
  Int trace_bound = 2 * (2 * bound + 2);

  // Shifted characteristics (a != 0) have no constant term; taking them
  // first keeps the partial products supported at high trace, where the
  // truncation prunes hardest.
  std::vector<ThetaCharacteristic> evens = even_characteristics();
  std::stable_sort(evens.begin(), evens.end(), [](const ThetaCharacteristic& x, const ThetaCharacteristic& y) {
    return (x.a1 + x.a2) > (y.a1 + y.a2);
  });
  SparseSeries product;
  product.trace4 = 4 * trace_bound;
  product.add_term(SeriesKey{0, 0, 0}, 1);
  product.normalize();
  for (const ThetaCharacteristic& m : evens) {
    SparseSeries t = theta_constant(m, trace_bound);
    product = multiply(product, multiply(t, t));
  }

  std::map<BinQF, SeriesVal> integral;
  for (const auto& [key, val] : product.terms) {
    if (key[0] % 8 != 0 || key[1] % 8 != 0 || key[2] % 8 != 0)
      raise(ErrorCode::NormalizationFailure, "product term not on an integral index");
    integral[BinQF{key[0] / 8, key[1] / 8, key[2] / 8}] = val;
  }

  auto term_at = [&](const BinQF& k) -> SeriesVal {
    auto it = integral.find(k);
    return it == integral.end() ? SeriesVal(0) : it->second;
  };

  SeriesVal pivot = term_at(BinQF{1, 1, 1});
  if (pivot == 0) raise(ErrorCode::NormalizationFailure, "coefficient at (1,1,1) vanishes");

  FourierExpansion f;
  f.weight = 10;
  f.level = 1;
  f.chi = RealCharacter::trivial(1);
  f.oriented = false;
  f.bound = bound;
  auto to_bigint = [](SeriesVal v) {
    bool negative = v < 0;
    unsigned __int128 u = negative ? static_cast<unsigned __int128>(-v) : static_cast<unsigned __int128>(v);
    BigInt hi(static_cast<unsigned long>(u >> 64));
    BigInt lo(static_cast<unsigned long>(u & 0xffffffffffffffffULL));
    BigInt out = (hi << 64) + lo;
    return negative ? BigInt(-out) : out;
  };
  for (const BinQF& key : window_classes(bound)) {
    SeriesVal v = term_at(key);
    if (v % pivot != 0)
      raise(ErrorCode::NormalizationFailure, "window coefficient not divisible by the pivot");
    f.coeffs[key] = to_bigint(v / pivot);
  }

  // Cusp form: every singular index inside the trace window must vanish.
  for (const auto& [key, val] : integral) {
    if (key.disc() == 0 && val != 0)
      raise(ErrorCode::NormalizationFailure, "nonzero coefficient on a singular index");
  }
  for (Int m = 0; m <= bound; ++m) f.degenerate[m] = 0;
  validate_expansion(f);
  return f;
}

}  // namespace siegel
