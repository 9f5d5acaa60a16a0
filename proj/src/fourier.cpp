#include "siegel/fourier.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <random>
#include <unordered_map>

#include "json.hpp"
#include "siegel/lattice_ops.hpp"

namespace siegel {

bool orientation_for(const RealCharacter& chi, int weight) {
  int sign = (weight % 2 == 0) ? 1 : -1;
  return chi(BigInt(-1)) * sign == -1;
}

std::vector<BinQF> window_classes(Int bound) {
  std::vector<BinQF> out;
  for (Int c = 1; c <= bound; ++c)
    for (Int a = 1; a <= c; ++a)
      for (Int b = 0; b <= a; ++b) out.push_back(BinQF{a, b, c});
  return out;
}

namespace {

// chi(det G)(det G)^k for unimodular G: trivial unless the expansion is
// oriented and det G = -1.
int det_sign_factor(const FourierExpansion& f, Int det) {
  return (det == -1 && f.oriented) ? -1 : 1;
}

}  // namespace

BigInt CoeffView::coeff(const BinQF& t) const {
  const FourierExpansion& f = *f_;
  Reduction red = reduce(t, f.oriented);
  BinQF key = red.canonical;
  int sign = 1;
  if (f.oriented && key.b < 0) {
    key = BinQF{key.a, -key.b, key.c};
    sign = -1;  // mirror carries chi(-1)(-1)^k = -1
  }
  if (key.c > f.bound) {
    if (fallback_) {
      if (f.oriented) raise(ErrorCode::OutOfBound, "no raw evaluator for oriented expansions");
      return fallback_(key);
    }
    raise(ErrorCode::OutOfBound,
          "class (" + std::to_string(key.a) + "," + std::to_string(key.b) + "," + std::to_string(key.c) +
              ") exceeds bound " + std::to_string(f.bound));
  }
  auto it = f.coeffs.find(key);
  if (it == f.coeffs.end()) raise(ErrorCode::InvalidExpansion, "missing coefficient inside the bound");
  return sign == 1 ? it->second : BigInt(-it->second);
}

BigInt CoeffView::coeff_scaled(const BinQF& t, Int num, Int den) const {
  std::optional<BinQF> s = scale(t, num, den);
  if (!s) return BigInt(0);
  return coeff(*s);
}

BinQF CoeffView::storage_key(const BinQF& t) const {
  BinQF key = reduce(t, f_->oriented).canonical;
  if (key.b < 0) key.b = -key.b;
  return key;
}

void validate_expansion(const FourierExpansion& f) {
  if (f.bound < 1) raise(ErrorCode::InvalidExpansion, "bound must be >= 1");
  if (f.weight < 1) raise(ErrorCode::InvalidExpansion, "weight must be >= 1");
  if (f.chi.modulus() != f.level) raise(ErrorCode::InvalidExpansion, "character modulus != level");
  if (f.oriented != orientation_for(f.chi, f.weight))
    raise(ErrorCode::InvalidExpansion, "orientation flag inconsistent with weight and character");
  std::vector<BinQF> window = window_classes(f.bound);
  if (f.coeffs.size() != window.size())
    raise(ErrorCode::InvalidExpansion, "coefficient map is not total on the window");
  size_t i = 0;
  for (const auto& [key, val] : f.coeffs) {
    (void)val;
    if (!(key == window[i]))
      raise(ErrorCode::InvalidExpansion, "non-canonical or missing class key in coefficient map");
    ++i;
  }
  for (const auto& [m, val] : f.degenerate) {
    (void)val;
    if (m < 0) raise(ErrorCode::InvalidExpansion, "negative degenerate index");
  }
}

RelationReport check_class_consistency(const FourierExpansion& f, RawEval raw, int samples_per_class,
                                       unsigned long seed) {
  RelationReport report;
  report.identity = "class-consistency";
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> entry(-2, 2);
  std::uniform_int_distribution<int> pick(0, 3);
  auto random_unimodular = [&]() {
    Mat2 g = Mat2::identity();
    for (int step = 0; step < 4; ++step) {
      Int x = entry(rng);
      Mat2 u;
      switch (pick(rng)) {
        case 0: u = Mat2{{{1, x}, {0, 1}}}; break;
        case 1: u = Mat2{{{1, 0}, {x, 1}}}; break;
        case 2: u = Mat2{{{0, -1}, {1, 0}}}; break;
        default: u = Mat2{{{1, 0}, {0, -1}}}; break;
      }
      g = g * u;
    }
    return g;
  };

  CoeffView view(f);
  int failures = 0;
  for (const auto& [key, stored] : f.coeffs) {
    if (f.oriented && has_improper_automorphism(key)) {
      if (stored != 0) {
        CheckLine& line = report.add("ambiguous-class-zero", BigRat(stored), BigRat(0));
        line.note = "class (" + std::to_string(key.a) + "," + std::to_string(key.b) + "," +
                    std::to_string(key.c) + ")";
        ++failures;
      }
    }
    for (int s = 0; s < samples_per_class; ++s) {
      if (raw && f.oriented) break;  // raw evaluators are plain-mode class functions
      Mat2 g = random_unimodular();
      BinQF moved = transform(key, g);
      int sign = det_sign_factor(f, g.det());
      BigRat expected(sign == 1 ? stored : BigInt(-stored));
      BigRat actual = raw ? BigRat(raw(moved)) : BigRat(view.coeff(moved));
      if (actual != expected) {
        CheckLine& line = report.add("transform-law", actual, expected);
        line.note = "class (" + std::to_string(key.a) + "," + std::to_string(key.b) + "," +
                    std::to_string(key.c) + ") det " + std::to_string(g.det());
        if (++failures > 32) return report;
      }
    }
    report.consumed.push_back(key);
  }
  if (report.checks.empty()) report.add("transform-law", BigRat(0), BigRat(0));
  return report;
}

// ---------------------------------------------------------------------------
// SparseSeries

namespace {

Int series_trace(const SeriesKey& k) { return k[0] + k[2]; }

bool series_term_less(const std::pair<SeriesKey, SeriesVal>& x, const std::pair<SeriesKey, SeriesVal>& y) {
  Int tx = series_trace(x.first), ty = series_trace(y.first);
  if (tx != ty) return tx < ty;
  return x.first < y.first;
}

}  // namespace

void SparseSeries::add_term(const SeriesKey& k, SeriesVal v) {
  if (series_trace(k) > trace4) return;
  terms.emplace_back(k, v);
}

void SparseSeries::normalize() {
  std::sort(terms.begin(), terms.end(), series_term_less);
  std::vector<std::pair<SeriesKey, SeriesVal>> out;
  out.reserve(terms.size());
  for (const auto& [k, v] : terms) {
    if (series_trace(k) > trace4) continue;
    if (!out.empty() && out.back().first == k)
      out.back().second += v;
    else
      out.emplace_back(k, v);
  }
  out.erase(std::remove_if(out.begin(), out.end(), [](const auto& t) { return t.second == 0; }),
            out.end());
  terms = std::move(out);
}

SparseSeries multiply(const SparseSeries& x, const SparseSeries& y) {
  SparseSeries out;
  out.trace4 = std::min(x.trace4, y.trace4);
  std::unordered_map<unsigned long long, SeriesVal> acc;
  acc.reserve(2 * std::max(x.terms.size(), y.terms.size()) + 16);
  auto pack = [](const SeriesKey& k) {
    unsigned long long a = static_cast<unsigned long long>(k[0]);
    unsigned long long b = static_cast<unsigned long long>(k[1] + (1LL << 20));
    unsigned long long c = static_cast<unsigned long long>(k[2]);
    return (a << 42) | (b << 21) | c;
  };
  // Both term lists are sorted by trace, so the inner loop can stop at the
  // first partner that overruns the bound.
  for (const auto& [kx, vx] : x.terms) {
    Int budget = out.trace4 - series_trace(kx);
    if (budget < 0) break;
    for (const auto& [ky, vy] : y.terms) {
      if (series_trace(ky) > budget) break;
      SeriesKey k{kx[0] + ky[0], kx[1] + ky[1], kx[2] + ky[2]};
      acc[pack(k)] += vx * vy;
    }
  }
  out.terms.reserve(acc.size());
  auto unpack = [](unsigned long long p) {
    SeriesKey k;
    k[0] = static_cast<Int>(p >> 42);
    k[1] = static_cast<Int>((p >> 21) & ((1ULL << 21) - 1)) - (1LL << 20);
    k[2] = static_cast<Int>(p & ((1ULL << 21) - 1));
    return k;
  };
  for (const auto& [p, v] : acc) {
    if (v != 0) out.terms.emplace_back(unpack(p), v);
  }
  std::sort(out.terms.begin(), out.terms.end(), series_term_less);
  return out;
}

// ---------------------------------------------------------------------------
// JSON

namespace {

using json = nlohmann::ordered_json;

json character_to_json(const RealCharacter& chi) {
  json j;
  j["modulus"] = chi.modulus();
  if (chi.kind() == RealCharacter::Kind::Trivial) {
    j["kind"] = "trivial";
  } else {
    j["kind"] = "kronecker";
    j["d"] = chi.d();
  }
  return j;
}

RealCharacter character_from_json(const json& j) {
  Int modulus = j.at("modulus").get<Int>();
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "trivial") return RealCharacter::trivial(modulus);
  if (kind == "kronecker") return RealCharacter::kronecker_char(modulus, j.at("d").get<Int>());
  raise(ErrorCode::InvalidExpansion, "unknown character kind " + kind);
}

}  // namespace

std::string expansion_to_json(const FourierExpansion& f) {
  json j;
  j["weight"] = f.weight;
  j["level"] = f.level;
  j["character"] = character_to_json(f.chi);
  j["oriented"] = f.oriented;
  j["bound"] = f.bound;
  json coeffs = json::array();
  for (const auto& [key, val] : f.coeffs)
    coeffs.push_back(json::array({key.a, key.b, key.c, val.get_str()}));
  j["coeffs"] = std::move(coeffs);
  json degenerate = json::array();
  for (const auto& [m, val] : f.degenerate) degenerate.push_back(json::array({m, val.get_str()}));
  j["degenerate"] = std::move(degenerate);
  return j.dump();
}

FourierExpansion expansion_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const std::exception& e) {
    raise(ErrorCode::InvalidExpansion, std::string("bad JSON: ") + e.what());
  }
  FourierExpansion f;
  try {
    f.weight = j.at("weight").get<int>();
    f.level = j.at("level").get<Int>();
    f.chi = character_from_json(j.at("character"));
    f.oriented = j.at("oriented").get<bool>();
    f.bound = j.at("bound").get<Int>();
    for (const auto& row : j.at("coeffs")) {
      BinQF key{row.at(0).get<Int>(), row.at(1).get<Int>(), row.at(2).get<Int>()};
      BigInt val(row.at(3).get<std::string>());
      if (!f.coeffs.emplace(key, std::move(val)).second)
        raise(ErrorCode::InvalidExpansion, "duplicate class key");
    }
    for (const auto& row : j.at("degenerate")) {
      Int m = row.at(0).get<Int>();
      BigInt val(row.at(1).get<std::string>());
      if (!f.degenerate.emplace(m, std::move(val)).second)
        raise(ErrorCode::InvalidExpansion, "duplicate degenerate key");
    }
  } catch (const SiegelError&) {
    throw;
  } catch (const std::exception& e) {
    raise(ErrorCode::InvalidExpansion, std::string("bad expansion document: ") + e.what());
  }
  validate_expansion(f);
  return f;
}

void write_expansion(const std::string& path, const FourierExpansion& f) {
  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) raise(ErrorCode::InvalidInput, "cannot open " + tmp + " for writing");
    out << expansion_to_json(f) << '\n';
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    raise(ErrorCode::InvalidInput, "cannot rename " + tmp + " to " + path);
}

FourierExpansion read_expansion(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) raise(ErrorCode::InvalidInput, "cannot open " + path);
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return expansion_from_json(text);
}

}  // namespace siegel
