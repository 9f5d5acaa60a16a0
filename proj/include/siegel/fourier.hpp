#ifndef SIEGEL_FOURIER_HPP
#define SIEGEL_FOURIER_HPP

#include <array>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "siegel/binform.hpp"
#include "siegel/report.hpp"

namespace siegel {

// Truncated Fourier expansion of a degree-2 Siegel form. Coefficients are
// stored once per canonical class with larger diagonal entry c <= bound;
// inside the bound zeros are explicit, so a missing key means "invalid",
// never "zero". In oriented mode (chi(-1)(-1)^k == -1) the key set is the
// proper classes with b >= 0 and the mirror value is -stored.
struct FourierExpansion {
  int weight = 0;
  Int level = 1;
  RealCharacter chi = RealCharacter::trivial(1);
  bool oriented = false;
  Int bound = 1;
  std::map<BinQF, BigInt> coeffs;
  std::map<Int, BigInt> degenerate;  // rank <= 1 indices diag(m, 0), m >= 0
};

bool orientation_for(const RealCharacter& chi, int weight);

// All canonical keys (a,b,c) with 0 <= b <= a <= c <= bound, in (c,a,b) order.
std::vector<BinQF> window_classes(Int bound);

// Raw class-function evaluator (plain mode only): computes the coefficient
// at an arbitrary positive definite index, reduced or not. Used to answer
// queries beyond a stored bound and to cross-check the transformation law.
using RawEval = std::function<BigInt(const BinQF&)>;

// Read access through the transformation law. An optional fallback extends
// the window; stored values always win inside the bound.
class CoeffView {
 public:
  explicit CoeffView(const FourierExpansion& f, RawEval fallback = nullptr)
      : f_(&f), fallback_(std::move(fallback)) {}

  BigInt coeff(const BinQF& t) const;
  // Coefficient of (num/den)*T, zero when the scaling is not integral.
  BigInt coeff_scaled(const BinQF& t, Int num, Int den) const;

  // The canonical key under which coeff(t) is stored (sign dropped).
  BinQF storage_key(const BinQF& t) const;

  const FourierExpansion& expansion() const { return *f_; }

 private:
  const FourierExpansion* f_;
  RawEval fallback_;
};

inline BigInt coeff(const FourierExpansion& f, const BinQF& t) { return CoeffView(f).coeff(t); }

// Raises InvalidExpansion unless the key set is exactly the canonical window
// and the orientation flag matches weight and character.
void validate_expansion(const FourierExpansion& f);

// Transformation-law self check: for every stored class and a few random
// unimodular G, compare the raw coefficient at tG*T*G (when a raw evaluator
// is available) or the accessor value against the predicted sign; also checks
// that oriented-mode classes with an improper automorphism store zero.
RelationReport check_class_consistency(const FourierExpansion& f, RawEval raw, int samples_per_class,
                                       unsigned long seed);

// ---------------------------------------------------------------------------
// Raw sparse series over quarter-integral indices, used to assemble forms
// from theta constants. Index triples are stored times 4, values are exact;
// terms with trace (in quarter units) beyond trace4 are dropped, and the
// product of two series is exact up to min(trace4_x, trace4_y).

using SeriesKey = std::array<Int, 3>;  // (4a, 4b, 4c)
using SeriesVal = __int128;

struct SparseSeries {
  Int trace4 = 0;
  std::vector<std::pair<SeriesKey, SeriesVal>> terms;  // sorted by (trace, key)

  void add_term(const SeriesKey& k, SeriesVal v);
  void normalize();  // sort + combine duplicate keys, drop zeros and over-trace terms
};

SparseSeries multiply(const SparseSeries& x, const SparseSeries& y);

// ---------------------------------------------------------------------------
// JSON persistence. Classes are emitted sorted by (c,a,b); values are decimal
// strings.

std::string expansion_to_json(const FourierExpansion& f);
FourierExpansion expansion_from_json(const std::string& text);
void write_expansion(const std::string& path, const FourierExpansion& f);
FourierExpansion read_expansion(const std::string& path);

}  // namespace siegel

#endif
