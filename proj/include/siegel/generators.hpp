#ifndef SIEGEL_GENERATORS_HPP
#define SIEGEL_GENERATORS_HPP

#include <map>
#include <vector>

#include "siegel/fourier.hpp"
#include "siegel/latticeenum.hpp"

namespace siegel {

// An even positive definite lattice given by its Gram matrix, together with
// the derived modular-form metadata of its degree-2 theta series: weight n/2,
// level = least L with L*Gram^-1 even integral, character (d|.) with
// d = (-1)^(n/2) det(Gram).
struct EvenLattice {
  // Point symmetries used to collapse the outer loop of pair counting to
  // orbit representatives. WeylE8: Gram is the E8 Cartan matrix, reflections
  // through the basis vectors generate the full isometry group. SignedPerm:
  // Gram is s*I, coordinate permutations and sign flips.
  enum class Symmetry { None, WeylE8, SignedPerm };

  int n = 0;
  MatZ gram;
  std::vector<Int> gram_si;  // flattened machine-int copy for hot loops
  Int level = 1;
  RealCharacter character = RealCharacter::trivial(1);
  int weight = 0;
  Symmetry symmetry = Symmetry::None;
};

EvenLattice make_even_lattice(const MatZ& gram);
EvenLattice e8_lattice();
// s * I_n, s even (2i8 builtin uses s=2, n=8).
EvenLattice scaled_identity_lattice(int n, Int s);

// All v with 0 < v^T Gram v <= max_norm, grouped by norm. Intended for small
// balls; the theta kernels below stream instead of materializing.
std::map<Int, std::vector<std::vector<Int>>> enumerate_vectors(const EvenLattice& l, Int max_norm);

// Orbit representative of v under the lattice's point symmetry group
// (identity when symmetry == None).
std::vector<Int> orbit_canonical(const EvenLattice& l, std::vector<Int> v);

// Number of ordered pairs (v1, v2) with v1^T G v1 = 2a, v1^T G v2 = b,
// v2^T G v2 = 2c for the given index triple; works for arbitrary triples,
// reduced or not.
BigInt theta_coefficient(const EvenLattice& l, const BinQF& t);

// Degree-2 theta series up to class bound B: OpenMP kernel, orbit-collapsed
// when the lattice has a recognized symmetry.
FourierExpansion theta_series(const EvenLattice& l, Int bound);

// Plain double loop over sphere vector lists; kept as the reference the fast
// kernel is tested and benchmarked against.
FourierExpansion theta_series_reference(const EvenLattice& l, Int bound);

// RawEval adapter for coefficients beyond a stored bound.
RawEval theta_raw_eval(const EvenLattice& l);

// ---------------------------------------------------------------------------
// Theta constants and the weight-10 cusp form.

// Characteristic (a, b), a, b in {0, 1/2}^2 stored as bits; even iff
// 4 a.b = a1 b1 + a2 b2 is even. Exactly 10 of the 16 are even.
struct ThetaCharacteristic {
  int a1 = 0, a2 = 0, b1 = 0, b2 = 0;
  bool even() const { return (a1 * b1 + a2 * b2) % 2 == 0; }
};

std::vector<ThetaCharacteristic> even_characteristics();

// Sparse series of the genus-2 theta constant with the given even
// characteristic, truncated to trace <= trace_bound; indices stored times 4.
SparseSeries theta_constant(const ThetaCharacteristic& m, Int trace_bound);

// Product of the squares of the ten even theta constants, normalized so the
// coefficient at (1,1,1) equals one. Cuspidality and integrality of the
// window are verified.
FourierExpansion igusa_chi10(Int bound);

}  // namespace siegel

#endif
