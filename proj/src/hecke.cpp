#include "siegel/hecke.hpp"

#include <omp.h>

#include "siegel/lattice_ops.hpp"

namespace siegel {

const char* hecke_op_name(HeckeOp op) {
  switch (op) {
    case HeckeOp::Tp: return "tp";
    case HeckeOp::T1Tilde: return "t1tilde";
    case HeckeOp::T1: return "t1";
    case HeckeOp::T2Level: return "t2level";
  }
  return "?";
}

namespace {

FourierExpansion narrowed_header(const FourierExpansion& f, Int new_bound) {
  FourierExpansion out;
  out.weight = f.weight;
  out.level = f.level;
  out.chi = f.chi;
  out.oriented = f.oriented;
  out.bound = new_bound;
  return out;
}

// Fills the narrowed window in parallel; per-class work is independent.
template <typename PerClass>
FourierExpansion map_window(const FourierExpansion& f, Int new_bound, PerClass&& per_class) {
  FourierExpansion out = narrowed_header(f, new_bound);
  std::vector<BinQF> window = window_classes(new_bound);
  std::vector<BigInt> values(window.size());
#pragma omp parallel for schedule(dynamic)
  for (size_t i = 0; i < window.size(); ++i) values[i] = per_class(window[i]);
  for (size_t i = 0; i < window.size(); ++i) out.coeffs[window[i]] = values[i];
  validate_expansion(out);
  return out;
}

void check_weight(const FourierExpansion& f, int min_weight) {
  if (f.weight < min_weight)
    raise(ErrorCode::UnsupportedWeight,
          "weight " + std::to_string(f.weight) + " below " + std::to_string(min_weight));
}

}  // namespace

HeckeOutcome apply_T_p(const FourierExpansion& f, Int p) {
  require_prime(p);
  check_weight(f, 2);
  Int new_bound = f.bound / p;
  if (new_bound < 1) raise(ErrorCode::BoundTooSmall, "bound " + std::to_string(f.bound) + " too small for T(p)");
  CoeffView view(f);
  int chi_p = f.chi(p);
  int chi_p2 = chi_p * chi_p;
  unsigned k = static_cast<unsigned>(f.weight);
  BigInt pw_top = pow_int(BigInt(p), 2 * k - 3);
  BigInt pw_mid = pow_int(BigInt(p), k - 2);
  FourierExpansion out = map_window(f, new_bound, [&](const BinQF& key) {
    BigInt val = view.coeff_scaled(key, p, 1);
    if (chi_p2 != 0) val += chi_p2 * pw_top * view.coeff_scaled(key, 1, p);
    if (chi_p != 0) {
      BigInt child_sum = 0;
      for (const SublatticeStep& s : sublattices_1_p(key, p)) child_sum += view.coeff_scaled(s.child, 1, p);
      val += chi_p * pw_mid * child_sum;
    }
    return val;
  });
  return HeckeOutcome{std::move(out), HeckeOp::Tp, p};
}

HeckeOutcome apply_T1tilde_p2(const FourierExpansion& f, Int p) {
  require_prime(p);
  check_weight(f, 2);
  Int new_bound = f.bound / (p * p);
  if (new_bound < 1)
    raise(ErrorCode::BoundTooSmall, "bound " + std::to_string(f.bound) + " too small for the p^2 operator");
  CoeffView view(f);
  int chi_p = f.chi(p);
  int chi_p2 = chi_p * chi_p;
  unsigned k = static_cast<unsigned>(f.weight);
  BigInt pw_top = pow_int(BigInt(p), 2 * k - 3);
  BigInt pw_mid = pow_int(BigInt(p), k - 2);
  FourierExpansion out = map_window(f, new_bound, [&](const BinQF& key) {
    BigInt val = 0;
    for (const SublatticeStep& s : sublattices_1_p(key, p)) val += view.coeff(s.child);
    if (chi_p != 0) val += chi_p * pw_mid * alpha(key, p) * view.coeff(key);
    if (chi_p2 != 0) {
      BigInt super_sum = 0;
      for (const BinQF& s : superlattices_1overp_1(key, p)) super_sum += view.coeff(s);
      val += chi_p2 * pw_top * super_sum;
    }
    return val;
  });
  return HeckeOutcome{std::move(out), HeckeOp::T1Tilde, p};
}

HeckeOutcome apply_T1_p2(const FourierExpansion& f, Int p) {
  check_weight(f, 3);
  HeckeOutcome outcome = apply_T1tilde_p2(f, p);
  int chi_p = f.chi(p);
  if (chi_p != 0) {
    CoeffView view(f);
    BigInt shift = chi_p * pow_int(BigInt(p), static_cast<unsigned>(f.weight) - 3) * (p + 1);
    for (auto& [key, val] : outcome.out.coeffs) val -= shift * view.coeff(key);
  }
  outcome.op = HeckeOp::T1;
  return outcome;
}

HeckeOutcome apply_T2_p2_level(const FourierExpansion& f, Int p) {
  require_prime(p);
  if (f.level % p != 0)
    raise(ErrorCode::PNotDividingLevel, std::to_string(p) + " does not divide level " + std::to_string(f.level));
  HeckeOutcome first = apply_T_p(f, p);
  HeckeOutcome second = apply_T_p(first.out, p);
  return HeckeOutcome{std::move(second.out), HeckeOp::T2Level, p};
}

std::optional<BigRat> extract_eigenvalue(const FourierExpansion& f, const HeckeOutcome& outcome) {
  CoeffView in(f), out(outcome.out);
  std::vector<BinQF> window = window_classes(outcome.out.bound);
  const BinQF* pivot = nullptr;
  BigInt f_pivot, o_pivot;
  for (const BinQF& key : window) {
    BigInt v = in.coeff(key);
    if (v != 0) {
      pivot = &key;
      f_pivot = v;
      o_pivot = out.coeff(key);
      break;
    }
  }
  if (!pivot)
    raise(ErrorCode::AllCoefficientsZero, "input vanishes on the whole window; proportionality undecidable");
  for (const BinQF& key : window) {
    if (out.coeff(key) * f_pivot != in.coeff(key) * o_pivot) return std::nullopt;
  }
  BigRat rho(o_pivot, f_pivot);
  rho.canonicalize();
  return rho;
}

}  // namespace siegel
