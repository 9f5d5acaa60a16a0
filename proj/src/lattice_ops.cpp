#include "siegel/lattice_ops.hpp"

namespace siegel {

void require_prime(Int p) {
  if (!is_prime(p)) raise(ErrorCode::CompositeP, std::to_string(p) + " is not prime");
}

std::vector<SublatticeStep> sublattices_1_p(const BinQF& t, Int p) {
  require_prime(p);
  if (!t.positive_definite()) raise(ErrorCode::NotPositiveDefinite, "sublattices_1_p");
  std::vector<SublatticeStep> out;
  out.reserve(static_cast<size_t>(p) + 1);
  for (Int u = 0; u < p; ++u) {
    Mat2 h{{{1, 0}, {u, p}}};
    out.push_back(SublatticeStep{t, h, transform(t, h), u});
  }
  Mat2 hinf{{{p, 0}, {0, 1}}};
  out.push_back(SublatticeStep{t, hinf, transform(t, hinf), SublatticeStep::kInfinityTag});
  return out;
}

std::vector<BinQF> superlattices_1overp_1(const BinQF& t, Int p) {
  std::vector<BinQF> out;
  for (const SublatticeStep& s : sublattices_1_p(t, p)) {
    if (auto up = scale(s.child, 1, p * p)) out.push_back(*up);
  }
  return out;
}

std::optional<BinQF> scale(const BinQF& t, Int num, Int den) {
  if (num <= 0 || den <= 0) raise(ErrorCode::InvalidInput, "scale factors must be positive");
  BinQF s{t.a * num, t.b * num, t.c * num};
  if (s.a % den != 0 || s.b % den != 0 || s.c % den != 0) return std::nullopt;
  return BinQF{s.a / den, s.b / den, s.c / den};
}

Int alpha(const BinQF& t, Int p) {
  require_prime(p);
  auto md = [p](Int x) { return ((x % p) + p) % p; };
  Int count = 0;
  for (Int u = 0; u < p; ++u)
    if (md(t.a + t.b * u + t.c * u * u) == 0) ++count;  // line through (1, u)
  if (md(t.c) == 0) ++count;                            // line through (0, 1)
  return count;
}

}  // namespace siegel
