#pragma once

#include "bcft/catalog.hpp"

#include <random>

namespace mutation {

using namespace bcft;

/// Rebuilds the category file contents from parts; anything the loader or a
/// validator rejects counts as detected.
inline bool detected(const CategoryData& original, const FusionRing& ring,
                     const std::map<FKey, cplx>& F, const std::map<RKey, cplx>& R) {
  try {
    CategoryData m{ring, ModularData(ring, original.modular.S(), original.modular.T()),
                   CategoryPresentation(ring, F, R), original.central_charge};
    return !validate_category(m).ok();
  } catch (const StructuralError&) {
    return true;
  } catch (const ValidationError&) {
    return true;
  }
}

/// Moves one N^{st}_u by +-1, staying non-negative.
inline FusionRing mutate_ring(const FusionRing& ring, std::mt19937_64& rng) {
  const int n = ring.rank();
  std::uniform_int_distribution<int> pick(0, n - 1);
  FusionRing out = ring;
  const Label s = pick(rng), t = pick(rng), u = pick(rng);
  const int old = ring.N(s, t, u);
  const int step = old == 0 || (rng() & 1) ? 1 : -1;
  out.set_N(s, t, u, old + step);
  return out;
}

/// Adds a random complex shift with modulus in [0.1, 1] to one F entry.
inline std::map<FKey, cplx> mutate_f(const std::map<FKey, cplx>& F, std::mt19937_64& rng) {
  std::uniform_int_distribution<size_t> pick(0, F.size() - 1);
  std::uniform_real_distribution<double> mod(0.1, 1.0), arg(0, 6.283185307179586);
  auto out = F;
  auto it = std::next(out.begin(), static_cast<long>(pick(rng)));
  it->second += std::polar(mod(rng), arg(rng));
  return out;
}

}  // namespace mutation
