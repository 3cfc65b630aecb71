#pragma once

#include "bcft/category.hpp"
#include "bcft/modular_data.hpp"

#include <optional>
#include <string>

namespace bcft {

/// Everything a category file can carry: fusion ring, modular data and
/// optionally F/R symbols and the central charge.
struct CategoryData {
  FusionRing ring;
  ModularData modular;
  std::optional<CategoryPresentation> presentation;
  std::optional<double> central_charge;
};

/// Ring, modular data, Verlinde consistency, quantum versus Frobenius-Perron
/// dimensions and, when present, the F/R axioms and the presentation's ring.
ValidationReport validate_category(const CategoryData& data, double tol = kDefaultTolerance);

namespace catalog {

/// One sector, S = T = [1], F = R = 1.
CategoryData trivial();

/// Ising: sectors 0, 1/16, 1/2 with c = 1/2.
CategoryData ising();
/// Fibonacci: sectors 1, tau with c = 14/5.
CategoryData fibonacci();
/// SU(2) at level k >= 1; sector index = twice the spin.
CategoryData su2(int level);

/// By name: "ising", "fibonacci" or "su2" (level required).
CategoryData by_name(const std::string& name, std::optional<int> level);

}  // namespace catalog
}  // namespace bcft
