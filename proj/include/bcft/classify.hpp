#pragma once

#include "bcft/fusion_ring.hpp"
#include "bcft/modular_data.hpp"

#include <optional>
#include <vector>

namespace bcft {

/// Non-negative integer matrix representation of a fusion ring on `size`
/// boundary labels: n[s] is the matrix of sector s.
struct Nimrep {
  int size = 0;
  std::vector<IMatrix> n;

  bool operator==(const Nimrep& other) const;
};

/// n^0 = 1, n^{dual(s)} = (n^s)^T, n^s n^t = sum_u N^{st}_u n^u, entries >= 0.
ValidationReport validate_nimrep(const FusionRing& ring, const Nimrep& nimrep);

/// n^s = fusion_matrix(ring, s).
Nimrep regular_nimrep(const FusionRing& ring);

struct EnumerationOptions {
  /// Overrides the default entry bound floor(d_s d_t + tol) (invariants)
  /// or floor(d_s + tol) (nimreps).
  std::optional<long long> max_entry;
  int threads = 1;
  double tolerance = kDefaultTolerance;
};

/// All Z >= 0 integer with Z_00 = 1, ZS = SZ and ZT = TZ within the entry
/// bounds, in lexicographic (row-major) order. Throws NumericError when the
/// commutant basis cannot be separated from numerical noise.
std::vector<IMatrix> enumerate_modular_invariants(const ModularData& md,
                                                  const EnumerationOptions& options = {});

/// Max |ZS - SZ|, |ZT - TZ|.
double invariant_residual(const ModularData& md, const IMatrix& Z);

/// All nimreps of the given size up to simultaneous relabeling of the
/// boundary labels, one canonical representative each, sorted. Reducible
/// nimreps are included.
std::vector<Nimrep> enumerate_nimreps(const FusionRing& ring, int size,
                                      const EnumerationOptions& options = {});

/// Representative of the relabeling orbit: the simultaneous permutation
/// that minimizes the entry sequence ordered by (max(a,b), a, b), sector by
/// sector.
Nimrep canonical_form(const Nimrep& nimrep);

struct CardySolution {
  /// psi(a, k): boundary label a, eigenvector k.
  CMatrix psi;
  /// Column t of S matched by eigenvector k (sorted ascending).
  std::vector<Label> exponents;
  /// max_s,a,b |n^s_ab - sum_k psi_ak S_{s t_k} / S_{0 t_k} conj(psi_bk)|.
  double residual = 0;
};

/// Joint unitary diagonalization of the nimrep. Throws ValidationError when
/// some joint eigenvalue tuple is not a column ratio S_{st}/S_{0t}.
CardySolution cardy_solve(const Nimrep& nimrep, const ModularData& md,
                          double tol = kDefaultTolerance);

struct Compatibility {
  bool compatible = false;
  /// multiplicity[t] = number of joint eigenvectors with exponent t.
  std::vector<int> multiplicity;
  std::string reason;
};

/// Exponent multiplicities against the diagonal of Z.
Compatibility compatibility(const IMatrix& Z, const Nimrep& nimrep, const ModularData& md,
                            double tol = kDefaultTolerance);

}  // namespace bcft
