#pragma once

#include "bcft/common.hpp"
#include "bcft/fusion_ring.hpp"

namespace bcft {

/// Modular S and T (diagonal, stored as phases) over a fusion ring.
class ModularData {
 public:
  ModularData() = default;
  ModularData(FusionRing ring, CMatrix S, CVector T);

  const FusionRing& ring() const { return ring_; }
  const CMatrix& S() const { return S_; }
  const CVector& T() const { return T_; }
  int rank() const { return ring_.rank(); }

  /// Conjugation permutation matrix C_{st} = delta_{t, dual(s)}.
  CMatrix conjugation() const;

 private:
  FusionRing ring_;
  CMatrix S_;
  CVector T_;
};

ValidationReport validate_modular(const ModularData& md,
                                  double tol = kDefaultTolerance);

/// Fusion rules recovered from S by the Verlinde formula. Throws
/// NumericError when the rounding residual exceeds tol.
FusionRing verlinde_fusion(const ModularData& md, double tol = kDefaultTolerance);

/// d_s = S_{0s} / S_{00}; throws InconsistencyError when these differ from
/// the Frobenius-Perron dimensions of the ring.
RVector quantum_dimensions(const ModularData& md, double tol = kDefaultTolerance);

}  // namespace bcft
