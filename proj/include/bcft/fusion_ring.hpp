#pragma once

#include "bcft/common.hpp"

#include <string>
#include <vector>

namespace bcft {

/// Fusion ring of a rational theory: sector labels with integer fusion
/// multiplicities N^{st}_u. Index 0 is always the vacuum.
class FusionRing {
 public:
  FusionRing() = default;

  /// `mult` is indexed as mult[(s * n + t) * n + u] = N^{st}_u.
  /// Throws StructuralError on shape or range problems; axioms are not
  /// checked here (see validate_ring).
  FusionRing(std::vector<std::string> labels, std::vector<Label> dual,
             std::vector<int> mult);

  /// The one-sector ring {1}.
  static FusionRing trivial();

  int rank() const { return static_cast<int>(labels_.size()); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(Label s) const { return labels_.at(s); }
  Label dual(Label s) const { return dual_.at(s); }
  const std::vector<Label>& duals() const { return dual_; }

  int N(Label s, Label t, Label u) const {
    return mult_[(static_cast<size_t>(s) * rank() + t) * rank() + u];
  }
  void set_N(Label s, Label t, Label u, int value) {
    mult_[(static_cast<size_t>(s) * rank() + t) * rank() + u] = value;
  }
  const std::vector<int>& multiplicities() const { return mult_; }

  /// Label index by name; -1 if absent.
  Label find(const std::string& name) const;

  bool multiplicity_free() const;

  bool operator==(const FusionRing& other) const = default;

 private:
  std::vector<std::string> labels_;
  std::vector<Label> dual_;
  std::vector<int> mult_;
};

ValidationReport validate_ring(const FusionRing& ring);

/// (N^s)_{t,u} = N^{st}_u.
IMatrix fusion_matrix(const FusionRing& ring, Label s);

/// Frobenius-Perron dimensions, d_0 = 1.
RVector fp_dimensions(const FusionRing& ring, double tol = kDefaultTolerance);

/// mu = sum_s d_s^2.
double global_dimension(const FusionRing& ring,
                        double tol = kDefaultTolerance);

/// Multiplicity vector of a tensor product of objects given by multiplicity
/// vectors: (a * b)_u = sum_{s,t} a_s b_t N^{st}_u.
std::vector<long long> fuse(const FusionRing& ring,
                            const std::vector<long long>& a,
                            const std::vector<long long>& b);

}  // namespace bcft
