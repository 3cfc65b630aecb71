#include "bcft/fusion_ring.hpp"

#include <cmath>
#include <sstream>

namespace bcft {

FusionRing::FusionRing(std::vector<std::string> labels, std::vector<Label> dual,
                       std::vector<int> mult)
    : labels_(std::move(labels)), dual_(std::move(dual)), mult_(std::move(mult)) {
  const size_t n = labels_.size();
  if (n == 0) throw StructuralError("fusion ring needs at least the vacuum");
  if (dual_.size() != n) {
    throw StructuralError("dual has " + std::to_string(dual_.size()) +
                          " entries, expected " + std::to_string(n));
  }
  if (mult_.size() != n * n * n) {
    throw StructuralError("multiplicity tensor has " +
                          std::to_string(mult_.size()) + " entries, expected " +
                          std::to_string(n * n * n));
  }
  for (Label d : dual_) {
    if (d < 0 || static_cast<size_t>(d) >= n) {
      throw StructuralError("dual index " + std::to_string(d) + " out of range");
    }
  }
  for (int m : mult_) {
    if (m < 0) throw StructuralError("negative fusion multiplicity");
  }
}

FusionRing FusionRing::trivial() { return FusionRing({"1"}, {0}, {1}); }

Label FusionRing::find(const std::string& name) const {
  for (int i = 0; i < rank(); ++i) {
    if (labels_[i] == name) return i;
  }
  return -1;
}

bool FusionRing::multiplicity_free() const {
  for (int m : mult_) {
    if (m > 1) return false;
  }
  return true;
}

ValidationReport validate_ring(const FusionRing& ring) {
  ValidationReport report;
  const int n = ring.rank();
  auto name = [&](Label s) { return ring.label(s); };

  for (int t = 0; t < n; ++t) {
    for (int u = 0; u < n; ++u) {
      const int expect = t == u ? 1 : 0;
      if (ring.N(0, t, u) != expect) {
        report.add("left_unit", "N^{0," + name(t) + "}_" + name(u) + " = " +
                                    std::to_string(ring.N(0, t, u)));
      }
      if (ring.N(t, 0, u) != expect) {
        report.add("right_unit", "N^{" + name(t) + ",0}_" + name(u) + " = " +
                                     std::to_string(ring.N(t, 0, u)));
      }
    }
  }

  if (ring.dual(0) != 0) report.add("dual_vacuum", "dual(0) != 0");
  for (int s = 0; s < n; ++s) {
    if (ring.dual(ring.dual(s)) != s) {
      report.add("dual_involution", "dual(dual(" + name(s) + ")) != " + name(s));
    }
    for (int t = 0; t < n; ++t) {
      const int expect = t == ring.dual(s) ? 1 : 0;
      if (ring.N(s, t, 0) != expect) {
        report.add("conjugation", "N^{" + name(s) + "," + name(t) + "}_0 = " +
                                      std::to_string(ring.N(s, t, 0)));
      }
    }
  }

  for (int s = 0; s < n; ++s) {
    for (int t = 0; t < n; ++t) {
      for (int u = 0; u < n; ++u) {
        const int v = ring.N(s, t, u);
        if (v != ring.N(ring.dual(s), u, t) ||
            v != ring.N(u, ring.dual(t), s)) {
          report.add("reciprocity", "N^{" + name(s) + "," + name(t) + "}_" +
                                        name(u) + " breaks Frobenius reciprocity");
        }
      }
    }
  }

  for (int s = 0; s < n; ++s) {
    for (int t = 0; t < n; ++t) {
      for (int u = 0; u < n; ++u) {
        for (int f = 0; f < n; ++f) {
          long long lhs = 0, rhs = 0;
          for (int e = 0; e < n; ++e) {
            lhs += static_cast<long long>(ring.N(s, t, e)) * ring.N(e, u, f);
            rhs += static_cast<long long>(ring.N(t, u, e)) * ring.N(s, e, f);
          }
          if (lhs != rhs) {
            report.add("associativity", "(" + name(s) + "," + name(t) + "," +
                                            name(u) + ") -> " + name(f) + ": " +
                                            std::to_string(lhs) + " vs " +
                                            std::to_string(rhs));
          }
        }
      }
    }
  }
  return report;
}

IMatrix fusion_matrix(const FusionRing& ring, Label s) {
  const int n = ring.rank();
  if (s < 0 || s >= n) throw StructuralError("sector index out of range");
  IMatrix m(n, n);
  for (int t = 0; t < n; ++t) {
    for (int u = 0; u < n; ++u) m(t, u) = ring.N(s, t, u);
  }
  return m;
}

RVector fp_dimensions(const FusionRing& ring, double tol) {
  // The sum of all fusion matrices has strictly positive entries for a valid
  // ring, so power iteration converges to the Perron vector.
  const int n = ring.rank();
  RMatrix total = RMatrix::Zero(n, n);
  for (int s = 0; s < n; ++s) total += fusion_matrix(ring, s).cast<double>();

  RVector v = RVector::Ones(n);
  for (int iter = 0; iter < 100000; ++iter) {
    RVector next = total * v;
    next /= next(0);
    const bool done =
        (next - v).cwiseAbs().maxCoeff() < 1e-14 * next.cwiseAbs().maxCoeff();
    v = next;
    if (done) break;
  }

  // Residual check of d_s d_t = sum_u N^{st}_u d_u.
  for (int s = 0; s < n; ++s) {
    for (int t = 0; t < n; ++t) {
      double rhs = 0;
      for (int u = 0; u < n; ++u) rhs += ring.N(s, t, u) * v(u);
      if (std::abs(v(s) * v(t) - rhs) > tol * std::max(1.0, rhs)) {
        throw NumericError(
            "Frobenius-Perron iteration did not converge to a common "
            "eigenvector (invalid ring?)");
      }
    }
  }
  return v;
}

double global_dimension(const FusionRing& ring, double tol) {
  return fp_dimensions(ring, tol).squaredNorm();
}

std::vector<long long> fuse(const FusionRing& ring, const std::vector<long long>& a,
                            const std::vector<long long>& b) {
  const int n = ring.rank();
  std::vector<long long> out(n, 0);
  for (int s = 0; s < n; ++s) {
    if (a[s] == 0) continue;
    for (int t = 0; t < n; ++t) {
      if (b[t] == 0) continue;
      for (int u = 0; u < n; ++u) out[u] += a[s] * b[t] * ring.N(s, t, u);
    }
  }
  return out;
}

}  // namespace bcft
