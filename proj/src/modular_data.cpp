#include "bcft/modular_data.hpp"

#include <cmath>

namespace bcft {

ModularData::ModularData(FusionRing ring, CMatrix S, CVector T)
    : ring_(std::move(ring)), S_(std::move(S)), T_(std::move(T)) {
  const int n = ring_.rank();
  if (S_.rows() != n || S_.cols() != n) {
    throw StructuralError("S matrix is " + std::to_string(S_.rows()) + "x" +
                          std::to_string(S_.cols()) + ", ring has rank " +
                          std::to_string(n));
  }
  if (T_.size() != n) {
    throw StructuralError("T has " + std::to_string(T_.size()) +
                          " phases, ring has rank " + std::to_string(n));
  }
}

CMatrix ModularData::conjugation() const {
  const int n = rank();
  CMatrix C = CMatrix::Zero(n, n);
  for (int s = 0; s < n; ++s) C(s, ring_.dual(s)) = 1.0;
  return C;
}

ValidationReport validate_modular(const ModularData& md, double tol) {
  ValidationReport report;
  const CMatrix& S = md.S();
  const int n = md.rank();

  const double sym = (S - S.transpose()).cwiseAbs().maxCoeff();
  if (sym > tol) report.add("S_symmetric", "|S - S^T| = " + std::to_string(sym));

  const double unit =
      (S * S.adjoint() - CMatrix::Identity(n, n)).cwiseAbs().maxCoeff();
  if (unit > tol) report.add("S_unitary", "|S S^+ - 1| = " + std::to_string(unit));

  for (int s = 0; s < n; ++s) {
    const cplx v = S(0, s);
    if (!(v.real() > tol) || std::abs(v.imag()) > tol) {
      report.add("S_vacuum_row_positive", "S_{0," + md.ring().label(s) + "} is not positive");
    }
  }

  const CMatrix C = md.conjugation();
  const CMatrix S2 = S * S;
  const double conj = (S2 - C).cwiseAbs().maxCoeff();
  if (conj > tol) report.add("S_squared", "|S^2 - C| = " + std::to_string(conj));

  for (int s = 0; s < n; ++s) {
    if (std::abs(std::abs(md.T()(s)) - 1.0) > tol) {
      report.add("T_phase", "T_" + md.ring().label(s) + " is not unit modulus");
    }
  }

  // (ST)^3 = S^2 up to a global phase, fixed by the (0,0) entries.
  const CMatrix ST = S * md.T().asDiagonal();
  CMatrix cube = ST * ST * ST;
  if (std::abs(cube(0, 0)) > tol && std::abs(S2(0, 0)) > tol) {
    cube *= S2(0, 0) / cube(0, 0);
    const double mod = (cube - S2).cwiseAbs().maxCoeff();
    if (mod > tol) {
      report.add("ST_cubed", "|(ST)^3 - S^2| after phase normalization = " +
                                 std::to_string(mod));
    }
  } else {
    report.add("ST_cubed", "(ST)^3 has vanishing (0,0) entry");
  }
  return report;
}

FusionRing verlinde_fusion(const ModularData& md, double tol) {
  const int n = md.rank();
  const CMatrix& S = md.S();
  std::vector<int> mult(static_cast<size_t>(n) * n * n, 0);
  for (int s = 0; s < n; ++s) {
    for (int t = 0; t < n; ++t) {
      for (int u = 0; u < n; ++u) {
        cplx v = 0;
        for (int r = 0; r < n; ++r) {
          v += S(s, r) * S(t, r) * std::conj(S(u, r)) / S(0, r);
        }
        const double rounded = std::round(v.real());
        if (std::abs(v - cplx(rounded, 0)) > tol || rounded < 0) {
          throw NumericError("S is not the S-matrix of an integer fusion ring "
                             "(Verlinde residual at " +
                             md.ring().label(s) + "," + md.ring().label(t) + "," +
                             md.ring().label(u) + ")");
        }
        mult[(static_cast<size_t>(s) * n + t) * n + u] = static_cast<int>(rounded);
      }
    }
  }
  // Conjugation from N^{st}_0.
  std::vector<Label> dual(n, 0);
  for (int s = 0; s < n; ++s) {
    for (int t = 0; t < n; ++t) {
      if (mult[(static_cast<size_t>(s) * n + t) * n] == 1) dual[s] = t;
    }
  }
  return FusionRing(md.ring().labels(), dual, std::move(mult));
}

RVector quantum_dimensions(const ModularData& md, double tol) {
  const int n = md.rank();
  RVector d(n);
  for (int s = 0; s < n; ++s) d(s) = (md.S()(0, s) / md.S()(0, 0)).real();
  const RVector fp = fp_dimensions(md.ring(), tol);
  const double diff = (d - fp).cwiseAbs().maxCoeff();
  if (diff > tol) {
    throw InconsistencyError("quantum dimensions from S differ from "
                             "Frobenius-Perron dimensions by " +
                             std::to_string(diff));
  }
  return d;
}

}  // namespace bcft
