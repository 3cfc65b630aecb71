#include "bcft/classify.hpp"

#include <cmath>
#include <numbers>

namespace bcft {

CardySolution cardy_solve(const Nimrep& nimrep, const ModularData& md, double tol) {
  const int m = nimrep.size;
  const int r = md.rank();
  if (static_cast<int>(nimrep.n.size()) != r) {
    throw StructuralError("nimrep and modular data have different ranks");
  }
  const CMatrix& S = md.S();

  // A generic Hermitian combination separates distinct joint eigenvalues.
  CMatrix H = CMatrix::Zero(m, m);
  for (int s = 1; s < r; ++s) {
    const cplx alpha = std::polar(1.0 + 0.1 * std::sqrt(2.0 + s), std::sqrt(3.0) * s);
    const CMatrix n = nimrep.n[s].cast<double>().cast<cplx>();
    H += alpha * n + std::conj(alpha) * n.transpose();
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> es(H);
  const CMatrix V = es.eigenvectors();

  std::vector<std::pair<Label, int>> matched;  // (exponent, eigenvector)
  for (int k = 0; k < m; ++k) {
    const CVector v = V.col(k);
    CVector tuple(r);
    for (int s = 0; s < r; ++s) {
      const CMatrix n = nimrep.n[s].cast<double>().cast<cplx>();
      tuple(s) = v.dot(n * v);
      if ((n * v - tuple(s) * v).norm() > 1e3 * tol) {
        throw NumericError("generic combination failed to diagonalize the nimrep");
      }
    }
    Label hit = -1;
    for (Label t = 0; t < r && hit < 0; ++t) {
      double dev = 0;
      for (int s = 0; s < r; ++s) dev = std::max(dev, std::abs(tuple(s) - S(s, t) / S(0, t)));
      if (dev < 1e3 * tol) hit = t;
    }
    if (hit < 0) throw ValidationError("nimrep has no modular spectrum");
    matched.emplace_back(hit, k);
  }
  std::stable_sort(matched.begin(), matched.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });

  CardySolution sol;
  sol.psi = CMatrix(m, m);
  for (int k = 0; k < m; ++k) {
    CVector v = V.col(matched[k].second);
    // Phase: largest-modulus entry (first one on ties) real positive.
    int arg = 0;
    for (int a = 1; a < m; ++a)
      if (std::abs(v(a)) > std::abs(v(arg)) + 1e-9) arg = a;
    v *= std::conj(v(arg)) / std::abs(v(arg));
    sol.psi.col(k) = v;
    sol.exponents.push_back(matched[k].first);
  }

  for (int s = 0; s < r; ++s) {
    CMatrix rebuilt = CMatrix::Zero(m, m);
    for (int k = 0; k < m; ++k) {
      const Label t = sol.exponents[k];
      rebuilt += (S(s, t) / S(0, t)) * sol.psi.col(k) * sol.psi.col(k).adjoint();
    }
    sol.residual = std::max(
        sol.residual, (rebuilt - nimrep.n[s].cast<double>().cast<cplx>()).cwiseAbs().maxCoeff());
  }
  return sol;
}

Compatibility compatibility(const IMatrix& Z, const Nimrep& nimrep, const ModularData& md,
                            double tol) {
  Compatibility out;
  const int r = md.rank();
  out.multiplicity.assign(r, 0);
  if (Z.rows() != r || Z.cols() != r) throw StructuralError("Z has the wrong shape");
  CardySolution sol;
  try {
    sol = cardy_solve(nimrep, md, tol);
  } catch (const ValidationError& e) {
    out.reason = e.what();
    return out;
  }
  for (Label t : sol.exponents) ++out.multiplicity[t];
  out.compatible = true;
  for (Label t = 0; t < r; ++t) {
    if (out.multiplicity[t] != Z(t, t)) {
      out.compatible = false;
      out.reason = "exponent " + md.ring().label(t) + " occurs " +
                   std::to_string(out.multiplicity[t]) + " times, Z_tt = " +
                   std::to_string(Z(t, t));
      break;
    }
  }
  return out;
}

}  // namespace bcft
