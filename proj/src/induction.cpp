#include "bcft/induction.hpp"
#include "bcft/parallel.hpp"

#include <cmath>
#include <limits>

namespace bcft {

namespace {

Orientation orientation_of(Handedness h) {
  return h == Handedness::plus ? Orientation::plus : Orientation::minus;
}

}  // namespace

Morphism exchange_operator(const CategoryPresentation& cat, const QSystemSpec& q,
                           Label sigma, Label tau, Handedness h) {
  const ObjectWord th = q.word();
  const ObjectWord s = ObjectWord::simple(sigma);
  const ObjectWord tb = ObjectWord::simple(cat.ring().dual(tau));
  const Orientation o = orientation_of(h);
  const Morphism first = cat.tensor_id_right(dagger(cat.braiding(s, th, o)), tb);
  const Morphism second = cat.tensor_id_left(s, cat.braiding(th, tb, o));
  return compose(second, first);
}

std::vector<Morphism> field_ansatz(const CategoryPresentation& cat, const QSystemSpec& q,
                                   Label sigma, Label tau) {
  const ObjectWord th = q.word();
  const ObjectWord st = ObjectWord::simple(sigma) * ObjectWord::simple(cat.ring().dual(tau));
  const Morphism x = assemble_x(q, cat, std::numeric_limits<double>::infinity());
  const HomBasis hb = cat.hom_basis(th, st);
  std::vector<Morphism> out;
  for (const auto& el : hb.elements) {
    out.push_back(compose(cat.tensor_id_left(th, cat.basis_morphism(th, st, el)), x));
  }
  return out;
}

KernelProblem solve_kernel(const CategoryPresentation& cat, const QSystemSpec& q,
                           Label sigma, Label tau, Handedness h) {
  const ObjectWord th = q.word();
  const ObjectWord st = ObjectWord::simple(sigma) * ObjectWord::simple(cat.ring().dual(tau));
  const Morphism x = assemble_x(q, cat, std::numeric_limits<double>::infinity());
  const Morphism c = exchange_operator(cat, q, sigma, tau, h);
  const Morphism B = compose(cat.tensor_id_left(th, c), cat.tensor_id_right(x, st));

  const std::vector<Morphism> ansatz = field_ansatz(cat, q, sigma, tau);
  KernelProblem kp;
  const int cols = static_cast<int>(ansatz.size());
  for (int j = 0; j < cols; ++j) {
    const Morphism& E = ansatz[j];
    const CVector v = (compose(cat.tensor_id_right(E, th), x) - compose(B, E)).flatten();
    if (j == 0) kp.L.resize(v.size(), cols);
    kp.L.col(j) = v;
  }
  kp.gap_ratio = std::numeric_limits<double>::infinity();
  if (cols == 0) {
    kp.kernel = CMatrix(0, 0);
    return kp;
  }

  Eigen::JacobiSVD<CMatrix> svd(kp.L, Eigen::ComputeFullV);
  kp.singular_values = svd.singularValues();
  // L has entries of order one, so a numerically vanishing L has no rank.
  const double smax =
      std::max(1.0, kp.singular_values.size() ? kp.singular_values.maxCoeff() : 0.0);
  int rank = 0;
  double kept_min = std::numeric_limits<double>::infinity(), dropped_max = 0;
  for (int i = 0; i < kp.singular_values.size(); ++i) {
    const double s = kp.singular_values(i);
    if (s >= 1e-7 * smax) {
      ++rank;
      kept_min = std::min(kept_min, s);
    } else {
      dropped_max = std::max(dropped_max, s);
    }
  }
  if (rank > 0 && dropped_max > 0) kp.gap_ratio = kept_min / dropped_max;
  if (kp.gap_ratio < 1e3) {
    throw NumericError("no clear singular-value gap for (" + cat.ring().label(sigma) + "," +
                       cat.ring().label(tau) + "): ratio " + std::to_string(kp.gap_ratio));
  }
  kp.kernel_dim = cols - rank;
  kp.kernel = svd.matrixV().rightCols(kp.kernel_dim);
  return kp;
}

CouplingMatrix coupling_from_qsystem(const CategoryPresentation& cat, const QSystemSpec& q,
                                     Handedness h, int threads, double tol) {
  const QSystemCheck check = validate_qsystem(q, cat, tol);
  if (!check.ok()) {
    throw ValidationError("Q-system is invalid: " + check.report.violations.front().message);
  }
  const int n = cat.rank();
  std::vector<KernelProblem> grid(static_cast<size_t>(n) * n);
  parallel_for(n * n, threads, [&](int i) { grid[i] = solve_kernel(cat, q, i / n, i % n, h); });

  CouplingMatrix out;
  out.Z = IMatrix::Zero(n, n);
  out.min_gap_ratio = std::numeric_limits<double>::infinity();
  for (int i = 0; i < n * n; ++i) {
    out.Z(i / n, i % n) = grid[i].kernel_dim;
    out.min_gap_ratio = std::min(out.min_gap_ratio, grid[i].gap_ratio);
  }
  if (out.Z(0, 0) != 1) {
    throw InconsistencyError("vacuum kernel has dimension " + std::to_string(out.Z(0, 0)) +
                             "; the Q-system is not irreducible");
  }
  return out;
}

BoundaryFieldBasis charged_field_basis(const CategoryPresentation& cat, const QSystemSpec& q,
                                       Label sigma, Label tau, Handedness h, double tol) {
  BoundaryFieldBasis out;
  out.sigma = sigma;
  out.tau = tau;
  const KernelProblem kp = solve_kernel(cat, q, sigma, tau, h);
  const int cols = static_cast<int>(kp.L.cols());
  out.projector = kp.kernel_dim ? CMatrix(kp.kernel * kp.kernel.adjoint())
                                : CMatrix(CMatrix::Zero(cols, cols));
  out.projector_residual =
      cols ? (out.projector * out.projector - out.projector).cwiseAbs().maxCoeff() : 0.0;
  if (kp.kernel_dim == 0) return out;

  const ObjectWord th = q.word();
  const Label tau_bar = cat.ring().dual(tau);
  const ObjectWord target = th * ObjectWord::simple(sigma) * ObjectWord::simple(tau_bar);
  const std::vector<Morphism> ansatz = field_ansatz(cat, q, sigma, tau);
  std::vector<Morphism> raw;
  for (int i = 0; i < kp.kernel_dim; ++i) {
    Morphism phi = cat.zero(th, target);
    for (int j = 0; j < cols; ++j) phi += kp.kernel(j, i) * ansatz[j];
    raw.push_back(std::move(phi));
  }

  // Inner product from the vacuum-to-vacuum component of phi_i^dagger phi_j.
  CMatrix G(kp.kernel_dim, kp.kernel_dim);
  for (int i = 0; i < kp.kernel_dim; ++i)
    for (int j = 0; j < kp.kernel_dim; ++j) G(i, j) = compose(dagger(raw[i]), raw[j]).block(0)(0, 0);
  Eigen::SelfAdjointEigenSolver<CMatrix> es(G);
  if (es.eigenvalues().minCoeff() <= tol) {
    throw InconsistencyError("kernel solutions vanish on the vacuum summand");
  }
  const double norm = std::sqrt(cat.dim(sigma) * cat.dim(tau));
  for (int k = 0; k < kp.kernel_dim; ++k) {
    Morphism phi = cat.zero(th, target);
    for (int i = 0; i < kp.kernel_dim; ++i) {
      phi += (norm * es.eigenvectors()(i, k) / std::sqrt(es.eigenvalues()(k))) * raw[i];
    }
    out.fields.push_back(std::move(phi));
  }

  const Morphism id = cat.identity(th);
  for (int i = 0; i < kp.kernel_dim; ++i)
    for (int j = 0; j < kp.kernel_dim; ++j) {
      Morphism expected = cat.zero(th, th);
      if (i == j) expected = (norm * norm) * id;
      out.normalization_residual =
          std::max(out.normalization_residual,
                   distance(compose(dagger(out.fields[i]), out.fields[j]), expected));
    }

  const auto sec = q.summand_sectors();
  const TreeBasis& src = cat.basis(th);
  const TreeBasis& tgt = cat.basis(target);
  const int m = static_cast<int>(sec.size());
  for (int i = 0; i < kp.kernel_dim; ++i)
    for (int p = 0; p < m; ++p)
      for (int qq = 0; qq < m; ++qq)
        for (Label t = 0; t < cat.rank(); ++t) {
          const int row = tgt.find(sec[p], FusionTree{{qq, 0, 0}, {sec[qq], t, sec[p]}});
          if (row < 0) continue;
          const int col = src.find(sec[p], FusionTree{{p}, {sec[p]}});
          const cplx v = out.fields[i].block(sec[p])(row, col);
          if (std::abs(v) > 1e-12) out.coefficients[{i, p, qq, t}] = v;
        }
  return out;
}

ThetaPlus theta_plus(const FusionRing& ring, const IMatrix& Z, double tol) {
  const int n = ring.rank();
  if (Z.rows() != n || Z.cols() != n) throw StructuralError("Z has the wrong shape");
  const RVector d = fp_dimensions(ring, tol);
  ThetaPlus out;
  out.multiplicities.assign(n, 0);
  for (int s = 0; s < n; ++s)
    for (int t = 0; t < n; ++t) {
      out.dimension += static_cast<double>(Z(s, t)) * d(s) * d(t);
      for (int u = 0; u < n; ++u) out.multiplicities[u] += Z(s, t) * ring.N(s, ring.dual(t), u);
    }
  double check = 0;
  for (int u = 0; u < n; ++u) check += static_cast<double>(out.multiplicities[u]) * d(u);
  if (std::abs(check - out.dimension) > tol * std::max(1.0, out.dimension)) {
    throw InconsistencyError("d(Theta+) disagrees with its decomposition");
  }
  return out;
}

IndexLedger index_ledger(const FusionRing& ring, const QSystemSpec& q, const IMatrix& Z,
                         double tol) {
  const RVector d = fp_dimensions(ring, tol);
  IndexLedger led;
  for (int s = 0; s < ring.rank(); ++s) led.lambda += q.theta.at(s) * d(s);
  led.lambda_plus = theta_plus(ring, Z, tol).dimension;
  led.mu_A = d.squaredNorm();
  led.dual_index = led.mu_A / led.lambda_plus;
  led.mu_B_plus = led.dual_index * led.dual_index * led.dual_index;
  led.haag_dual = std::abs(led.dual_index - 1.0) < tol;
  return led;
}

std::vector<std::vector<int>> dhr_orbit_thetas(const ModularData& md, const IMatrix& Z,
                                               const Nimrep& nimrep, double tol) {
  const Compatibility comp = compatibility(Z, nimrep, md, tol);
  if (!comp.compatible) {
    throw InconsistencyError("coupling matrix and nimrep are incompatible: " + comp.reason);
  }
  const RVector d = fp_dimensions(md.ring(), tol);
  std::vector<std::vector<int>> out;
  for (int a = 0; a < nimrep.size; ++a) {
    std::vector<int> theta(md.rank());
    for (int s = 0; s < md.rank(); ++s) {
      theta[s] = static_cast<int>(nimrep.n[s](a, a));
      if (theta[s] > std::floor(d(s) + tol)) {
        throw InconsistencyError("boundary " + std::to_string(a) + ": multiplicity of " +
                                 md.ring().label(s) + " exceeds its dimension");
      }
    }
    if (theta[0] != 1) {
      throw InconsistencyError("boundary " + std::to_string(a) + " has vacuum multiplicity " +
                               std::to_string(theta[0]));
    }
    out.push_back(std::move(theta));
  }
  return out;
}

}  // namespace bcft
