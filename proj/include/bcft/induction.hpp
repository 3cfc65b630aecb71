#pragma once

#include "bcft/category.hpp"
#include "bcft/classify.hpp"
#include "bcft/qsystem.hpp"

#include <map>
#include <vector>

namespace bcft {

/// Which statistics operator enters the exchange operator: plus uses
/// eps^+ in both slots, minus uses eps^-.
enum class Handedness { plus, minus };

/// c = (id_sigma (x) eps(theta, tau-bar)) o (eps(sigma, theta)^dagger (x) id_tau-bar),
/// a unitary theta sigma tau-bar -> sigma tau-bar theta.
Morphism exchange_operator(const CategoryPresentation& cat, const QSystemSpec& q,
                           Label sigma, Label tau, Handedness h = Handedness::plus);

/// The fields of the extension inside Hom(theta, theta sigma tau-bar):
/// (id_theta (x) n) o x for n running over the hom basis of
/// Hom(theta, sigma tau-bar).
std::vector<Morphism> field_ansatz(const CategoryPresentation& cat, const QSystemSpec& q,
                                   Label sigma, Label tau);

struct KernelProblem {
  /// Matrix of phi -> (phi (x) id) x - (id (x) c)(x (x) id) phi, one column
  /// per element of field_ansatz.
  CMatrix L;
  RVector singular_values;
  int kernel_dim = 0;
  /// Smallest kept over largest discarded singular value; +inf when one of
  /// the two sets is empty.
  double gap_ratio = 0;
  /// Orthonormal kernel basis (columns) in field_ansatz coordinates.
  CMatrix kernel;
};

/// Builds and solves the linear problem for one (sigma, tau). Singular
/// values below 1e-7 * max(1, largest) count as zero; NumericError when the gap ratio is
/// below 1e3.
KernelProblem solve_kernel(const CategoryPresentation& cat, const QSystemSpec& q,
                           Label sigma, Label tau, Handedness h = Handedness::plus);

struct CouplingMatrix {
  IMatrix Z;
  /// Minimum finite gap ratio over the grid (+inf if none).
  double min_gap_ratio = 0;
};

/// Z_{sigma tau} = dim ker L. Validates q first (ValidationError on
/// failure); the grid of kernel problems runs on `threads` workers.
CouplingMatrix coupling_from_qsystem(const CategoryPresentation& cat, const QSystemSpec& q,
                                     Handedness h = Handedness::plus, int threads = 1,
                                     double tol = kDefaultTolerance);

struct BoundaryFieldBasis {
  Label sigma = 0;
  Label tau = 0;
  /// phi_i with phi_i^dagger phi_j = d(sigma) d(tau) delta_ij id_theta.
  std::vector<Morphism> fields;
  /// Coefficients phi^p_{q,i}(t) keyed (i, p, q, t): source summand p,
  /// target summand q, intermediate channel t of the left-bracketed tree
  /// (theta_q sigma)_t tau-bar -> rho_p.
  std::map<std::array<int, 4>, cplx> coefficients;
  /// Orthogonal projector onto the kernel (field_ansatz coordinates).
  CMatrix projector;
  double normalization_residual = 0;
  double projector_residual = 0;
};

BoundaryFieldBasis charged_field_basis(const CategoryPresentation& cat, const QSystemSpec& q,
                                       Label sigma, Label tau,
                                       Handedness h = Handedness::plus,
                                       double tol = kDefaultTolerance);

struct ThetaPlus {
  /// m_u = sum Z_{sigma tau} N^{sigma dual(tau)}_u.
  std::vector<long long> multiplicities;
  /// sum Z_{sigma tau} d_sigma d_tau.
  double dimension = 0;
};

ThetaPlus theta_plus(const FusionRing& ring, const IMatrix& Z, double tol = kDefaultTolerance);

struct IndexLedger {
  double lambda = 0;
  double lambda_plus = 0;
  double mu_A = 0;
  double dual_index = 0;
  double mu_B_plus = 0;
  bool haag_dual = false;
};

IndexLedger index_ledger(const FusionRing& ring, const QSystemSpec& q, const IMatrix& Z,
                         double tol = kDefaultTolerance);

/// theta_a with (theta_a)_s = n^s_{aa}, one per boundary label. Throws
/// InconsistencyError for an incompatible (Z, nimrep) pair or when some
/// theta_a breaks n_0 = 1 or n_s <= d_s.
std::vector<std::vector<int>> dhr_orbit_thetas(const ModularData& md, const IMatrix& Z,
                                               const Nimrep& nimrep,
                                               double tol = kDefaultTolerance);

}  // namespace bcft
