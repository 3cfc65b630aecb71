#pragma once

#include "bcft/category.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace bcft {

/// Summand indices (p, q, r) of theta: lambda^r_{pq} is the coefficient of
/// the vertex r -> p q inside x. The fusion channel index is implicit since
/// presentations are multiplicity-free.
using LambdaKey = std::array<int, 3>;

/// A Q-system (theta, w, x) in coefficient form. theta = sum_s n_s rho_s with
/// summands laid out in sector order (Factor::from_multiplicities), so the
/// vacuum summand is index 0. The unit w is the inclusion of summand 0.
struct QSystemSpec {
  std::vector<int> theta;
  std::map<LambdaKey, cplx> lambda;

  Factor factor() const { return Factor::from_multiplicities(theta); }
  ObjectWord word() const { return ObjectWord::of_factor(factor()); }
  /// Sector of each summand.
  std::vector<Label> summand_sectors() const { return factor().summands; }
  /// d(theta) = sum_s n_s d_s.
  double dimension(const CategoryPresentation& cat) const;
};

/// x : theta -> theta theta. Throws StructuralError for coefficients on
/// non-admissible vertices or out-of-range summands, ValidationError when
/// x is not an isometry within tol.
Morphism assemble_x(const QSystemSpec& q, const CategoryPresentation& cat,
                    double tol = kDefaultTolerance);
/// w : 1 -> theta.
Morphism unit_morphism(const QSystemSpec& q, const CategoryPresentation& cat);
/// Coefficients of an arbitrary x : theta -> theta theta in the tree basis.
std::map<LambdaKey, cplx> extract_lambda(const QSystemSpec& shape, const Morphism& x,
                                         const CategoryPresentation& cat,
                                         double drop_below = 0.0);

struct QSystemCheck {
  double isometry = 0;
  double unit_left = 0;
  double unit_right = 0;
  double associativity = 0;
  ValidationReport report;
  bool ok() const { return report.ok(); }
};

/// Vacuum multiplicity one, the bound n_s <= d_s, isometry, both unit laws
/// (w* (x) id) x = (id (x) w*) x = d(theta)^{-1/2} id and associativity
/// (x (x) id) x = (id (x) x) x.
QSystemCheck validate_qsystem(const QSystemSpec& q, const CategoryPresentation& cat,
                              double tol = kDefaultTolerance);

/// Residual of x x* = (id (x) x*)(x (x) id).
double frobenius_check(const QSystemSpec& q, const CategoryPresentation& cat);

struct LocalityResult {
  bool local = false;
  double residual = 0;
};
/// eps(theta, theta) x = x.
LocalityResult is_local(const QSystemSpec& q, const CategoryPresentation& cat,
                        double tol = kDefaultTolerance);

/// Prefactor relating Gamma to lambda. sqrt_index is Gamma = d(theta)^{1/2}
/// lambda; bare is Gamma = lambda.
enum class GammaConvention { sqrt_index, bare };

struct ChargedIntertwinerAlgebra {
  /// Sector of each charged intertwiner psi_i (summands of theta).
  std::vector<Label> charges;
  /// Gamma^k_{ij}, keyed (i, j, k).
  std::map<LambdaKey, cplx> gamma;
  double unit_residual = 0;
  double associativity_residual = 0;
  /// max |sum_{ij} conj(Gamma^k_ij) Gamma^k'_ij - d(theta) delta_kk'|.
  double orthogonality_residual = 0;
  /// The matrix sum_{ij} conj(Gamma^k_ij) Gamma^k'_ij over summands k, k'.
  CMatrix orthogonality;
};

/// Structure constants of the charged intertwiners. Throws InconsistencyError
/// naming the failing relation when the unit constraints, the associativity
/// of the expansion or the orthogonality sum fail at tol.
ChargedIntertwinerAlgebra charged_algebra(const QSystemSpec& q,
                                          const CategoryPresentation& cat,
                                          GammaConvention convention =
                                              GammaConvention::sqrt_index,
                                          double tol = kDefaultTolerance);

/// lambda -> (U (x) U) lambda U^dagger for a block-unitary U acting on the
/// multiplicity space of each sector. gauge[s] is n_s x n_s; gauge[0] must be
/// the 1 x 1 identity.
QSystemSpec gauge_transform(const QSystemSpec& q, const CategoryPresentation& cat,
                            const std::vector<CMatrix>& gauge);

/// Sorted multiset of |Gamma^k_ij| rounded to `digits` decimals.
std::vector<double> fingerprint(const QSystemSpec& q, const CategoryPresentation& cat,
                                int digits = 8);

namespace qsystems {

/// theta = 1, lambda = 1.
QSystemSpec trivial(const CategoryPresentation& cat);
/// The Q-system of theta = rho-bar rho built from a conjugation pair:
/// w = R / sqrt(d), x = (id (x) Rbar (x) id) / sqrt(d), rewritten on the
/// direct-sum decomposition of rho-bar rho.
QSystemSpec regular(const CategoryPresentation& cat, Label rho,
                    double tol = kDefaultTolerance);
/// theta = 1 + J for a self-dual invertible J; all lambda = 1/sqrt(2).
/// Throws InconsistencyError when F^{JJJ}_J[0,0] != 1.
QSystemSpec simple_current(const CategoryPresentation& cat, Label J,
                           double tol = kDefaultTolerance);
/// Ising-type CAR algebra theta = 1 + psi.
QSystemSpec car(const CategoryPresentation& cat, Label psi,
                double tol = kDefaultTolerance);

}  // namespace qsystems

struct QSearchOptions {
  int starts = 64;
  std::uint64_t seed = 1;
  int threads = 1;
  int max_iterations = 400;
  double tolerance = kDefaultTolerance;
};

enum class QSearchStatus { found, no_solution, inconclusive };
std::string to_string(QSearchStatus status);

struct QSearchResult {
  QSearchStatus status = QSearchStatus::inconclusive;
  std::vector<int> theta;
  /// One gauge-fixed representative per fingerprint class, sorted by
  /// fingerprint.
  std::vector<QSystemSpec> solutions;
  std::vector<std::vector<double>> fingerprints;
  /// Smallest constraint residual reached by any start.
  double best_residual = 0;
  int converged_starts = 0;
  int stationary_starts = 0;
};

/// Multi-start Levenberg-Marquardt on the unit, isometry and associativity
/// equations in coefficient form. no_solution means every start stalled at
/// a stationary point with nonzero residual; inconclusive means at least one
/// start neither converged nor stalled. Throws InputError when theta breaks
/// n_0 = 1 or n_s <= d_s.
QSearchResult search_qsystems(const CategoryPresentation& cat, const std::vector<int>& theta,
                              const QSearchOptions& options = {});

}  // namespace bcft
