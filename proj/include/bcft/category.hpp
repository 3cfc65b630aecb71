#pragma once

#include "bcft/common.hpp"
#include "bcft/fusion_ring.hpp"

#include <array>
#include <compare>
#include <map>
#include <memory>
#include <utility>
#include <vector>

namespace bcft {

/// One tensor factor of an object: a formal direct sum of simple objects.
/// Summand p carries label summands[p]; repeated labels are the multiplicity
/// space of that sector.
struct Factor {
  std::vector<Label> summands;

  static Factor simple(Label s) { return Factor{{s}}; }
  /// Summands in sector order, n[s] copies of sector s.
  static Factor from_multiplicities(const std::vector<int>& n);

  int size() const { return static_cast<int>(summands.size()); }
  auto operator<=>(const Factor&) const = default;
};

/// Tensor product of factors, left to right. The empty word is the unit.
class ObjectWord {
 public:
  ObjectWord() = default;
  explicit ObjectWord(std::vector<Factor> factors) : factors_(std::move(factors)) {}
  static ObjectWord simple(Label s) { return ObjectWord({Factor::simple(s)}); }
  static ObjectWord of_labels(const std::vector<Label>& labels);
  static ObjectWord of_factor(Factor f) { return ObjectWord({std::move(f)}); }

  int size() const { return static_cast<int>(factors_.size()); }
  bool empty() const { return factors_.empty(); }
  const Factor& factor(int i) const { return factors_.at(i); }
  const std::vector<Factor>& factors() const { return factors_; }

  /// Tensor product of words (concatenation).
  ObjectWord operator*(const ObjectWord& rhs) const;

  auto operator<=>(const ObjectWord&) const = default;

 private:
  std::vector<Factor> factors_;
};

/// Left-bracketed splitting tree c -> x_1 x_2 ... x_n. summands[i] selects
/// the summand of factor i; path[i] is the running channel after fusing
/// factors 0..i, so path.back() is the total channel. The unit word has the
/// single empty tree in channel 0.
struct FusionTree {
  std::vector<int> summands;
  std::vector<Label> path;

  Label channel() const { return path.empty() ? 0 : path.back(); }
  std::strong_ordering operator<=>(const FusionTree& o) const {
    if (auto c = path <=> o.path; c != 0) return c;
    return summands <=> o.summands;
  }
  bool operator==(const FusionTree&) const = default;
};

/// Orthonormal tree bases of Hom(c -> word) for every channel c.
struct TreeBasis {
  std::vector<std::vector<FusionTree>> trees;
  std::vector<std::map<FusionTree, int>> index;

  int dim(Label c) const { return static_cast<int>(trees[c].size()); }
  int find(Label c, const FusionTree& t) const;
};

struct HomBasisElement {
  Label channel;
  int target_tree;
  int source_tree;
};

/// Basis of Hom(source -> target): pairs of trees with equal channel,
/// ordered by channel, then target tree, then source tree.
struct HomBasis {
  std::vector<HomBasisElement> elements;
  int dim() const { return static_cast<int>(elements.size()); }
};

/// Morphism between words. block(c) maps the tree basis of Hom(c -> source)
/// to that of Hom(c -> target).
class Morphism {
 public:
  Morphism() = default;
  Morphism(ObjectWord source, ObjectWord target, std::vector<CMatrix> blocks)
      : source_(std::move(source)), target_(std::move(target)),
        blocks_(std::move(blocks)) {}

  const ObjectWord& source() const { return source_; }
  const ObjectWord& target() const { return target_; }
  const CMatrix& block(Label c) const { return blocks_.at(c); }
  CMatrix& block(Label c) { return blocks_.at(c); }
  const std::vector<CMatrix>& blocks() const { return blocks_; }
  int rank() const { return static_cast<int>(blocks_.size()); }

  Morphism& operator+=(const Morphism& o);
  Morphism& operator-=(const Morphism& o);
  Morphism& operator*=(cplx s);
  friend Morphism operator+(Morphism a, const Morphism& b) { return a += b; }
  friend Morphism operator-(Morphism a, const Morphism& b) { return a -= b; }
  friend Morphism operator*(cplx s, Morphism a) { return a *= s; }

  /// Largest absolute coefficient.
  double max_abs() const;
  /// Coefficients in HomBasis order.
  CVector flatten() const;

 private:
  ObjectWord source_;
  ObjectWord target_;
  std::vector<CMatrix> blocks_;
};

/// f after g.
Morphism compose(const Morphism& f, const Morphism& g);
Morphism dagger(const Morphism& f);
/// Max absolute coefficient difference; StructuralError on shape mismatch.
double distance(const Morphism& a, const Morphism& b);
/// All blocks Hermitian positive semidefinite within tol.
bool is_positive(const Morphism& f, double tol = kDefaultTolerance);

enum class Orientation { plus, minus };

using FKey = std::array<Label, 6>;  // a, b, c, d, e, f
using RKey = std::array<Label, 3>;  // a, b, c

/// Braided fusion category given by F and R symbols over a multiplicity-free
/// fusion ring.
///
/// Conventions (splitting trees, isometric vertices):
///   |(ab)_e c; d> = sum_f F^{abc}_d[e,f] |a(bc)_f; d>
///   c_{a,b} |a,b; c> = R^{ab}_c |b,a; c>
/// The statistics operator exposed by braiding() with Orientation::plus is
/// eps(U,V) = c_{V,U}^dagger : UV -> VU; Orientation::minus gives
/// eps(V,U)^dagger = c_{U,V}.
class CategoryPresentation {
 public:
  /// Throws StructuralError for multiplicity > 1, for a missing admissible
  /// entry (naming the tuple) or for an entry on a non-admissible tuple.
  CategoryPresentation(FusionRing ring, const std::map<FKey, cplx>& F,
                       const std::map<RKey, cplx>& R);

  const FusionRing& ring() const { return ring_; }
  int rank() const { return ring_.rank(); }
  const RVector& dims() const { return dims_; }
  double dim(Label s) const { return dims_(s); }

  bool admissible(Label a, Label b, Label c) const { return ring_.N(a, b, c) > 0; }
  bool f_admissible(const FKey& k) const;
  /// Zero on non-admissible tuples.
  cplx F(Label a, Label b, Label c, Label d, Label e, Label f) const;
  cplx R(Label a, Label b, Label c) const;
  std::map<FKey, cplx> f_symbols() const;
  std::map<RKey, cplx> r_symbols() const;

  const TreeBasis& basis(const ObjectWord& w) const;
  HomBasis hom_basis(const ObjectWord& source, const ObjectWord& target) const;
  /// Unit-coefficient morphism for one hom-basis element.
  Morphism basis_morphism(const ObjectWord& source, const ObjectWord& target,
                          const HomBasisElement& e) const;
  Morphism unflatten(const ObjectWord& source, const ObjectWord& target,
                     const CVector& coeffs) const;

  Morphism zero(const ObjectWord& source, const ObjectWord& target) const;
  Morphism identity(const ObjectWord& w) const;

  /// f (x) g on concatenated words.
  Morphism tensor(const Morphism& f, const Morphism& g) const;
  /// f (x) id_w.
  Morphism tensor_id_right(const Morphism& f, const ObjectWord& w) const;
  /// id_w (x) g.
  Morphism tensor_id_left(const ObjectWord& w, const Morphism& g) const;

  /// Statistics operator eps^{+-}(U,V): UV -> VU.
  Morphism braiding(const ObjectWord& u, const ObjectWord& v,
                    Orientation orientation = Orientation::plus) const;

  /// (R_rho: 1 -> rho-bar rho, Rbar_rho: 1 -> rho rho-bar) with
  /// R^dagger R = d(rho) and both conjugate equations satisfied.
  std::pair<Morphism, Morphism> conjugation_pair(Label rho,
                                                 double tol = kDefaultTolerance) const;

  /// Unitary change of basis from the split basis (tree of u -> a, tree of
  /// v -> b, vertex a b -> c) to the left-bracketed basis of uv, channel c.
  /// Columns ordered by a, b, tree of u, tree of v.
  const CMatrix& recoupling(const ObjectWord& u, const ObjectWord& v, Label c) const;

 private:
  struct Cache;

  Morphism r_braiding(const ObjectWord& u, const ObjectWord& v) const;
  std::vector<CMatrix> compute_recoupling(const ObjectWord& u,
                                          const ObjectWord& v) const;

  FusionRing ring_;
  RVector dims_;
  std::vector<cplx> F_;
  std::vector<cplx> R_;
  std::shared_ptr<Cache> cache_;
};

struct AxiomReport {
  double pentagon = 0;
  double hexagon = 0;
  double unitarity = 0;
  double normalization = 0;
  ValidationReport details;

  bool valid(double tol = kDefaultTolerance) const {
    return pentagon < tol && hexagon < tol && unitarity < tol &&
           normalization < tol;
  }
};

/// Pentagon, both hexagons, F-matrix unitarity, |R| = 1 and vacuum
/// normalization of F and R.
AxiomReport validate_axioms(const CategoryPresentation& cat,
                            double tol = kDefaultTolerance);

}  // namespace bcft
