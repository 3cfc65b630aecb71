#include "bcft/category.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <sstream>

namespace bcft {

// ---------------------------------------------------------------- words

Factor Factor::from_multiplicities(const std::vector<int>& n) {
  Factor f;
  for (size_t s = 0; s < n.size(); ++s) {
    for (int k = 0; k < n[s]; ++k) f.summands.push_back(static_cast<Label>(s));
  }
  return f;
}

ObjectWord ObjectWord::of_labels(const std::vector<Label>& labels) {
  std::vector<Factor> f;
  f.reserve(labels.size());
  for (Label s : labels) f.push_back(Factor::simple(s));
  return ObjectWord(std::move(f));
}

ObjectWord ObjectWord::operator*(const ObjectWord& rhs) const {
  std::vector<Factor> f = factors_;
  f.insert(f.end(), rhs.factors_.begin(), rhs.factors_.end());
  return ObjectWord(std::move(f));
}

int TreeBasis::find(Label c, const FusionTree& t) const {
  auto it = index[c].find(t);
  return it == index[c].end() ? -1 : it->second;
}

// ------------------------------------------------------------ morphisms

namespace {

void require_same_shape(const Morphism& a, const Morphism& b, const char* what) {
  if (a.source() != b.source() || a.target() != b.target() ||
      a.rank() != b.rank()) {
    throw StructuralError(std::string(what) + ": morphisms have different shapes");
  }
}

}  // namespace

Morphism& Morphism::operator+=(const Morphism& o) {
  require_same_shape(*this, o, "add");
  for (size_t c = 0; c < blocks_.size(); ++c) blocks_[c] += o.blocks_[c];
  return *this;
}

Morphism& Morphism::operator-=(const Morphism& o) {
  require_same_shape(*this, o, "subtract");
  for (size_t c = 0; c < blocks_.size(); ++c) blocks_[c] -= o.blocks_[c];
  return *this;
}

Morphism& Morphism::operator*=(cplx s) {
  for (auto& b : blocks_) b *= s;
  return *this;
}

double Morphism::max_abs() const {
  double m = 0;
  for (const auto& b : blocks_) {
    if (b.size() > 0) m = std::max(m, b.cwiseAbs().maxCoeff());
  }
  return m;
}

CVector Morphism::flatten() const {
  Eigen::Index n = 0;
  for (const auto& b : blocks_) n += b.size();
  CVector v(n);
  Eigen::Index k = 0;
  for (const auto& b : blocks_) {
    for (Eigen::Index i = 0; i < b.rows(); ++i) {
      for (Eigen::Index j = 0; j < b.cols(); ++j) v(k++) = b(i, j);
    }
  }
  return v;
}

Morphism compose(const Morphism& f, const Morphism& g) {
  if (f.source() != g.target() || f.rank() != g.rank()) {
    throw StructuralError("compose: source of f does not match target of g");
  }
  std::vector<CMatrix> blocks(f.rank());
  for (int c = 0; c < f.rank(); ++c) blocks[c] = f.block(c) * g.block(c);
  return Morphism(g.source(), f.target(), std::move(blocks));
}

Morphism dagger(const Morphism& f) {
  std::vector<CMatrix> blocks(f.rank());
  for (int c = 0; c < f.rank(); ++c) blocks[c] = f.block(c).adjoint();
  return Morphism(f.target(), f.source(), std::move(blocks));
}

double distance(const Morphism& a, const Morphism& b) {
  require_same_shape(a, b, "distance");
  double m = 0;
  for (int c = 0; c < a.rank(); ++c) {
    if (a.block(c).size() > 0) {
      m = std::max(m, (a.block(c) - b.block(c)).cwiseAbs().maxCoeff());
    }
  }
  return m;
}

bool is_positive(const Morphism& f, double tol) {
  if (f.source() != f.target()) return false;
  for (const auto& b : f.blocks()) {
    if (b.size() == 0) continue;
    if ((b - b.adjoint()).cwiseAbs().maxCoeff() > tol) return false;
    Eigen::SelfAdjointEigenSolver<CMatrix> es(b);
    if (es.eigenvalues().minCoeff() < -tol) return false;
  }
  return true;
}

// ------------------------------------------------------------- category

struct CategoryPresentation::Cache {
  std::mutex mutex;
  std::map<ObjectWord, std::shared_ptr<const TreeBasis>> bases;
  std::map<std::pair<ObjectWord, ObjectWord>, std::shared_ptr<const std::vector<CMatrix>>>
      recouplings;
};

namespace {

std::string tuple_string(const FusionRing& ring, const Label* k, int n) {
  std::ostringstream os;
  os << "(";
  for (int i = 0; i < n; ++i) os << (i ? "," : "") << ring.label(k[i]);
  os << ")";
  return os.str();
}

}  // namespace

CategoryPresentation::CategoryPresentation(FusionRing ring,
                                           const std::map<FKey, cplx>& F,
                                           const std::map<RKey, cplx>& R)
    : ring_(std::move(ring)), cache_(std::make_shared<Cache>()) {
  const ValidationReport ring_report = validate_ring(ring_);
  if (!ring_report.ok()) {
    std::string msg = "F/R data over an invalid fusion ring:";
    for (const Violation& v : ring_report.violations) msg += " [" + v.code + "] " + v.message;
    throw ValidationError(msg);
  }
  if (!ring_.multiplicity_free()) {
    throw StructuralError(
        "F/R data requires a multiplicity-free fusion ring (some N^{st}_u > 1)");
  }
  dims_ = fp_dimensions(ring_);
  const int n = rank();
  F_.assign(static_cast<size_t>(n) * n * n * n * n * n, cplx(0));
  R_.assign(static_cast<size_t>(n) * n * n, cplx(0));

  auto f_index = [n](const FKey& k) {
    size_t i = 0;
    for (Label l : k) i = i * n + l;
    return i;
  };
  for (const auto& [key, value] : F) {
    for (Label l : key) {
      if (l < 0 || l >= n) throw StructuralError("F label out of range");
    }
    if (!f_admissible(key)) {
      throw StructuralError("F entry on non-admissible tuple " +
                            tuple_string(ring_, key.data(), 6));
    }
    F_[f_index(key)] = value;
  }
  for (const auto& [key, value] : R) {
    for (Label l : key) {
      if (l < 0 || l >= n) throw StructuralError("R label out of range");
    }
    if (!admissible(key[0], key[1], key[2])) {
      throw StructuralError("R entry on non-admissible triple " +
                            tuple_string(ring_, key.data(), 3));
    }
    R_[(static_cast<size_t>(key[0]) * n + key[1]) * n + key[2]] = value;
  }

  // Every admissible entry must be present.
  for (Label a = 0; a < n; ++a) {
    for (Label b = 0; b < n; ++b) {
      for (Label c = 0; c < n; ++c) {
        if (admissible(a, b, c) && !R.count({a, b, c})) {
          const RKey k{a, b, c};
          throw StructuralError("missing R entry " + tuple_string(ring_, k.data(), 3));
        }
        for (Label d = 0; d < n; ++d) {
          for (Label e = 0; e < n; ++e) {
            for (Label f = 0; f < n; ++f) {
              const FKey k{a, b, c, d, e, f};
              if (f_admissible(k) && !F.count(k)) {
                throw StructuralError("missing F entry " +
                                      tuple_string(ring_, k.data(), 6));
              }
            }
          }
        }
      }
    }
  }
}

bool CategoryPresentation::f_admissible(const FKey& k) const {
  const auto [a, b, c, d, e, f] = k;
  return admissible(a, b, e) && admissible(e, c, d) && admissible(b, c, f) &&
         admissible(a, f, d);
}

cplx CategoryPresentation::F(Label a, Label b, Label c, Label d, Label e,
                             Label f) const {
  const size_t n = rank();
  return F_[((((a * n + b) * n + c) * n + d) * n + e) * n + f];
}

cplx CategoryPresentation::R(Label a, Label b, Label c) const {
  const size_t n = rank();
  return R_[(a * n + b) * n + c];
}

std::map<FKey, cplx> CategoryPresentation::f_symbols() const {
  std::map<FKey, cplx> out;
  const int n = rank();
  for (Label a = 0; a < n; ++a)
    for (Label b = 0; b < n; ++b)
      for (Label c = 0; c < n; ++c)
        for (Label d = 0; d < n; ++d)
          for (Label e = 0; e < n; ++e)
            for (Label f = 0; f < n; ++f) {
              const FKey k{a, b, c, d, e, f};
              if (f_admissible(k)) out[k] = F(a, b, c, d, e, f);
            }
  return out;
}

std::map<RKey, cplx> CategoryPresentation::r_symbols() const {
  std::map<RKey, cplx> out;
  const int n = rank();
  for (Label a = 0; a < n; ++a)
    for (Label b = 0; b < n; ++b)
      for (Label c = 0; c < n; ++c)
        if (admissible(a, b, c)) out[{a, b, c}] = R(a, b, c);
  return out;
}

const TreeBasis& CategoryPresentation::basis(const ObjectWord& w) const {
  {
    std::lock_guard lock(cache_->mutex);
    auto it = cache_->bases.find(w);
    if (it != cache_->bases.end()) return *it->second;
  }
  const int n = rank();
  for (const auto& f : w.factors()) {
    if (f.summands.empty()) throw StructuralError("word has an empty factor");
    for (Label s : f.summands) {
      if (s < 0 || s >= n) throw StructuralError("word label out of range");
    }
  }

  auto tb = std::make_shared<TreeBasis>();
  tb->trees.resize(n);
  tb->index.resize(n);
  FusionTree current;
  // Depth-first over factors; path[i] runs through admissible channels.
  auto dfs = [&](auto&& self, int i) -> void {
    if (i == w.size()) {
      tb->trees[current.channel()].push_back(current);
      return;
    }
    const auto& summands = w.factor(i).summands;
    for (int p = 0; p < static_cast<int>(summands.size()); ++p) {
      const Label x = summands[p];
      current.summands.push_back(p);
      if (i == 0) {
        current.path.push_back(x);
        self(self, i + 1);
        current.path.pop_back();
      } else {
        const Label prev = current.path.back();
        for (Label next = 0; next < n; ++next) {
          if (!admissible(prev, x, next)) continue;
          current.path.push_back(next);
          self(self, i + 1);
          current.path.pop_back();
        }
      }
      current.summands.pop_back();
    }
  };
  dfs(dfs, 0);
  for (int c = 0; c < n; ++c) {
    std::sort(tb->trees[c].begin(), tb->trees[c].end());
    for (int k = 0; k < static_cast<int>(tb->trees[c].size()); ++k) {
      tb->index[c][tb->trees[c][k]] = k;
    }
  }

  std::lock_guard lock(cache_->mutex);
  auto [it, inserted] = cache_->bases.emplace(w, std::move(tb));
  return *it->second;
}

HomBasis CategoryPresentation::hom_basis(const ObjectWord& source,
                                         const ObjectWord& target) const {
  const TreeBasis& s = basis(source);
  const TreeBasis& t = basis(target);
  HomBasis hb;
  for (Label c = 0; c < rank(); ++c) {
    for (int i = 0; i < t.dim(c); ++i) {
      for (int j = 0; j < s.dim(c); ++j) hb.elements.push_back({c, i, j});
    }
  }
  return hb;
}

Morphism CategoryPresentation::zero(const ObjectWord& source,
                                    const ObjectWord& target) const {
  const TreeBasis& s = basis(source);
  const TreeBasis& t = basis(target);
  std::vector<CMatrix> blocks(rank());
  for (Label c = 0; c < rank(); ++c) blocks[c] = CMatrix::Zero(t.dim(c), s.dim(c));
  return Morphism(source, target, std::move(blocks));
}

Morphism CategoryPresentation::identity(const ObjectWord& w) const {
  Morphism m = zero(w, w);
  for (Label c = 0; c < rank(); ++c) m.block(c).setIdentity();
  return m;
}

Morphism CategoryPresentation::basis_morphism(const ObjectWord& source,
                                              const ObjectWord& target,
                                              const HomBasisElement& e) const {
  Morphism m = zero(source, target);
  m.block(e.channel)(e.target_tree, e.source_tree) = 1.0;
  return m;
}

Morphism CategoryPresentation::unflatten(const ObjectWord& source,
                                         const ObjectWord& target,
                                         const CVector& coeffs) const {
  Morphism m = zero(source, target);
  Eigen::Index k = 0;
  for (Label c = 0; c < rank(); ++c) {
    CMatrix& b = m.block(c);
    for (Eigen::Index i = 0; i < b.rows(); ++i) {
      for (Eigen::Index j = 0; j < b.cols(); ++j) {
        if (k >= coeffs.size()) throw StructuralError("unflatten: too few coefficients");
        b(i, j) = coeffs(k++);
      }
    }
  }
  if (k != coeffs.size()) throw StructuralError("unflatten: too many coefficients");
  return m;
}

Morphism CategoryPresentation::tensor_id_right(const Morphism& f,
                                               const ObjectWord& w) const {
  // Left-bracketed trees of A w split as (tree of A -> a) + continuation, so
  // f (x) id acts as f_a on the prefix.
  const ObjectWord src = f.source() * w;
  const ObjectWord tgt = f.target() * w;
  const TreeBasis& sb = basis(src);
  const TreeBasis& tb = basis(tgt);
  const TreeBasis& fs = basis(f.source());
  const TreeBasis& ft = basis(f.target());
  const int ns = f.source().size();
  const int nt = f.target().size();

  Morphism out = zero(src, tgt);
  for (Label c = 0; c < rank(); ++c) {
    for (int j = 0; j < sb.dim(c); ++j) {
      const FusionTree& tree = sb.trees[c][j];
      FusionTree prefix{{tree.summands.begin(), tree.summands.begin() + ns},
                        {tree.path.begin(), tree.path.begin() + ns}};
      const Label a = prefix.channel();
      const int col = fs.find(a, prefix);
      const CMatrix& fa = f.block(a);
      for (int i = 0; i < ft.dim(a); ++i) {
        const cplx v = fa(i, col);
        if (v == cplx(0)) continue;
        const FusionTree& head = ft.trees[a][i];
        FusionTree joined = head;
        joined.summands.insert(joined.summands.end(), tree.summands.begin() + ns,
                               tree.summands.end());
        joined.path.insert(joined.path.end(), tree.path.begin() + ns, tree.path.end());
        const int row = tb.find(c, joined);
        if (row < 0) throw StructuralError("tensor_id_right: inconsistent tree");
        out.block(c)(row, j) += v;
      }
    }
  }
  (void)nt;
  return out;
}

std::vector<CMatrix> CategoryPresentation::compute_recoupling(
    const ObjectWord& u, const ObjectWord& v) const {
  const int n = rank();
  const TreeBasis& ub = basis(u);
  const TreeBasis& vb = basis(v);
  const TreeBasis& joint = basis(u * v);
  const int m = v.size();
  std::vector<CMatrix> out(n);

  for (Label c = 0; c < n; ++c) {
    int cols = 0;
    for (Label a = 0; a < n; ++a)
      for (Label b = 0; b < n; ++b)
        if (admissible(a, b, c)) cols += ub.dim(a) * vb.dim(b);
    CMatrix M = CMatrix::Zero(joint.dim(c), cols);

    int col = 0;
    for (Label a = 0; a < n; ++a) {
      for (Label b = 0; b < n; ++b) {
        if (!admissible(a, b, c)) continue;
        for (const FusionTree& tu : ub.trees[a]) {
          for (const FusionTree& tv : vb.trees[b]) {
            // Expansion of |a (x) (tree of v -> b) -> c> in left-bracketed
            // trees; returns (path tail, coefficient) pairs.
            using Terms = std::vector<std::pair<std::vector<Label>, cplx>>;
            auto expand = [&](auto&& self, int k, Label e) -> Terms {
              if (k == 0) {
                // v empty: only b = 0, c = a.
                return e == a ? Terms{{{}, cplx(1)}} : Terms{};
              }
              const Label bk = tv.path[k - 1];
              if (k == 1) {
                return admissible(a, bk, e) ? Terms{{{e}, cplx(1)}} : Terms{};
              }
              const Label prev = tv.path[k - 2];
              const Label x = v.factor(k - 1).summands[tv.summands[k - 1]];
              Terms result;
              for (Label f = 0; f < n; ++f) {
                if (!admissible(a, prev, f) || !admissible(f, x, e)) continue;
                const cplx coeff = std::conj(F(a, prev, x, e, f, bk));
                if (coeff == cplx(0)) continue;
                for (auto& [tail, w] : self(self, k - 1, f)) {
                  tail.push_back(e);
                  result.emplace_back(std::move(tail), w * coeff);
                }
              }
              return result;
            };
            for (auto& [tail, w] : expand(expand, m, c)) {
              FusionTree t = tu;
              t.summands.insert(t.summands.end(), tv.summands.begin(), tv.summands.end());
              t.path.insert(t.path.end(), tail.begin(), tail.end());
              const int row = joint.find(c, t);
              if (row < 0) throw StructuralError("recoupling: tree not in basis");
              M(row, col) += w;
            }
            ++col;
          }
        }
      }
    }
    out[c] = std::move(M);
  }
  return out;
}

const CMatrix& CategoryPresentation::recoupling(const ObjectWord& u,
                                                const ObjectWord& v,
                                                Label c) const {
  const auto key = std::make_pair(u, v);
  {
    std::lock_guard lock(cache_->mutex);
    auto it = cache_->recouplings.find(key);
    if (it != cache_->recouplings.end()) return (*it->second)[c];
  }
  auto mats = std::make_shared<const std::vector<CMatrix>>(compute_recoupling(u, v));
  std::lock_guard lock(cache_->mutex);
  auto [it, inserted] = cache_->recouplings.emplace(key, std::move(mats));
  return (*it->second)[c];
}

Morphism CategoryPresentation::tensor_id_left(const ObjectWord& w,
                                              const Morphism& g) const {
  const int n = rank();
  const TreeBasis& wb = basis(w);
  const TreeBasis& gs = basis(g.source());
  const TreeBasis& gt = basis(g.target());
  Morphism out = zero(w * g.source(), w * g.target());

  for (Label c = 0; c < n; ++c) {
    const CMatrix& Msrc = recoupling(w, g.source(), c);
    const CMatrix& Mtgt = recoupling(w, g.target(), c);
    // Block-diagonal action on split bases: id_{tree of w} (x) g_b.
    CMatrix D = CMatrix::Zero(Mtgt.cols(), Msrc.cols());
    int row0 = 0, col0 = 0;
    for (Label a = 0; a < n; ++a) {
      for (Label b = 0; b < n; ++b) {
        if (!admissible(a, b, c)) continue;
        const int rows_b = gt.dim(b), cols_b = gs.dim(b);
        for (int k = 0; k < wb.dim(a); ++k) {
          D.block(row0 + k * rows_b, col0 + k * cols_b, rows_b, cols_b) = g.block(b);
        }
        row0 += wb.dim(a) * rows_b;
        col0 += wb.dim(a) * cols_b;
      }
    }
    out.block(c) = Mtgt * D * Msrc.adjoint();
  }
  return out;
}

Morphism CategoryPresentation::tensor(const Morphism& f, const Morphism& g) const {
  // (f (x) id_D) o (id_A (x) g) for f: A -> B, g: C -> D.
  return compose(tensor_id_right(f, g.target()), tensor_id_left(f.source(), g));
}

Morphism CategoryPresentation::r_braiding(const ObjectWord& u,
                                          const ObjectWord& v) const {
  const int n = rank();
  const TreeBasis& ub = basis(u);
  const TreeBasis& vb = basis(v);
  Morphism out = zero(u * v, v * u);

  for (Label c = 0; c < n; ++c) {
    const CMatrix& Muv = recoupling(u, v, c);
    const CMatrix& Mvu = recoupling(v, u, c);
    // Column offsets of each (a, b) sector in both split bases.
    std::map<std::pair<Label, Label>, int> off_uv, off_vu;
    int o = 0;
    for (Label a = 0; a < n; ++a)
      for (Label b = 0; b < n; ++b)
        if (admissible(a, b, c)) {
          off_uv[{a, b}] = o;
          o += ub.dim(a) * vb.dim(b);
        }
    o = 0;
    for (Label b = 0; b < n; ++b)
      for (Label a = 0; a < n; ++a)
        if (admissible(b, a, c)) {
          off_vu[{b, a}] = o;
          o += vb.dim(b) * ub.dim(a);
        }

    CMatrix P = CMatrix::Zero(Mvu.cols(), Muv.cols());
    for (const auto& [ab, start] : off_uv) {
      const auto [a, b] = ab;
      const cplx r = R(a, b, c);
      const int target_start = off_vu.at({b, a});
      for (int i = 0; i < ub.dim(a); ++i) {
        for (int j = 0; j < vb.dim(b); ++j) {
          P(target_start + j * ub.dim(a) + i, start + i * vb.dim(b) + j) = r;
        }
      }
    }
    out.block(c) = Mvu * P * Muv.adjoint();
  }
  return out;
}

Morphism CategoryPresentation::braiding(const ObjectWord& u, const ObjectWord& v,
                                        Orientation orientation) const {
  if (orientation == Orientation::plus) return dagger(r_braiding(v, u));
  return r_braiding(u, v);
}

std::pair<Morphism, Morphism> CategoryPresentation::conjugation_pair(
    Label rho, double tol) const {
  if (rho < 0 || rho >= rank()) throw StructuralError("sector index out of range");
  const Label bar = ring_.dual(rho);
  const ObjectWord unit;
  const ObjectWord w_rho = ObjectWord::simple(rho);
  const ObjectWord w_bar = ObjectWord::simple(bar);
  const double sd = std::sqrt(dim(rho));

  Morphism R_ = zero(unit, w_bar * w_rho);
  R_.block(0)(0, 0) = sd;
  Morphism Rbar = zero(unit, w_rho * w_bar);
  Rbar.block(0)(0, 0) = sd;

  // (Rbar^dagger (x) id) o (id (x) R) is a scalar on rho; fix Rbar's phase.
  const Morphism zig = compose(tensor_id_right(dagger(Rbar), w_rho),
                               tensor_id_left(w_rho, R_));
  const cplx x = zig.block(rho)(0, 0);
  if (std::abs(std::abs(x) - 1.0) > tol) {
    throw InconsistencyError("no conjugation pair for " + ring_.label(rho) +
                             ": zig-zag scalar has modulus " +
                             std::to_string(std::abs(x)));
  }
  Rbar *= x;

  const Morphism zig1 = compose(tensor_id_right(dagger(Rbar), w_rho),
                                tensor_id_left(w_rho, R_));
  const Morphism zig2 = compose(tensor_id_right(dagger(R_), w_bar),
                                tensor_id_left(w_bar, Rbar));
  if (distance(zig1, identity(w_rho)) > tol || distance(zig2, identity(w_bar)) > tol) {
    throw InconsistencyError("conjugate equations fail for " + ring_.label(rho));
  }
  return {R_, Rbar};
}

// ------------------------------------------------------------ validation

AxiomReport validate_axioms(const CategoryPresentation& cat, double tol) {
  AxiomReport rep;
  const int n = cat.rank();
  const FusionRing& ring = cat.ring();
  auto adm = [&](Label a, Label b, Label c) { return cat.admissible(a, b, c); };
  auto note = [&](double& slot, double value, const std::string& code,
                  const std::string& what) {
    if (value > slot) slot = value;
    if (value > tol && rep.details.violations.size() < 50) {
      rep.details.add(code, what + " residual " + std::to_string(value));
    }
  };
  auto lbl = [&](Label s) { return ring.label(s); };

  // Pentagon: F^{fcd}_e[g,l] F^{abl}_e[f,k]
  //         = sum_h F^{abc}_g[f,h] F^{ahd}_e[g,k] F^{bcd}_k[h,l].
  for (Label a = 0; a < n; ++a)
    for (Label b = 0; b < n; ++b)
      for (Label c = 0; c < n; ++c)
        for (Label d = 0; d < n; ++d)
          for (Label e = 0; e < n; ++e)
            for (Label f = 0; f < n; ++f) {
              if (!adm(a, b, f)) continue;
              for (Label g = 0; g < n; ++g) {
                if (!adm(f, c, g) || !adm(g, d, e)) continue;
                for (Label l = 0; l < n; ++l) {
                  if (!adm(c, d, l) || !adm(f, l, e)) continue;
                  for (Label k = 0; k < n; ++k) {
                    if (!adm(b, l, k) || !adm(a, k, e)) continue;
                    const cplx lhs = cat.F(f, c, d, e, g, l) * cat.F(a, b, l, e, f, k);
                    cplx rhs = 0;
                    for (Label h = 0; h < n; ++h) {
                      rhs += cat.F(a, b, c, g, f, h) * cat.F(a, h, d, e, g, k) *
                             cat.F(b, c, d, k, h, l);
                    }
                    note(rep.pentagon, std::abs(lhs - rhs), "pentagon",
                         "pentagon at " + lbl(a) + lbl(b) + lbl(c) + lbl(d) + "->" +
                             lbl(e));
                  }
                }
              }
            }

  // Hexagons, derived from c_{ab,c} = (c_{a,c} (x) 1)(1 (x) c_{b,c}) and
  // c_{a,bc} = (1 (x) c_{a,c})(c_{a,b} (x) 1) in the tree conventions above.
  for (Label a = 0; a < n; ++a)
    for (Label b = 0; b < n; ++b)
      for (Label c = 0; c < n; ++c)
        for (Label d = 0; d < n; ++d)
          for (Label e = 0; e < n; ++e)
            for (Label g = 0; g < n; ++g) {
              // Over: R^{ec}_d conj(F^{cab}_d[g,e])
              //     = sum_f F^{abc}_d[e,f] R^{bc}_f conj(F^{acb}_d[g,f]) R^{ac}_g
              if (adm(a, b, e) && adm(e, c, d) && adm(c, a, g) && adm(g, b, d)) {
                const cplx lhs = cat.R(e, c, d) * std::conj(cat.F(c, a, b, d, g, e));
                cplx rhs = 0;
                for (Label f = 0; f < n; ++f) {
                  rhs += cat.F(a, b, c, d, e, f) * cat.R(b, c, f) *
                         std::conj(cat.F(a, c, b, d, g, f));
                }
                rhs *= cat.R(a, c, g);
                note(rep.hexagon, std::abs(lhs - rhs), "hexagon",
                     "hexagon (over) at " + lbl(a) + lbl(b) + lbl(c) + "->" + lbl(d));
              }
              // Under: F^{abc}_d[e,g] R^{ag}_d
              //      = sum_f R^{ab}_e F^{bac}_d[e,f] R^{ac}_f conj(F^{bca}_d[g,f])
              if (adm(a, b, e) && adm(e, c, d) && adm(b, c, g) && adm(a, g, d)) {
                const cplx lhs = cat.F(a, b, c, d, e, g) * cat.R(a, g, d);
                cplx rhs = 0;
                for (Label f = 0; f < n; ++f) {
                  rhs += cat.F(b, a, c, d, e, f) * cat.R(a, c, f) *
                         std::conj(cat.F(b, c, a, d, g, f));
                }
                rhs *= cat.R(a, b, e);
                note(rep.hexagon, std::abs(lhs - rhs), "hexagon",
                     "hexagon (under) at " + lbl(a) + lbl(b) + lbl(c) + "->" + lbl(d));
              }
            }

  // Unitarity of each F-matrix and of R.
  for (Label a = 0; a < n; ++a)
    for (Label b = 0; b < n; ++b)
      for (Label c = 0; c < n; ++c)
        for (Label d = 0; d < n; ++d) {
          std::vector<Label> es, fs;
          for (Label x = 0; x < n; ++x) {
            if (adm(a, b, x) && adm(x, c, d)) es.push_back(x);
            if (adm(b, c, x) && adm(a, x, d)) fs.push_back(x);
          }
          if (es.size() != fs.size()) {
            note(rep.unitarity, 1.0, "unitarity", "F-matrix is not square");
            continue;
          }
          if (es.empty()) continue;
          CMatrix M(es.size(), fs.size());
          for (size_t i = 0; i < es.size(); ++i)
            for (size_t j = 0; j < fs.size(); ++j)
              M(i, j) = cat.F(a, b, c, d, es[i], fs[j]);
          const double res =
              (M * M.adjoint() - CMatrix::Identity(M.rows(), M.rows())).cwiseAbs().maxCoeff();
          note(rep.unitarity, res, "unitarity",
               "F^{" + lbl(a) + lbl(b) + lbl(c) + "}_" + lbl(d));
        }
  for (Label a = 0; a < n; ++a)
    for (Label b = 0; b < n; ++b)
      for (Label c = 0; c < n; ++c)
        if (adm(a, b, c)) {
          note(rep.unitarity, std::abs(std::abs(cat.R(a, b, c)) - 1.0), "unitarity",
               "R^{" + lbl(a) + lbl(b) + "}_" + lbl(c));
        }

  // Vacuum normalization: F with a vacuum leg among a, b, c is 1, R^{0a} = R^{a0} = 1.
  for (const auto& [k, v] : cat.f_symbols()) {
    if (k[0] == 0 || k[1] == 0 || k[2] == 0) {
      note(rep.normalization, std::abs(v - cplx(1)), "normalization",
           "F with vacuum leg");
    }
  }
  for (Label a = 0; a < n; ++a) {
    note(rep.normalization, std::abs(cat.R(0, a, a) - cplx(1)), "normalization",
         "R^{0" + lbl(a) + "}");
    note(rep.normalization, std::abs(cat.R(a, 0, a) - cplx(1)), "normalization",
         "R^{" + lbl(a) + "0}");
  }
  return rep;
}

}  // namespace bcft
