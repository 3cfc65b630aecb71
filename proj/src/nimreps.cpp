#include "bcft/classify.hpp"
#include "bcft/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace bcft {

bool Nimrep::operator==(const Nimrep& other) const {
  if (size != other.size || n.size() != other.n.size()) return false;
  for (size_t s = 0; s < n.size(); ++s) {
    if (n[s] != other.n[s]) return false;
  }
  return true;
}

ValidationReport validate_nimrep(const FusionRing& ring, const Nimrep& nimrep) {
  ValidationReport report;
  const int r = ring.rank();
  const int m = nimrep.size;
  if (static_cast<int>(nimrep.n.size()) != r) {
    throw StructuralError("nimrep has " + std::to_string(nimrep.n.size()) +
                          " matrices, ring has rank " + std::to_string(r));
  }
  for (int s = 0; s < r; ++s) {
    if (nimrep.n[s].rows() != m || nimrep.n[s].cols() != m) {
      throw StructuralError("nimrep matrix for " + ring.label(s) + " has wrong shape");
    }
    if ((nimrep.n[s].array() < 0).any()) {
      report.add("nonnegative", "n^" + ring.label(s) + " has a negative entry");
    }
  }
  if (nimrep.n[0] != IMatrix::Identity(m, m)) report.add("vacuum", "n^0 is not the identity");
  for (int s = 0; s < r; ++s) {
    if (nimrep.n[ring.dual(s)] != nimrep.n[s].transpose()) {
      report.add("duality", "n^{dual(" + ring.label(s) + ")} != (n^" + ring.label(s) + ")^T");
    }
  }
  for (int s = 0; s < r; ++s)
    for (int t = 0; t < r; ++t) {
      IMatrix rhs = IMatrix::Zero(m, m);
      for (int u = 0; u < r; ++u) rhs += ring.N(s, t, u) * nimrep.n[u];
      if (nimrep.n[s] * nimrep.n[t] != rhs) {
        report.add("representation",
                   "n^" + ring.label(s) + " n^" + ring.label(t) + " != sum_u N n^u");
      }
    }
  return report;
}

Nimrep regular_nimrep(const FusionRing& ring) {
  Nimrep out;
  out.size = ring.rank();
  for (int s = 0; s < ring.rank(); ++s) out.n.push_back(fusion_matrix(ring, s));
  return out;
}

namespace {

std::vector<long long> flat_key(const Nimrep& x) {
  std::vector<long long> key;
  for (const auto& m : x.n)
    for (int a = 0; a < m.rows(); ++a)
      for (int b = 0; b < m.cols(); ++b) key.push_back(m(a, b));
  return key;
}

}  // namespace

Nimrep canonical_form(const Nimrep& nimrep) {
  const int m = nimrep.size;
  const int r = static_cast<int>(nimrep.n.size());
  using Perm = std::vector<int>;

  auto chunk = [&](const Perm& p, int k) {
    std::vector<long long> out;
    for (int s = 1; s < r; ++s) {
      for (int a = 0; a < k; ++a) out.push_back(nimrep.n[s](p[a], p[k]));
      for (int b = 0; b <= k; ++b) out.push_back(nimrep.n[s](p[k], p[b]));
    }
    return out;
  };

  // Breadth-first refinement: keep every partial labeling whose entry
  // sequence is minimal so far.
  std::vector<Perm> frontier{Perm{}};
  for (int k = 0; k < m; ++k) {
    std::vector<Perm> next;
    std::vector<long long> best;
    for (const Perm& p : frontier) {
      std::vector<bool> used(m, false);
      for (int x : p) used[x] = true;
      for (int x = 0; x < m; ++x) {
        if (used[x]) continue;
        Perm q = p;
        q.push_back(x);
        auto c = chunk(q, k);
        if (next.empty() || c < best) {
          best = std::move(c);
          next.clear();
          next.push_back(std::move(q));
        } else if (c == best) {
          next.push_back(std::move(q));
        }
      }
    }
    frontier = std::move(next);
  }
  const Perm& p = frontier.front();
  Nimrep out{m, {}};
  for (const auto& mat : nimrep.n) {
    IMatrix q(m, m);
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b) q(a, b) = mat(p[a], p[b]);
    out.n.push_back(std::move(q));
  }
  return out;
}

namespace {

// n^u = (n^s n^t - sum_v N^{st}_v n^v) / N^{st}_u, or n^u = (n^s)^T when
// `transpose` is set.
struct Derivation {
  Label u;
  Label s, t;
  long long divisor = 1;
  std::vector<std::pair<Label, long long>> known;
  bool transpose = false;
};

struct Plan {
  std::vector<Label> generators;
  // after[i] runs once generators[0..i] are filled.
  std::vector<std::vector<Derivation>> after;
};

Plan make_plan(const FusionRing& ring) {
  const int r = ring.rank();
  std::vector<bool> known(r, false);
  known[0] = true;
  int count = 1;
  Plan plan;
  std::vector<Derivation> pending;

  auto mark = [&](Label u) {
    if (!known[u]) {
      known[u] = true;
      ++count;
    }
  };
  auto add_dual = [&](Label u) {
    const Label d = ring.dual(u);
    if (!known[d]) {
      pending.push_back({d, u, 0, 1, {}, true});
      mark(d);
    }
  };

  while (count < r) {
    bool progress = false;
    for (Label s = 0; s < r && !progress; ++s) {
      if (!known[s]) continue;
      for (Label t = 0; t < r && !progress; ++t) {
        if (!known[t]) continue;
        std::vector<Label> unknown;
        for (Label u = 0; u < r; ++u)
          if (ring.N(s, t, u) > 0 && !known[u]) unknown.push_back(u);
        if (unknown.size() != 1) continue;
        Derivation d{unknown[0], s, t, ring.N(s, t, unknown[0]), {}, false};
        for (Label v = 0; v < r; ++v)
          if (ring.N(s, t, v) > 0 && v != d.u) d.known.emplace_back(v, ring.N(s, t, v));
        pending.push_back(d);
        mark(d.u);
        add_dual(d.u);
        progress = true;
      }
    }
    if (progress) continue;
    if (!plan.generators.empty() || !pending.empty()) {
      plan.after.push_back(std::move(pending));
      pending.clear();
    }
    Label g = 0;
    while (known[g]) ++g;
    plan.generators.push_back(g);
    mark(g);
    add_dual(g);
  }
  plan.after.push_back(std::move(pending));
  return plan;
}

class NimrepSearch {
 public:
  NimrepSearch(const FusionRing& ring, int size, const EnumerationOptions& opt)
      : ring_(ring), r_(ring.rank()), m_(size), plan_(make_plan(ring)) {
    const RVector d = fp_dimensions(ring, opt.tolerance);
    bound_.resize(r_);
    row_norm_.resize(r_);
    for (int s = 0; s < r_; ++s) {
      bound_[s] = opt.max_entry ? *opt.max_entry
                                : static_cast<long long>(std::floor(d(s) + opt.tolerance));
      row_norm_[s] = static_cast<long long>(std::floor(d(s) * d(s) + opt.tolerance));
    }
  }

  const Plan& plan() const { return plan_; }

  /// Candidate first rows of the first generator (top-level branches).
  std::vector<std::vector<long long>> first_rows() const {
    std::vector<std::vector<long long>> rows;
    const Label g = plan_.generators[0];
    std::vector<long long> row(m_, 0);
    auto rec = [&](auto&& self, int b, long long norm) -> void {
      if (b == m_) {
        if (norm > 0) rows.push_back(row);
        return;
      }
      for (long long v = 0; v <= bound_[g] && norm + v * v <= row_norm_[g]; ++v) {
        row[b] = v;
        self(self, b + 1, norm + v * v);
      }
      row[b] = 0;
    };
    rec(rec, 0, 0);
    return rows;
  }

  std::vector<Nimrep> run(const std::vector<long long>& first_row) {
    mats_.assign(r_, IMatrix::Zero(m_, m_));
    mats_[0] = IMatrix::Identity(m_, m_);
    results_.clear();
    const Label g = plan_.generators[0];
    const bool sym = ring_.dual(g) == g;
    for (int b = 0; b < m_; ++b) {
      mats_[g](0, b) = first_row[b];
      if (sym) mats_[g](b, 0) = first_row[b];
    }
    if (!row_done(0, 0)) return {};
    fill(0, 1, sym ? 1 : 0);
    return std::move(results_);
  }

 private:
  // Fill generator gi starting at entry (a, b); symmetric generators fill
  // only b >= a.
  void fill(int gi, int a, int b) {
    const Label g = plan_.generators[gi];
    const bool sym = ring_.dual(g) == g;
    if (a == m_) {
      if (!derive(gi)) return;
      if (gi + 1 == static_cast<int>(plan_.generators.size())) {
        leaf();
        return;
      }
      fill(gi + 1, 0, 0);
      return;
    }
    if (b == m_) {
      if (!row_done(gi, a)) return;
      const int na = a + 1;
      fill(gi, na, sym ? na : 0);
      return;
    }
    IMatrix& n = mats_[g];
    long long norm = 0;
    for (int c = 0; c < b; ++c) norm += n(a, c) * n(a, c);
    for (long long v = 0; v <= bound_[g] && norm + v * v <= row_norm_[g]; ++v) {
      n(a, b) = v;
      if (sym) n(b, a) = v;
      if (col_norm(n, b) > row_norm_[g]) break;
      fill(gi, a, b + 1);
    }
    n(a, b) = 0;
    if (sym) n(b, a) = 0;
  }

  /// Column norm with unfilled entries still zero.
  long long col_norm(const IMatrix& n, int col) const {
    long long norm = 0;
    for (int c = 0; c < m_; ++c) norm += n(c, col) * n(c, col);
    return norm;
  }

  /// Row a of generator gi is complete: norm and early product checks.
  bool row_done(int gi, int a) {
    const Label g = plan_.generators[gi];
    const IMatrix& n = mats_[g];
    long long norm = 0;
    for (int c = 0; c < m_; ++c) norm += n(a, c) * n(a, c);
    if (norm == 0 || norm > row_norm_[g]) return false;
    if (ring_.dual(g) != g) return true;
    // Leading (a+1) x (a+1) block of derivations built from this symmetric
    // generator and the vacuum only.
    if (gi >= static_cast<int>(plan_.after.size())) return true;
    const int k = a + 1;
    for (const Derivation& d : plan_.after[gi]) {
      if (d.transpose) continue;
      if (!early_ok(d, g)) continue;
      IMatrix block = mats_[d.s].topRows(k) * mats_[d.t].leftCols(k);
      for (const auto& [v, c] : d.known) block -= c * mats_[v].topLeftCorner(k, k);
      for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) {
          const long long x = block(i, j);
          if (x < 0 || x % d.divisor != 0 || x / d.divisor > bound_[d.u]) return false;
        }
    }
    return true;
  }

  bool early_ok(const Derivation& d, Label g) const {
    auto base = [&](Label v) { return v == 0 || v == g; };
    if (!base(d.s) || !base(d.t)) return false;
    for (const auto& [v, c] : d.known)
      if (!base(v)) return false;
    return true;
  }

  bool derive(int gi) {
    if (gi >= static_cast<int>(plan_.after.size())) return true;
    for (const Derivation& d : plan_.after[gi]) {
      if (d.transpose) {
        mats_[d.u] = mats_[d.s].transpose();
        continue;
      }
      IMatrix x = mats_[d.s] * mats_[d.t];
      for (const auto& [v, c] : d.known) x -= c * mats_[v];
      for (int i = 0; i < m_; ++i)
        for (int j = 0; j < m_; ++j) {
          if (x(i, j) < 0 || x(i, j) % d.divisor != 0) return false;
          x(i, j) /= d.divisor;
          if (x(i, j) > bound_[d.u]) return false;
        }
      mats_[d.u] = std::move(x);
    }
    return true;
  }

  void leaf() {
    Nimrep cand{m_, mats_};
    if (!validate_nimrep(ring_, cand).ok()) return;
    results_.push_back(canonical_form(cand));
  }

  const FusionRing& ring_;
  int r_;
  int m_;
  Plan plan_;
  std::vector<long long> bound_;
  std::vector<long long> row_norm_;
  std::vector<IMatrix> mats_;
  std::vector<Nimrep> results_;
};

}  // namespace

std::vector<Nimrep> enumerate_nimreps(const FusionRing& ring, int size,
                                      const EnumerationOptions& options) {
  if (size < 1) throw InputError("nimrep size must be >= 1");
  if (!validate_ring(ring).ok()) throw ValidationError("fusion ring is invalid");
  if (ring.rank() == 1) {
    // Only n^0 = 1; every size works, and all are relabelings of one another.
    return {Nimrep{size, {IMatrix::Identity(size, size)}}};
  }

  const NimrepSearch proto(ring, size, options);
  const auto rows = proto.first_rows();
  std::vector<std::vector<Nimrep>> found(rows.size());
  parallel_for(static_cast<int>(rows.size()), options.threads, [&](int i) {
    NimrepSearch search(ring, size, options);
    found[i] = search.run(rows[i]);
  });

  std::set<std::vector<long long>> seen;
  std::vector<std::pair<std::vector<long long>, Nimrep>> keyed;
  for (auto& batch : found)
    for (auto& x : batch) {
      auto key = flat_key(x);
      if (seen.insert(key).second) keyed.emplace_back(std::move(key), std::move(x));
    }
  std::sort(keyed.begin(), keyed.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<Nimrep> out;
  for (auto& [k, x] : keyed) out.push_back(std::move(x));
  return out;
}

}  // namespace bcft
