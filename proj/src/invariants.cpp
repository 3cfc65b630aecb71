#include "bcft/classify.hpp"
#include "bcft/parallel.hpp"

#include <algorithm>
#include <cmath>

namespace bcft {

double invariant_residual(const ModularData& md, const IMatrix& Z) {
  const CMatrix Zc = Z.cast<double>().cast<cplx>();
  const CMatrix T = md.T().asDiagonal();
  return std::max((Zc * md.S() - md.S() * Zc).cwiseAbs().maxCoeff(),
                  (Zc * T - T * Zc).cwiseAbs().maxCoeff());
}

namespace {

struct Entry {
  int s, t;
};

/// Reduced row echelon form in place; returns pivot columns.
std::vector<int> rref(RMatrix& M, double eps) {
  std::vector<int> pivots;
  int row = 0;
  for (int col = 0; col < M.cols() && row < M.rows(); ++col) {
    Eigen::Index best;
    const double mag = M.col(col).segment(row, M.rows() - row).cwiseAbs().maxCoeff(&best);
    if (mag < eps) continue;
    M.row(row).swap(M.row(row + best));
    M.row(row) /= M(row, col);
    for (int r = 0; r < M.rows(); ++r) {
      if (r != row && std::abs(M(r, col)) > 0) M.row(r) -= M(r, col) * M.row(row);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace

std::vector<IMatrix> enumerate_modular_invariants(const ModularData& md,
                                                  const EnumerationOptions& options) {
  const int n = md.rank();
  const CMatrix& S = md.S();
  const CVector& T = md.T();
  const double tol = options.tolerance;

  // Unknowns: entries allowed by ZT = TZ.
  std::vector<Entry> vars;
  std::vector<std::vector<int>> var_of(n, std::vector<int>(n, -1));
  for (int s = 0; s < n; ++s)
    for (int t = 0; t < n; ++t)
      if (std::abs(T(s) - T(t)) < 1e-7) {
        var_of[s][t] = static_cast<int>(vars.size());
        vars.push_back({s, t});
      }
  const int k = static_cast<int>(vars.size());

  // ZS - SZ = 0 as a real linear system on the unknowns.
  RMatrix A = RMatrix::Zero(2 * n * n, k);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const int row = 2 * (i * n + j);
      for (int m = 0; m < n; ++m) {
        if (int v = var_of[i][m]; v >= 0) {
          A(row, v) += S(m, j).real();
          A(row + 1, v) += S(m, j).imag();
        }
        if (int v = var_of[m][j]; v >= 0) {
          A(row, v) -= S(i, m).real();
          A(row + 1, v) -= S(i, m).imag();
        }
      }
    }

  Eigen::JacobiSVD<RMatrix> svd(A, Eigen::ComputeFullV);
  const RVector sv = svd.singularValues();
  const double smax = sv.size() ? sv.maxCoeff() : 0.0;
  int rank = 0;
  double kept_min = std::numeric_limits<double>::infinity(), dropped_max = 0;
  for (int i = 0; i < sv.size(); ++i) {
    if (sv(i) > 1e-8 * std::max(smax, 1.0)) {
      ++rank;
      kept_min = std::min(kept_min, sv(i));
    } else {
      dropped_max = std::max(dropped_max, sv(i));
    }
  }
  if (dropped_max > 0 && kept_min / dropped_max < 1e3) {
    throw NumericError("commutant of S and T is numerically ill-defined (singular value gap " +
                       std::to_string(kept_min / dropped_max) + ")");
  }
  const int nullity = k - rank;
  RMatrix basis = svd.matrixV().rightCols(nullity).transpose();
  const std::vector<int> pivots = rref(basis, 1e-9);
  if (static_cast<int>(pivots.size()) != nullity) {
    throw NumericError("commutant basis is rank deficient");
  }

  // Every unknown is a fixed combination of the pivot unknowns.
  const RVector d = (S.row(0).real().array() / S(0, 0).real()).matrix();
  std::vector<long long> bound(k);
  for (int v = 0; v < k; ++v) {
    bound[v] = options.max_entry
                   ? *options.max_entry
                   : static_cast<long long>(std::floor(d(vars[v].s) * d(vars[v].t) + tol));
  }
  std::vector<int> last_dep(k, -1);
  for (int v = 0; v < k; ++v)
    for (int j = 0; j < nullity; ++j)
      if (std::abs(basis(j, v)) > 1e-9) last_dep[v] = j;
  std::vector<std::vector<int>> checks(nullity);
  for (int v = 0; v < k; ++v) {
    if (last_dep[v] >= 0) checks[last_dep[v]].push_back(v);
  }
  const int vac = var_of[0][0];
  if (vac < 0 || last_dep[vac] < 0) return {};

  auto range = [&](int j) -> std::pair<long long, long long> {
    if (pivots[j] == vac) return {1, 1};
    return {0, bound[pivots[j]]};
  };

  auto consistent = [&](const std::vector<long long>& val, int j) {
    for (int v : checks[j]) {
      double x = 0;
      for (int jj = 0; jj <= j; ++jj) x += basis(jj, v) * static_cast<double>(val[jj]);
      const double r = std::round(x);
      if (std::abs(x - r) > 1e-6 || r < 0 || r > bound[v]) return false;
      if (v == vac && r != 1) return false;
    }
    return true;
  };

  auto build = [&](const std::vector<long long>& val) {
    IMatrix Z = IMatrix::Zero(n, n);
    for (int v = 0; v < k; ++v) {
      double x = 0;
      for (int j = 0; j < nullity; ++j) x += basis(j, v) * static_cast<double>(val[j]);
      Z(vars[v].s, vars[v].t) = std::llround(x);
    }
    return Z;
  };

  const auto [lo0, hi0] = range(0);
  const int branches = static_cast<int>(hi0 - lo0 + 1);
  std::vector<std::vector<IMatrix>> found(branches);
  parallel_for(branches, options.threads, [&](int b) {
    std::vector<long long> val(nullity, 0);
    val[0] = lo0 + b;
    if (!consistent(val, 0)) return;
    auto dfs = [&](auto&& self, int j) -> void {
      if (j == nullity) {
        IMatrix Z = build(val);
        if (invariant_residual(md, Z) < 1e-7) found[b].push_back(std::move(Z));
        return;
      }
      const auto [lo, hi] = range(j);
      for (long long x = lo; x <= hi; ++x) {
        val[j] = x;
        if (consistent(val, j)) self(self, j + 1);
      }
      val[j] = 0;
    };
    dfs(dfs, 1);
  });

  std::vector<IMatrix> out;
  for (auto& f : found)
    for (auto& Z : f) out.push_back(std::move(Z));
  auto key = [](const IMatrix& Z) {
    return std::vector<long long>(Z.data(), Z.data() + Z.size());
  };
  std::sort(out.begin(), out.end(), [&](const IMatrix& a, const IMatrix& b) {
    const IMatrix at = a.transpose(), bt = b.transpose();  // row-major order
    return key(at) < key(bt);
  });
  return out;
}

}  // namespace bcft
