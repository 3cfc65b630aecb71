#include "bcft/parallel.hpp"
#include "bcft/qsystem.hpp"

#include <unsupported/Eigen/NonLinearOptimization>
#include <unsupported/Eigen/NumericalDiff>

#include <cmath>
#include <numbers>
#include <random>

namespace bcft {

std::string to_string(QSearchStatus status) {
  switch (status) {
    case QSearchStatus::found: return "found";
    case QSearchStatus::no_solution: return "no_solution";
    case QSearchStatus::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

namespace {

struct Problem {
  std::vector<Label> sec;
  int m = 0;
  double dth = 1;
  std::vector<LambdaKey> unknowns;
  std::map<LambdaKey, int> unknown_index;
  std::map<LambdaKey, cplx> fixed;
  const CategoryPresentation* cat = nullptr;

  cplx value(const Eigen::VectorXd& v, int p, int q, int r) const {
    if (auto it = unknown_index.find({p, q, r}); it != unknown_index.end()) {
      return {v(2 * it->second), v(2 * it->second + 1)};
    }
    if (auto it = fixed.find({p, q, r}); it != fixed.end()) return it->second;
    return 0;
  }

  std::vector<cplx> residuals(const Eigen::VectorXd& v) const {
    std::vector<cplx> out;
    const int rank = cat->rank();
    auto adm = [&](Label a, Label b, Label c) { return cat->admissible(a, b, c); };
    // Isometry within each sector.
    for (int r = 0; r < m; ++r)
      for (int rr = r; rr < m; ++rr) {
        if (sec[r] != sec[rr]) continue;
        cplx s = 0;
        for (int p = 0; p < m; ++p)
          for (int q = 0; q < m; ++q) s += std::conj(value(v, p, q, r)) * value(v, p, q, rr);
        out.push_back(s - (r == rr ? 1.0 : 0.0));
      }
    // Associativity in coefficient form.
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        for (int k = 0; k < m; ++k)
          for (int l = 0; l < m; ++l)
            for (Label e = 0; e < rank; ++e) {
              if (!adm(sec[i], sec[j], e) || !adm(e, sec[k], sec[l])) continue;
              cplx lhs = 0, rhs = 0;
              for (int n = 0; n < m; ++n)
                if (sec[n] == e) lhs += value(v, i, j, n) * value(v, n, k, l);
              for (int mm = 0; mm < m; ++mm) {
                if (!adm(sec[j], sec[k], sec[mm]) || !adm(sec[i], sec[mm], sec[l])) continue;
                rhs += value(v, i, mm, l) * value(v, j, k, mm) *
                       std::conj(cat->F(sec[i], sec[j], sec[k], sec[l], e, sec[mm]));
              }
              out.push_back(lhs - rhs);
            }
    return out;
  }

  QSystemSpec spec(const std::vector<int>& theta, const Eigen::VectorXd& v) const {
    QSystemSpec q{theta, fixed};
    for (size_t u = 0; u < unknowns.size(); ++u) {
      const cplx c(v(2 * u), v(2 * u + 1));
      if (std::abs(c) > 1e-13) q.lambda[unknowns[u]] = c;
    }
    return q;
  }
};

struct Functor {
  using Scalar = double;
  enum { InputsAtCompileTime = Eigen::Dynamic, ValuesAtCompileTime = Eigen::Dynamic };
  using InputType = Eigen::VectorXd;
  using ValueType = Eigen::VectorXd;
  using JacobianType = Eigen::MatrixXd;

  const Problem* problem;
  int n_in;
  int n_out;

  int inputs() const { return n_in; }
  int values() const { return n_out; }
  int operator()(const Eigen::VectorXd& x, Eigen::VectorXd& f) const {
    const auto res = problem->residuals(x);
    f.setZero(n_out);
    for (size_t i = 0; i < res.size(); ++i) {
      f(2 * i) = res[i].real();
      f(2 * i + 1) = res[i].imag();
    }
    return 0;
  }
};

enum class StartOutcome { converged, stalled, unresolved };

// LM restarts from its own endpoint before a start counts as unresolved.
constexpr int kRounds = 4;
// First-order optimality threshold, scaled by the residual norm.
constexpr double kStationary = 1e-6;

struct StartResult {
  StartOutcome outcome = StartOutcome::unresolved;
  double residual = 0;
  Eigen::VectorXd x;
};

/// Fixes summand phases greedily: summand p is rotated so that the first
/// coefficient involving only summands <= p becomes real positive; when
/// that coefficient carries p with exponent |e| > 1 the remaining e-th root
/// of unity is chosen to maximize the resulting coefficient list.
QSystemSpec gauge_fix(const QSystemSpec& q, const CategoryPresentation& cat) {
  for (int n : q.theta) {
    if (n > 1) return q;
  }
  const int m = static_cast<int>(q.summand_sectors().size());
  std::vector<double> phase(m, 0.0);
  auto exponent = [](const LambdaKey& k, int p) {
    return (k[0] == p) + (k[1] == p) - (k[2] == p);
  };
  auto support_max = [](const LambdaKey& k) { return std::max({k[0], k[1], k[2]}); };
  auto rotated = [&](const LambdaKey& k, const cplx& v) {
    double a = 0;
    for (int p = 1; p < m; ++p) a += exponent(k, p) * phase[p];
    return v * std::polar(1.0, a);
  };

  for (int p = 1; p < m; ++p) {
    const LambdaKey* anchor = nullptr;
    for (const auto& [k, v] : q.lambda) {
      if (std::abs(v) < 1e-8 || support_max(k) != p || exponent(k, p) == 0) continue;
      anchor = &k;
      break;
    }
    if (!anchor) continue;
    const int e = exponent(*anchor, p);
    phase[p] = 0;
    const double base = -std::arg(rotated(*anchor, q.lambda.at(*anchor))) / e;
    double best_phase = base;
    std::vector<std::pair<double, double>> best;
    for (int root = 0; root < std::abs(e); ++root) {
      phase[p] = base + 2 * std::numbers::pi * root / std::abs(e);
      std::vector<std::pair<double, double>> values;
      for (const auto& [k, v] : q.lambda) {
        if (support_max(k) > p) continue;
        const cplx r = rotated(k, v);
        values.emplace_back(std::round(r.real() * 1e8), std::round(r.imag() * 1e8));
      }
      if (root == 0 || values > best) {
        best = std::move(values);
        best_phase = phase[p];
      }
    }
    phase[p] = best_phase;
  }

  std::vector<CMatrix> gauge(cat.rank());
  const auto sec = q.summand_sectors();
  for (Label s = 0; s < cat.rank(); ++s) gauge[s] = CMatrix::Zero(q.theta[s], q.theta[s]);
  for (int p = 0; p < m; ++p) gauge[sec[p]](0, 0) = std::polar(1.0, phase[p]);
  QSystemSpec out = gauge_transform(q, cat, gauge);
  // Snap to a 1e-12 grid so converged starts agree bit for bit.
  auto snap = [](double v) {
    const double r = std::round(v * 1e12) / 1e12;
    return r == 0 ? 0.0 : r;
  };
  for (auto it = out.lambda.begin(); it != out.lambda.end();) {
    it->second = {snap(it->second.real()), snap(it->second.imag())};
    it = it->second == cplx(0) ? out.lambda.erase(it) : std::next(it);
  }
  return out;
}

}  // namespace

QSearchResult search_qsystems(const CategoryPresentation& cat, const std::vector<int>& theta,
                              const QSearchOptions& options) {
  if (static_cast<int>(theta.size()) != cat.rank()) {
    throw InputError("theta has the wrong number of entries");
  }
  if (theta[0] != 1) throw InputError("theta must contain the vacuum exactly once");
  for (Label s = 0; s < cat.rank(); ++s) {
    if (theta[s] < 0 || theta[s] > std::floor(cat.dim(s) + options.tolerance)) {
      throw InputError("n_" + cat.ring().label(s) + " = " + std::to_string(theta[s]) +
                       " violates 0 <= n_s <= d_s");
    }
  }

  QSystemSpec shape{theta, {}};
  Problem pb;
  pb.cat = &cat;
  pb.sec = shape.summand_sectors();
  pb.m = static_cast<int>(pb.sec.size());
  pb.dth = shape.dimension(cat);
  const double unit = 1.0 / std::sqrt(pb.dth);
  for (int p = 0; p < pb.m; ++p)
    for (int q = 0; q < pb.m; ++q)
      for (int r = 0; r < pb.m; ++r) {
        if (!cat.admissible(pb.sec[p], pb.sec[q], pb.sec[r])) continue;
        if (p == 0 || q == 0) {
          const int other = p == 0 ? q : p;
          if (other == r) pb.fixed[{p, q, r}] = unit;
        } else {
          pb.unknown_index[{p, q, r}] = static_cast<int>(pb.unknowns.size());
          pb.unknowns.push_back({p, q, r});
        }
      }

  const int n_in = 2 * static_cast<int>(pb.unknowns.size());
  const int n_res = 2 * static_cast<int>(pb.residuals(Eigen::VectorXd::Zero(n_in)).size());
  Functor functor{&pb, n_in, std::max(n_res, n_in)};

  QSearchResult result;
  result.theta = theta;
  std::vector<StartResult> starts(n_in == 0 ? 1 : options.starts);

  parallel_for(static_cast<int>(starts.size()), options.threads, [&](int s) {
    StartResult& out = starts[s];
    std::seed_seq seq{static_cast<std::uint64_t>(options.seed), static_cast<std::uint64_t>(s)};
    std::mt19937_64 rng(seq);
    std::normal_distribution<double> gauss(0.0, unit);
    Eigen::VectorXd x(n_in);
    for (int i = 0; i < n_in; ++i) x(i) = gauss(rng);

    Eigen::NumericalDiff<Functor, Eigen::Central> diff(functor);
    Eigen::VectorXd f;
    Eigen::MatrixXd J(functor.values(), n_in);
    for (int round = 0; round < kRounds; ++round) {
      if (n_in > 0) {
        Eigen::LevenbergMarquardt<Eigen::NumericalDiff<Functor, Eigen::Central>> lm(diff);
        lm.parameters.maxfev = options.max_iterations * (n_in + 1);
        lm.parameters.xtol = 1e-15;
        lm.parameters.ftol = 1e-15;
        lm.minimize(x);
      }
      functor(x, f);
      out.residual = f.cwiseAbs().maxCoeff();
      out.x = x;
      if (out.residual < 1e-2 * options.tolerance) {
        out.outcome = StartOutcome::converged;
        return;
      }
      if (n_in == 0) {
        out.outcome = StartOutcome::stalled;
        return;
      }
      diff.df(x, J);
      if ((J.transpose() * f).cwiseAbs().maxCoeff() < kStationary * std::max(1.0, f.norm())) {
        out.outcome = StartOutcome::stalled;
        return;
      }
    }
    out.outcome = StartOutcome::unresolved;
  });

  result.best_residual = std::numeric_limits<double>::infinity();
  std::map<std::vector<double>, QSystemSpec> classes;
  for (const StartResult& s : starts) {
    result.best_residual = std::min(result.best_residual, s.residual);
    if (s.outcome == StartOutcome::stalled) ++result.stationary_starts;
    if (s.outcome != StartOutcome::converged) continue;
    QSystemSpec q = pb.spec(theta, s.x);
    if (!validate_qsystem(q, cat, options.tolerance).ok()) continue;
    ++result.converged_starts;
    q = gauge_fix(q, cat);
    auto fp = fingerprint(q, cat, 6);
    auto it = classes.find(fp);
    // Keep the lexicographically smallest representative so the choice does
    // not depend on which start found the class first.
    if (it == classes.end()) {
      classes.emplace(std::move(fp), std::move(q));
    } else {
      auto key = [](const QSystemSpec& a) {
        std::vector<std::pair<double, double>> v;
        for (const auto& [k, c] : a.lambda) {
          v.emplace_back(std::round(c.real() * 1e8), std::round(c.imag() * 1e8));
        }
        return v;
      };
      if (key(q) < key(it->second)) it->second = std::move(q);
    }
  }

  for (auto& [fp, q] : classes) {
    result.fingerprints.push_back(fp);
    result.solutions.push_back(std::move(q));
  }
  if (!result.solutions.empty()) {
    result.status = QSearchStatus::found;
  } else if (result.stationary_starts == static_cast<int>(starts.size())) {
    result.status = QSearchStatus::no_solution;
  } else {
    result.status = QSearchStatus::inconclusive;
  }
  return result;
}

}  // namespace bcft
