#include "bcft/qsystem.hpp"

#include <cmath>
#include <sstream>

namespace bcft {

namespace {

int summand_row(const TreeBasis& b, Label c, int p, int q, Label sp) {
  return b.find(c, FusionTree{{p, q}, {sp, c}});
}

int summand_col(const TreeBasis& b, Label c, int r) {
  return b.find(c, FusionTree{{r}, {c}});
}

std::string key_string(const LambdaKey& k) {
  std::ostringstream os;
  os << "(" << k[0] << "," << k[1] << "," << k[2] << ")";
  return os.str();
}

void check_shape(const QSystemSpec& q, const CategoryPresentation& cat) {
  if (static_cast<int>(q.theta.size()) != cat.rank()) {
    throw StructuralError("theta has " + std::to_string(q.theta.size()) +
                          " multiplicities, category has rank " +
                          std::to_string(cat.rank()));
  }
  for (int n : q.theta) {
    if (n < 0) throw StructuralError("negative multiplicity in theta");
  }
  if (q.theta.empty() || q.theta[0] != 1) {
    throw StructuralError("theta must contain the vacuum exactly once");
  }
}

}  // namespace

double QSystemSpec::dimension(const CategoryPresentation& cat) const {
  double d = 0;
  for (size_t s = 0; s < theta.size(); ++s) d += theta[s] * cat.dim(static_cast<Label>(s));
  return d;
}

Morphism assemble_x(const QSystemSpec& q, const CategoryPresentation& cat, double tol) {
  check_shape(q, cat);
  const ObjectWord th = q.word();
  const std::vector<Label> sec = q.summand_sectors();
  const int m = static_cast<int>(sec.size());
  Morphism x = cat.zero(th, th * th);
  const TreeBasis& src = cat.basis(th);
  const TreeBasis& tgt = cat.basis(th * th);

  for (const auto& [key, value] : q.lambda) {
    const auto [p, qq, r] = key;
    if (p < 0 || p >= m || qq < 0 || qq >= m || r < 0 || r >= m) {
      throw StructuralError("lambda summand index out of range " + key_string(key));
    }
    if (!cat.admissible(sec[p], sec[qq], sec[r])) {
      throw StructuralError("lambda on non-admissible vertex " + key_string(key));
    }
    const Label c = sec[r];
    x.block(c)(summand_row(tgt, c, p, qq, sec[p]), summand_col(src, c, r)) = value;
  }
  const double iso = distance(compose(dagger(x), x), cat.identity(th));
  if (iso > tol) {
    throw ValidationError("x is not an isometry: |x* x - 1| = " + std::to_string(iso));
  }
  return x;
}

Morphism unit_morphism(const QSystemSpec& q, const CategoryPresentation& cat) {
  check_shape(q, cat);
  Morphism w = cat.zero(ObjectWord(), q.word());
  w.block(0)(0, 0) = 1.0;
  return w;
}

std::map<LambdaKey, cplx> extract_lambda(const QSystemSpec& shape, const Morphism& x,
                                         const CategoryPresentation& cat,
                                         double drop_below) {
  const ObjectWord th = shape.word();
  const std::vector<Label> sec = shape.summand_sectors();
  const int m = static_cast<int>(sec.size());
  const TreeBasis& src = cat.basis(th);
  const TreeBasis& tgt = cat.basis(th * th);
  std::map<LambdaKey, cplx> out;
  for (int p = 0; p < m; ++p)
    for (int q = 0; q < m; ++q)
      for (int r = 0; r < m; ++r) {
        if (!cat.admissible(sec[p], sec[q], sec[r])) continue;
        const Label c = sec[r];
        const cplx v = x.block(c)(summand_row(tgt, c, p, q, sec[p]), summand_col(src, c, r));
        if (std::abs(v) > drop_below) out[{p, q, r}] = v;
      }
  return out;
}

QSystemCheck validate_qsystem(const QSystemSpec& q, const CategoryPresentation& cat,
                              double tol) {
  QSystemCheck check;
  check_shape(q, cat);
  for (Label s = 0; s < cat.rank(); ++s) {
    if (q.theta[s] > std::floor(cat.dim(s) + tol)) {
      check.report.add("multiplicity_bound", "n_" + cat.ring().label(s) + " = " +
                                                 std::to_string(q.theta[s]) +
                                                 " exceeds d = " + std::to_string(cat.dim(s)));
    }
  }

  // Isometry is reported, not thrown, here.
  const Morphism x = assemble_x(q, cat, std::numeric_limits<double>::infinity());
  const ObjectWord th = q.word();
  const Morphism w = unit_morphism(q, cat);
  const Morphism id = cat.identity(th);
  const double dth = q.dimension(cat);

  check.isometry = distance(compose(dagger(x), x), id);
  if (check.isometry > tol) {
    check.report.add("isometry", "|x* x - 1| = " + std::to_string(check.isometry));
  }

  const Morphism expected = (1.0 / std::sqrt(dth)) * id;
  check.unit_left =
      distance(compose(dagger(cat.tensor_id_right(w, th)), x), expected);
  check.unit_right =
      distance(compose(dagger(cat.tensor_id_left(th, w)), x), expected);
  if (check.unit_left > tol) {
    check.report.add("unit_left", "|(w* x id) x - d^-1/2| = " + std::to_string(check.unit_left));
  }
  if (check.unit_right > tol) {
    check.report.add("unit_right",
                     "|(id x w*) x - d^-1/2| = " + std::to_string(check.unit_right));
  }

  check.associativity = distance(compose(cat.tensor_id_right(x, th), x),
                                 compose(cat.tensor_id_left(th, x), x));
  if (check.associativity > tol) {
    check.report.add("associativity",
                     "|(x x id) x - (id x x) x| = " + std::to_string(check.associativity));
  }
  return check;
}

double frobenius_check(const QSystemSpec& q, const CategoryPresentation& cat) {
  const Morphism x = assemble_x(q, cat, std::numeric_limits<double>::infinity());
  const ObjectWord th = q.word();
  return distance(compose(x, dagger(x)),
                  compose(cat.tensor_id_left(th, dagger(x)), cat.tensor_id_right(x, th)));
}

LocalityResult is_local(const QSystemSpec& q, const CategoryPresentation& cat, double tol) {
  const Morphism x = assemble_x(q, cat, std::numeric_limits<double>::infinity());
  const ObjectWord th = q.word();
  LocalityResult out;
  out.residual = distance(compose(cat.braiding(th, th, Orientation::plus), x), x);
  out.local = out.residual < tol;
  return out;
}

ChargedIntertwinerAlgebra charged_algebra(const QSystemSpec& q,
                                          const CategoryPresentation& cat,
                                          GammaConvention convention, double tol) {
  check_shape(q, cat);
  ChargedIntertwinerAlgebra alg;
  alg.charges = q.summand_sectors();
  const auto& sec = alg.charges;
  const int m = static_cast<int>(sec.size());
  const double dth = q.dimension(cat);
  const double scale = convention == GammaConvention::sqrt_index ? std::sqrt(dth) : 1.0;

  auto G = [&](int i, int j, int k) -> cplx {
    auto it = q.lambda.find({i, j, k});
    return it == q.lambda.end() ? cplx(0) : scale * it->second;
  };
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < m; ++k)
        if (cat.admissible(sec[i], sec[j], sec[k])) alg.gamma[{i, j, k}] = G(i, j, k);

  // Unit constraints Gamma^k_{0j} = delta_jk, Gamma^k_{i0} = delta_ik.
  for (int a = 0; a < m; ++a)
    for (int k = 0; k < m; ++k) {
      if (sec[a] != sec[k]) continue;
      const double target = a == k ? 1.0 : 0.0;
      alg.unit_residual = std::max({alg.unit_residual, std::abs(G(0, a, k) - target),
                                    std::abs(G(a, 0, k) - target)});
    }

  // sum_{n: s_n = e} G^n_ij G^l_nk = sum_m G^l_im G^m_jk conj(F^{ijk}_l[e, s_m]).
  const int rank = cat.rank();
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < m; ++k)
        for (int l = 0; l < m; ++l)
          for (Label e = 0; e < rank; ++e) {
            if (!cat.admissible(sec[i], sec[j], e) || !cat.admissible(e, sec[k], sec[l])) {
              continue;
            }
            cplx lhs = 0, rhs = 0;
            for (int n = 0; n < m; ++n) {
              if (sec[n] == e) lhs += G(i, j, n) * G(n, k, l);
            }
            for (int mm = 0; mm < m; ++mm) {
              if (!cat.admissible(sec[j], sec[k], sec[mm]) ||
                  !cat.admissible(sec[i], sec[mm], sec[l])) {
                continue;
              }
              rhs += G(i, mm, l) * G(j, k, mm) *
                     std::conj(cat.F(sec[i], sec[j], sec[k], sec[l], e, sec[mm]));
            }
            alg.associativity_residual =
                std::max(alg.associativity_residual, std::abs(lhs - rhs));
          }

  alg.orthogonality = CMatrix::Zero(m, m);
  for (int k = 0; k < m; ++k)
    for (int kk = 0; kk < m; ++kk) {
      if (sec[k] != sec[kk]) continue;
      cplx v = 0;
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) v += std::conj(G(i, j, k)) * G(i, j, kk);
      alg.orthogonality(k, kk) = v;
      alg.orthogonality_residual = std::max(
          alg.orthogonality_residual, std::abs(v - (k == kk ? dth : 0.0)));
    }

  const double scaled_tol = tol * std::max(1.0, dth);
  if (alg.unit_residual > tol) {
    throw InconsistencyError("charged intertwiners violate the unit constraints: residual " +
                             std::to_string(alg.unit_residual));
  }
  if (alg.associativity_residual > scaled_tol) {
    throw InconsistencyError("expansion is not associative: residual " +
                             std::to_string(alg.associativity_residual));
  }
  if (alg.orthogonality_residual > scaled_tol) {
    throw InconsistencyError("orthogonality sum differs from d(theta) delta: residual " +
                             std::to_string(alg.orthogonality_residual));
  }
  return alg;
}

QSystemSpec gauge_transform(const QSystemSpec& q, const CategoryPresentation& cat,
                            const std::vector<CMatrix>& gauge) {
  check_shape(q, cat);
  if (static_cast<int>(gauge.size()) != cat.rank()) {
    throw StructuralError("gauge needs one unitary per sector");
  }
  const ObjectWord th = q.word();
  Morphism U = cat.zero(th, th);
  for (Label s = 0; s < cat.rank(); ++s) {
    if (gauge[s].rows() != q.theta[s] || gauge[s].cols() != q.theta[s]) {
      throw StructuralError("gauge block for " + cat.ring().label(s) + " has wrong size");
    }
    U.block(s) = gauge[s];
  }
  if (q.theta[0] == 1 && std::abs(gauge[0](0, 0) - 1.0) > 1e-12) {
    throw StructuralError("gauge must fix the vacuum summand");
  }
  const Morphism x = assemble_x(q, cat, std::numeric_limits<double>::infinity());
  const Morphism y = compose(cat.tensor(U, U), compose(x, dagger(U)));
  QSystemSpec out{q.theta, extract_lambda(q, y, cat)};
  return out;
}

std::vector<double> fingerprint(const QSystemSpec& q, const CategoryPresentation& cat,
                                int digits) {
  const auto sec = q.summand_sectors();
  const int m = static_cast<int>(sec.size());
  const double scale = std::sqrt(q.dimension(cat));
  const double unit = std::pow(10.0, digits);
  std::vector<double> out;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < m; ++k) {
        if (!cat.admissible(sec[i], sec[j], sec[k])) continue;
        auto it = q.lambda.find({i, j, k});
        const double v = it == q.lambda.end() ? 0.0 : scale * std::abs(it->second);
        out.push_back(std::round(v * unit) / unit);
      }
  std::sort(out.begin(), out.end());
  return out;
}

namespace qsystems {

QSystemSpec trivial(const CategoryPresentation& cat) {
  QSystemSpec q;
  q.theta.assign(cat.rank(), 0);
  q.theta[0] = 1;
  q.lambda[{0, 0, 0}] = 1.0;
  return q;
}

QSystemSpec regular(const CategoryPresentation& cat, Label rho, double tol) {
  const FusionRing& ring = cat.ring();
  const Label bar = ring.dual(rho);
  QSystemSpec q;
  q.theta.assign(cat.rank(), 0);
  for (Label s = 0; s < cat.rank(); ++s) q.theta[s] = ring.N(bar, rho, s);

  const auto [R, Rbar] = cat.conjugation_pair(rho, tol);
  const double sd = std::sqrt(cat.dim(rho));
  const ObjectWord w_rho = ObjectWord::simple(rho);
  const ObjectWord w_bar = ObjectWord::simple(bar);
  const ObjectWord prod = w_bar * w_rho;
  const Morphism x_prod =
      (1.0 / sd) * cat.tensor_id_right(cat.tensor_id_left(w_bar, Rbar), w_rho);

  // Unitary from the product word onto its direct-sum decomposition.
  const ObjectWord th = q.word();
  Morphism U = cat.zero(prod, th);
  for (Label c = 0; c < cat.rank(); ++c) {
    if (q.theta[c] == 1) U.block(c)(0, 0) = 1.0;
  }
  const Morphism x = compose(cat.tensor(U, U), compose(x_prod, dagger(U)));
  q.lambda = extract_lambda(q, x, cat, 1e-14);
  return q;
}

QSystemSpec simple_current(const CategoryPresentation& cat, Label J, double tol) {
  const FusionRing& ring = cat.ring();
  if (J <= 0 || J >= cat.rank()) throw InputError("simple current must be a non-vacuum sector");
  if (ring.dual(J) != J || ring.N(J, J, 0) != 1 || std::abs(cat.dim(J) - 1.0) > tol) {
    throw InputError(ring.label(J) + " is not a self-dual simple current");
  }
  const cplx f = cat.F(J, J, J, J, 0, 0);
  if (std::abs(f - 1.0) > tol) {
    throw InconsistencyError("F^{JJJ}_J[0,0] = " + std::to_string(f.real()) +
                             " != 1: no simple-current Q-system for " + ring.label(J));
  }
  QSystemSpec q;
  q.theta.assign(cat.rank(), 0);
  q.theta[0] = 1;
  q.theta[J] = 1;
  const double v = 1.0 / std::sqrt(2.0);
  q.lambda = {{{0, 0, 0}, v}, {{0, 1, 1}, v}, {{1, 0, 1}, v}, {{1, 1, 0}, v}};
  return q;
}

QSystemSpec car(const CategoryPresentation& cat, Label psi, double tol) {
  return simple_current(cat, psi, tol);
}

}  // namespace qsystems

}  // namespace bcft
