#include "bcft/catalog.hpp"

#include <cmath>
#include <functional>
#include <numbers>

namespace bcft::catalog {

namespace {

using std::numbers::pi;

FusionRing ring_from_rule(std::vector<std::string> labels, std::vector<Label> dual,
                          const std::function<int(Label, Label, Label)>& rule) {
  const int n = static_cast<int>(labels.size());
  std::vector<int> mult(static_cast<size_t>(n) * n * n);
  for (int s = 0; s < n; ++s)
    for (int t = 0; t < n; ++t)
      for (int u = 0; u < n; ++u) mult[(static_cast<size_t>(s) * n + t) * n + u] = rule(s, t, u);
  return FusionRing(std::move(labels), std::move(dual), std::move(mult));
}

CVector t_phases(const std::vector<double>& h, double c) {
  CVector T(h.size());
  for (size_t s = 0; s < h.size(); ++s) {
    T(s) = std::polar(1.0, 2 * pi * (h[s] - c / 24.0));
  }
  return T;
}

/// All admissible F entries, filled from `value`.
std::map<FKey, cplx> fill_f(const FusionRing& ring,
                            const std::function<cplx(const FKey&)>& value) {
  std::map<FKey, cplx> F;
  const int n = ring.rank();
  auto adm = [&](Label a, Label b, Label c) { return ring.N(a, b, c) > 0; };
  for (Label a = 0; a < n; ++a)
    for (Label b = 0; b < n; ++b)
      for (Label c = 0; c < n; ++c)
        for (Label d = 0; d < n; ++d)
          for (Label e = 0; e < n; ++e)
            for (Label f = 0; f < n; ++f)
              if (adm(a, b, e) && adm(e, c, d) && adm(b, c, f) && adm(a, f, d)) {
                const FKey k{a, b, c, d, e, f};
                F[k] = value(k);
              }
  return F;
}

std::map<RKey, cplx> fill_r(const FusionRing& ring,
                            const std::function<cplx(const RKey&)>& value) {
  std::map<RKey, cplx> R;
  const int n = ring.rank();
  for (Label a = 0; a < n; ++a)
    for (Label b = 0; b < n; ++b)
      for (Label c = 0; c < n; ++c)
        if (ring.N(a, b, c) > 0) R[{a, b, c}] = value({a, b, c});
  return R;
}

// q-numbers at q = exp(2 pi i / (k + 2)).
class QNumbers {
 public:
  explicit QNumbers(int level) : k_(level) {}
  double number(int n) const {
    return std::sin(n * pi / (k_ + 2)) / std::sin(pi / (k_ + 2));
  }
  double factorial(int n) const {
    double r = 1;
    for (int i = 2; i <= n; ++i) r *= number(i);
    return r;
  }
  // Arguments are doubled spins.
  double triangle(int a, int b, int c) const {
    return std::sqrt(factorial((a + b - c) / 2) * factorial((a - b + c) / 2) *
                     factorial((-a + b + c) / 2) / factorial((a + b + c) / 2 + 1));
  }
  double six_j(int j1, int j2, int j12, int j3, int j, int j23) const {
    const int a1 = (j1 + j2 + j12) / 2, a2 = (j12 + j3 + j) / 2;
    const int a3 = (j2 + j3 + j23) / 2, a4 = (j1 + j23 + j) / 2;
    const int b1 = (j1 + j2 + j3 + j) / 2, b2 = (j1 + j12 + j3 + j23) / 2;
    const int b3 = (j2 + j12 + j + j23) / 2;
    const int zmin = std::max({a1, a2, a3, a4});
    const int zmax = std::min({b1, b2, b3});
    double sum = 0;
    for (int z = zmin; z <= zmax; ++z) {
      const double term =
          factorial(z + 1) /
          (factorial(z - a1) * factorial(z - a2) * factorial(z - a3) *
           factorial(z - a4) * factorial(b1 - z) * factorial(b2 - z) * factorial(b3 - z));
      sum += (z % 2 == 0 ? term : -term);
    }
    return triangle(j1, j2, j12) * triangle(j12, j3, j) * triangle(j2, j3, j23) *
           triangle(j1, j23, j) * sum;
  }

 private:
  int k_;
};

std::string spin_label(int twice) {
  return twice % 2 == 0 ? std::to_string(twice / 2) : std::to_string(twice) + "/2";
}

}  // namespace

CategoryData ising() {
  // 0 = vacuum, 1 = sigma (h = 1/16), 2 = psi (h = 1/2).
  FusionRing ring = ring_from_rule({"0", "1/16", "1/2"}, {0, 1, 2},
                                   [](Label s, Label t, Label u) -> int {
                                     static const int table[3][3][3] = {
                                         {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}},
                                         {{0, 1, 0}, {1, 0, 1}, {0, 1, 0}},
                                         {{0, 0, 1}, {0, 1, 0}, {1, 0, 0}}};
                                     return table[s][t][u];
                                   });
  const double r2 = std::sqrt(2.0);
  CMatrix S(3, 3);
  S << 0.5, r2 / 2, 0.5, r2 / 2, 0, -r2 / 2, 0.5, -r2 / 2, 0.5;
  const double c = 0.5;
  ModularData md(ring, S, t_phases({0.0, 1.0 / 16, 0.5}, c));

  const Label sig = 1, psi = 2;
  auto F = fill_f(ring, [&](const FKey& k) -> cplx {
    const auto [a, b, cc, d, e, f] = k;
    if (a == sig && b == sig && cc == sig && d == sig) {
      const double sign = (e == psi && f == psi) ? -1.0 : 1.0;
      return sign / r2;
    }
    if (a == sig && b == psi && cc == sig && d == psi) return -1.0;
    if (a == psi && b == sig && cc == psi && d == sig) return -1.0;
    return 1.0;
  });
  auto R = fill_r(ring, [&](const RKey& k) -> cplx {
    const auto [a, b, cc] = k;
    if (a == sig && b == sig) return std::polar(1.0, cc == 0 ? -pi / 8 : 3 * pi / 8);
    if ((a == sig && b == psi) || (a == psi && b == sig)) return cplx(0, -1);
    if (a == psi && b == psi) return -1.0;
    return 1.0;
  });
  return CategoryData{ring, md, CategoryPresentation(ring, F, R), c};
}

CategoryData fibonacci() {
  FusionRing ring = ring_from_rule({"1", "tau"}, {0, 1},
                                   [](Label s, Label t, Label u) -> int {
                                     if (s == 0) return t == u;
                                     if (t == 0) return s == u;
                                     return 1;  // tau tau = 1 + tau
                                   });
  const double phi = (1 + std::sqrt(5.0)) / 2;
  const double norm = 1 / std::sqrt(2 + phi);
  CMatrix S(2, 2);
  S << norm, norm * phi, norm * phi, -norm;
  const double c = 14.0 / 5;
  ModularData md(ring, S, t_phases({0.0, 0.4}, c));

  auto F = fill_f(ring, [&](const FKey& k) -> cplx {
    const auto [a, b, cc, d, e, f] = k;
    if (a == 1 && b == 1 && cc == 1 && d == 1) {
      if (e == 0 && f == 0) return 1 / phi;
      if (e == 1 && f == 1) return -1 / phi;
      return 1 / std::sqrt(phi);
    }
    return 1.0;
  });
  auto R = fill_r(ring, [&](const RKey& k) -> cplx {
    const auto [a, b, cc] = k;
    if (a == 1 && b == 1) return std::polar(1.0, cc == 0 ? -4 * pi / 5 : 3 * pi / 5);
    return 1.0;
  });
  return CategoryData{ring, md, CategoryPresentation(ring, F, R), c};
}

CategoryData su2(int level) {
  if (level < 1) throw InputError("su2 level must be >= 1");
  const int k = level;
  const int n = k + 1;
  std::vector<std::string> labels;
  std::vector<Label> dual;
  for (int a = 0; a < n; ++a) {
    labels.push_back(spin_label(a));
    dual.push_back(a);
  }
  FusionRing ring = ring_from_rule(labels, dual, [k](Label a, Label b, Label c) -> int {
    return std::abs(a - b) <= c && c <= std::min(a + b, 2 * k - a - b) &&
           (a + b + c) % 2 == 0;
  });

  CMatrix S(n, n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      S(a, b) = std::sqrt(2.0 / (k + 2)) * std::sin(pi * (a + 1) * (b + 1) / (k + 2));
  const double c = 3.0 * k / (k + 2);
  std::vector<double> h(n);
  for (int a = 0; a < n; ++a) h[a] = a * (a + 2) / (4.0 * (k + 2));
  ModularData md(ring, S, t_phases(h, c));

  const QNumbers q(k);
  auto F = fill_f(ring, [&](const FKey& key) -> cplx {
    const auto [a, b, cc, d, e, f] = key;
    const int sign_exp = (a + b + cc + d) / 2;
    const double sign = sign_exp % 2 == 0 ? 1.0 : -1.0;
    return sign * std::sqrt(q.number(e + 1) * q.number(f + 1)) *
           q.six_j(a, b, e, cc, d, f);
  });
  auto R = fill_r(ring, [&](const RKey& key) -> cplx {
    const auto [a, b, cc] = key;
    const int sign_exp = (cc - a - b) / 2;
    const double sign = sign_exp % 2 == 0 ? 1.0 : -1.0;
    const double casimir = (cc * (cc + 2) - a * (a + 2) - b * (b + 2)) / 8.0;
    return sign * std::polar(1.0, 2 * pi * casimir / (k + 2));
  });
  return CategoryData{ring, md, CategoryPresentation(ring, F, R), c};
}

CategoryData trivial() {
  const FusionRing ring = FusionRing::trivial();
  ModularData md(ring, CMatrix::Ones(1, 1), CVector::Ones(1));
  CategoryPresentation cat(ring, {{FKey{0, 0, 0, 0, 0, 0}, 1.0}}, {{RKey{0, 0, 0}, 1.0}});
  return CategoryData{ring, md, cat, std::nullopt};
}

CategoryData by_name(const std::string& name, std::optional<int> level) {
  if (name == "ising") return ising();
  if (name == "fibonacci") return fibonacci();
  if (name == "su2") {
    if (!level) throw InputError("catalog su2 requires --level");
    return su2(*level);
  }
  throw InputError("unknown catalog '" + name + "' (expected ising, fibonacci, su2)");
}

}  // namespace bcft::catalog

namespace bcft {

ValidationReport validate_category(const CategoryData& data, double tol) {
  ValidationReport report = validate_ring(data.ring);
  if (!(data.modular.ring() == data.ring)) {
    report.add("modular_ring", "modular data is attached to a different fusion ring");
  }
  const ValidationReport modular = validate_modular(data.modular, tol);
  report.merge(modular);
  if (report.ok()) {
    try {
      const FusionRing v = verlinde_fusion(data.modular, tol);
      if (v.multiplicities() != data.ring.multiplicities()) {
        report.add("verlinde", "Verlinde formula does not reproduce the fusion rules");
      } else {
        quantum_dimensions(data.modular, tol);
      }
    } catch (const Error& e) {
      report.add("verlinde", e.what());
    }
  }
  if (data.presentation) {
    if (!(data.presentation->ring() == data.ring)) {
      report.add("presentation_ring", "F/R symbols are attached to a different fusion ring");
    }
    const AxiomReport ax = validate_axioms(*data.presentation, tol);
    report.merge(ax.details);
  }
  return report;
}

}  // namespace bcft
