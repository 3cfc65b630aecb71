#include "bcft/catalog.hpp"
#include "bcft/category.hpp"
#include "mutation.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace bcft;

namespace {

constexpr Label kSigma = 1, kPsi = 2;

ObjectWord w(std::initializer_list<Label> labels) { return ObjectWord::of_labels(labels); }

std::vector<std::vector<int>> as_counts(const ObjectWord& word, int rank) {
  std::vector<std::vector<int>> out;
  for (const Factor& f : word.factors()) {
    std::vector<int> counts(rank, 0);
    for (Label s : f.summands) ++counts[s];
    out.push_back(counts);
  }
  return out;
}

ObjectWord random_word(int rank, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> len(0, 4), label(0, rank - 1), coin(0, 5), mult(0, 2);
  std::vector<Factor> factors;
  const int n = len(rng);
  for (int i = 0; i < n; ++i) {
    if (coin(rng) == 0) {
      std::vector<int> m(rank);
      for (int& x : m) x = mult(rng);
      if (std::all_of(m.begin(), m.end(), [](int x) { return x == 0; })) m[0] = 1;
      factors.push_back(Factor::from_multiplicities(m));
    } else {
      factors.push_back(Factor::simple(label(rng)));
    }
  }
  return ObjectWord(factors);
}

}  // namespace

TEST_CASE("catalog presentations satisfy the axioms") {
  const AxiomReport ising = validate_axioms(*catalog::ising().presentation);
  CHECK(ising.pentagon < 1e-12);
  CHECK(ising.hexagon < 1e-12);
  CHECK(ising.unitarity < 1e-12);
  CHECK(ising.normalization < 1e-12);
  CHECK(validate_axioms(*catalog::fibonacci().presentation).valid());
  for (const auto& [name, data] : oracle::catalogs()) {
    CAPTURE(name);
    const AxiomReport rep = validate_axioms(*data.presentation);
    CHECK(rep.valid(1e-9));
    CHECK(rep.details.ok());
    CHECK(oracle::pentagon_by_matrices(*data.presentation) < 1e-9);
  }
}

TEST_CASE("negating one Ising F entry breaks the pentagon") {
  const CategoryData d = catalog::ising();
  auto F = d.presentation->f_symbols();
  F.at({kSigma, kSigma, kSigma, kSigma, 0, 0}) *= -1.0;
  const CategoryPresentation broken(d.ring, F, d.presentation->r_symbols());
  const AxiomReport rep = validate_axioms(broken);
  CHECK(rep.pentagon >= 0.1);
  CHECK_FALSE(rep.valid());
  CHECK(oracle::pentagon_by_matrices(broken) >= 0.1);
}

TEST_CASE("missing or extraneous symbols are structural errors") {
  const CategoryData d = catalog::ising();
  auto F = d.presentation->f_symbols();
  F.erase({kSigma, kSigma, kSigma, kSigma, 0, 0});
  CHECK_THROWS_AS(CategoryPresentation(d.ring, F, d.presentation->r_symbols()), StructuralError);
  auto R = d.presentation->r_symbols();
  R[{kSigma, kSigma, kSigma}] = 1.0;
  CHECK_THROWS_AS(CategoryPresentation(d.ring, d.presentation->f_symbols(), R), StructuralError);

  FusionRing multi({"0", "x"}, {0, 1}, {1, 0, 0, 1, 0, 1, 1, 2});
  CHECK_THROWS_AS(CategoryPresentation(multi, {}, {}), StructuralError);
}

TEST_CASE("hom space dimensions") {
  for (const auto& [name, data] : oracle::catalogs()) {
    CHECK(data.presentation->hom_basis(ObjectWord(), ObjectWord()).dim() == 1);
  }
  const CategoryData cat_data = catalog::ising();
  const CategoryPresentation& cat = *cat_data.presentation;
  CHECK(cat.hom_basis(w({kSigma}), w({kSigma, kPsi})).dim() == 1);
  const ObjectWord theta = ObjectWord::of_factor(Factor::from_multiplicities({1, 0, 1}));
  // (1+psi)(1+psi) = 2 + 2 psi, so Hom(1+psi, 2 + 2 psi) has dimension 4.
  CHECK(cat.hom_basis(theta, theta * w({kSigma, kSigma})).dim() == 4);
  CHECK(oracle::hom_dimension(cat.ring(), as_counts(theta, 3),
                              as_counts(theta * w({kSigma, kSigma}), 3)) == 4);
}

TEST_CASE("hom dimensions agree with path counting on random words") {
  std::mt19937_64 rng(11);
  for (const auto& [name, data] : oracle::catalogs()) {
    CAPTURE(name);
    const CategoryPresentation& cat = *data.presentation;
    const int n = cat.rank();
    int mismatches = 0;
    for (int trial = 0; trial < 1000; ++trial) {
      const ObjectWord a = random_word(n, rng), b = random_word(n, rng);
      const long long expect = oracle::hom_dimension(cat.ring(), as_counts(a, n), as_counts(b, n));
      if (cat.hom_basis(a, b).dim() != expect) ++mismatches;
    }
    CHECK(mismatches == 0);
  }
}

TEST_CASE("composition, identities and positivity") {
  std::mt19937_64 rng(3);
  const CategoryData cat_data = catalog::ising();
  const CategoryPresentation& cat = *cat_data.presentation;
  const ObjectWord a = w({kSigma, kSigma, kPsi}), b = w({kPsi, kSigma, kSigma});
  const Morphism f = oracle::random_morphism(cat, a, b, rng);
  CHECK(distance(compose(cat.identity(b), f), f) < 1e-15);
  CHECK(distance(compose(f, cat.identity(a)), f) < 1e-15);
  CHECK(is_positive(compose(dagger(f), f)));
  CHECK_THROWS_AS(compose(f, f), StructuralError);
}

TEST_CASE("dagger reverses composition") {
  std::mt19937_64 rng(5);
  for (const auto& [name, data] : oracle::catalogs()) {
    const CategoryPresentation& cat = *data.presentation;
    const int n = cat.rank();
    for (int trial = 0; trial < 20; ++trial) {
      const ObjectWord a = random_word(n, rng), b = random_word(n, rng), c = random_word(n, rng);
      const Morphism f = oracle::random_morphism(cat, b, c, rng);
      const Morphism g = oracle::random_morphism(cat, a, b, rng);
      CHECK(distance(dagger(compose(f, g)), compose(dagger(g), dagger(f))) < 1e-9);
    }
  }
}

TEST_CASE("tensor product is a bifunctor") {
  std::mt19937_64 rng(9);
  const CategoryData cat_data = catalog::su2(3);
  const CategoryPresentation& cat = *cat_data.presentation;
  CHECK(distance(cat.tensor(cat.identity(w({1, 2})), cat.identity(w({3}))),
                 cat.identity(w({1, 2, 3}))) < 1e-12);
  const ObjectWord a = w({1, 1}), a2 = w({2}), a3 = w({1, 3});
  const ObjectWord b = w({3}), b2 = w({2, 1}), b3 = w({1});
  const Morphism f = oracle::random_morphism(cat, a, a2, rng);
  const Morphism f2 = oracle::random_morphism(cat, a2, a3, rng);
  const Morphism g = oracle::random_morphism(cat, b, b2, rng);
  const Morphism g2 = oracle::random_morphism(cat, b2, b3, rng);
  const Morphism split =
      compose(cat.tensor_id_right(f, b2), cat.tensor_id_left(a, g));
  CHECK(distance(cat.tensor(f, g), split) < 1e-9);
  CHECK(distance(compose(cat.tensor(f2, g2), cat.tensor(f, g)),
                 cat.tensor(compose(f2, f), compose(g2, g))) < 1e-9);
}

TEST_CASE("tensoring a braiding with an identity keeps the hom-basis shape") {
  const CategoryData cat_data = catalog::ising();
  const CategoryPresentation& cat = *cat_data.presentation;
  const Morphism m = cat.tensor_id_right(cat.braiding(w({kSigma}), w({kSigma})), w({kPsi}));
  const HomBasis hb = cat.hom_basis(w({kSigma, kSigma, kPsi}), w({kSigma, kSigma, kPsi}));
  int count = 0;
  for (Label c = 0; c < cat.rank(); ++c) count += static_cast<int>(m.block(c).size());
  CHECK(count == hb.dim());
  CHECK(m.flatten().size() == hb.dim());
}

TEST_CASE("Ising braiding anchors") {
  const CategoryData cat_data = catalog::ising();
  const CategoryPresentation& cat = *cat_data.presentation;
  CHECK(distance(cat.braiding(ObjectWord(), w({kSigma})), cat.identity(w({kSigma}))) < 1e-15);
  const Morphism vac = cat.braiding(w({0}), w({kSigma}));
  for (Label c = 0; c < cat.rank(); ++c) {
    if (vac.block(c).size() == 0) continue;
    CHECK((vac.block(c) - CMatrix::Identity(vac.block(c).rows(), vac.block(c).cols()))
              .cwiseAbs()
              .maxCoeff() < 1e-12);
  }
  const Morphism pp = cat.braiding(w({kPsi}), w({kPsi}));
  CHECK(std::abs(pp.block(0)(0, 0) + 1.0) < 1e-12);

  const Morphism ss = cat.braiding(w({kSigma}), w({kSigma}));
  const cplx omega = std::polar(1.0, -3 * std::numbers::pi / 8);
  CHECK(std::abs(ss.block(kPsi)(0, 0) - omega) < 1e-9);

  // Monodromy channel eigenvalues are squares of R-symbols.
  const Morphism minus = cat.braiding(w({kSigma}), w({kSigma}), Orientation::minus);
  const Morphism mono = compose(minus, minus);
  for (Label c : {Label(0), kPsi}) {
    const cplx r = cat.R(kSigma, kSigma, c);
    CHECK(std::abs(mono.block(c)(0, 0) - r * r) < 1e-12);
    CHECK(std::abs(compose(ss, ss).block(c)(0, 0) - std::conj(r * r)) < 1e-12);
  }
  CHECK(distance(compose(ss, minus), cat.identity(w({kSigma, kSigma}))) < 1e-12);
}

TEST_CASE("braidings are unitary, natural and satisfy Yang-Baxter") {
  std::mt19937_64 rng(13);
  for (const auto& [name, data] : oracle::catalogs()) {
    CAPTURE(name);
    const CategoryPresentation& cat = *data.presentation;
    const int n = cat.rank();
    double yb = 0, hex = 0, unit = 0;
    for (auto o : {Orientation::plus, Orientation::minus}) {
      for (Label a = 0; a < n; ++a)
        for (Label b = 0; b < n; ++b)
          for (Label c = 0; c < n; ++c) {
            const ObjectWord A = w({a}), B = w({b}), C = w({c});
            const Morphism lhs =
                compose(cat.tensor_id_right(cat.braiding(B, C, o), A),
                        compose(cat.tensor_id_left(B, cat.braiding(A, C, o)),
                                cat.tensor_id_right(cat.braiding(A, B, o), C)));
            const Morphism rhs =
                compose(cat.tensor_id_left(C, cat.braiding(A, B, o)),
                        compose(cat.tensor_id_right(cat.braiding(A, C, o), B),
                                cat.tensor_id_left(A, cat.braiding(B, C, o))));
            yb = std::max(yb, distance(lhs, rhs));

            const Morphism a_bc = compose(cat.tensor_id_left(B, cat.braiding(A, C, o)),
                                          cat.tensor_id_right(cat.braiding(A, B, o), C));
            hex = std::max(hex, distance(cat.braiding(A, B * C, o), a_bc));
            const Morphism ab_c = compose(cat.tensor_id_right(cat.braiding(A, C, o), B),
                                          cat.tensor_id_left(A, cat.braiding(B, C, o)));
            hex = std::max(hex, distance(cat.braiding(A * B, C, o), ab_c));
          }
      const ObjectWord U = random_word(n, rng), V = random_word(n, rng);
      const Morphism e = cat.braiding(U, V, o);
      unit = std::max(unit, distance(compose(dagger(e), e), cat.identity(U * V)));
      unit = std::max(unit, distance(compose(e, dagger(e)), cat.identity(V * U)));
    }
    CHECK(yb < 1e-9);
    CHECK(hex < 1e-9);
    CHECK(unit < 1e-12);
  }
}

TEST_CASE("braiding is natural in both arguments") {
  std::mt19937_64 rng(17);
  for (const auto& [name, data] : oracle::catalogs()) {
    CAPTURE(name);
    const CategoryPresentation& cat = *data.presentation;
    const int n = cat.rank();
    for (int trial = 0; trial < 5; ++trial) {
      const ObjectWord A = random_word(n, rng), A2 = random_word(n, rng);
      const ObjectWord B = random_word(n, rng), B2 = random_word(n, rng);
      const Morphism f = oracle::random_morphism(cat, A2, A, rng);
      const Morphism g = oracle::random_morphism(cat, B2, B, rng);
      for (auto o : {Orientation::plus, Orientation::minus}) {
        const Morphism lhs = compose(cat.braiding(A, B, o), cat.tensor(f, g));
        const Morphism rhs = compose(cat.tensor(g, f), cat.braiding(A2, B2, o));
        CHECK(distance(lhs, rhs) < 1e-9 * std::max(1.0, lhs.max_abs()));
      }
    }
  }
}

TEST_CASE("conjugation pairs") {
  const CategoryData ising_data = catalog::ising();
  const CategoryPresentation& ising = *ising_data.presentation;
  const auto [R1, Rb1] = ising.conjugation_pair(0);
  CHECK(std::abs(compose(dagger(R1), R1).block(0)(0, 0) - 1.0) < 1e-12);
  const auto [Rs, Rbs] = ising.conjugation_pair(kSigma);
  CHECK(std::abs(compose(dagger(Rs), Rs).block(0)(0, 0) - std::sqrt(2.0)) < 1e-12);
  const CategoryData fib_data = catalog::fibonacci();
  const CategoryPresentation& fib = *fib_data.presentation;
  const auto [Rt, Rbt] = fib.conjugation_pair(1);
  CHECK(std::abs(compose(dagger(Rt), Rt).block(0)(0, 0) - (1 + std::sqrt(5.0)) / 2) < 1e-12);

  for (const auto& [name, data] : oracle::catalogs()) {
    CAPTURE(name);
    const CategoryPresentation& cat = *data.presentation;
    for (Label rho = 0; rho < cat.rank(); ++rho) {
      const auto [R, Rbar] = cat.conjugation_pair(rho);
      const ObjectWord r = w({rho});
      const ObjectWord rb = w({cat.ring().dual(rho)});
      CHECK(std::abs(compose(dagger(R), R).block(0)(0, 0) - cat.dim(rho)) < 1e-9);
      CHECK(std::abs(compose(dagger(Rbar), Rbar).block(0)(0, 0) - cat.dim(rho)) < 1e-9);
      // (Rbar* (x) id_rho)(id_rho (x) R) = id_rho
      const Morphism zig =
          compose(cat.tensor_id_right(dagger(Rbar), r), cat.tensor_id_left(r, R));
      CHECK(distance(zig, cat.identity(r)) < 1e-9);
      const Morphism zag =
          compose(cat.tensor_id_right(dagger(R), rb), cat.tensor_id_left(rb, Rbar));
      CHECK(distance(zag, cat.identity(rb)) < 1e-9);
    }
  }
}

TEST_CASE("braiding on formal sums permutes multiplicity spaces") {
  const CategoryData cat_data = catalog::ising();
  const CategoryPresentation& cat = *cat_data.presentation;
  const ObjectWord theta = ObjectWord::of_factor(Factor::from_multiplicities({1, 0, 1}));
  const Morphism e = cat.braiding(theta, theta);
  CHECK(distance(compose(dagger(e), e), cat.identity(theta * theta)) < 1e-12);
  const ObjectWord two = ObjectWord::of_factor(Factor::from_multiplicities({0, 2, 0}));
  const Morphism e2 = cat.braiding(two, w({kPsi}));
  CHECK(distance(compose(dagger(e2), e2), cat.identity(two * w({kPsi}))) < 1e-12);
}

TEST_CASE("single-entry F mutations are detected") {
  std::mt19937_64 rng(99);
  for (const auto& [name, data] : oracle::catalogs()) {
    CAPTURE(name);
    const auto F = data.presentation->f_symbols();
    const auto R = data.presentation->r_symbols();
    int missed = 0;
    for (int trial = 0; trial < 100; ++trial) {
      const CategoryPresentation m(data.ring, mutation::mutate_f(F, rng), R);
      if (validate_axioms(m).valid()) ++missed;
    }
    CHECK(missed == 0);
  }
}
