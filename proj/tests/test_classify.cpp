#include "bcft/catalog.hpp"
#include "bcft/classify.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cmath>

using namespace bcft;

namespace {

IMatrix identity(int n) { return IMatrix::Identity(n, n); }

IMatrix d4_block() {
  IMatrix Z = IMatrix::Zero(5, 5);
  Z(0, 0) = Z(0, 4) = Z(4, 0) = Z(4, 4) = 1;
  Z(2, 2) = 2;
  return Z;
}

}  // namespace

TEST_CASE("modular invariants of the small catalogs") {
  const CategoryData triv = catalog::trivial();
  CHECK(enumerate_modular_invariants(triv.modular) == std::vector<IMatrix>{identity(1)});

  const CategoryData ising = catalog::ising();
  CHECK(enumerate_modular_invariants(ising.modular) == std::vector<IMatrix>{identity(3)});

  const CategoryData fib = catalog::fibonacci();
  CHECK(enumerate_modular_invariants(fib.modular) == std::vector<IMatrix>{identity(2)});

  const CategoryData su2_4 = catalog::su2(4);
  const auto found = enumerate_modular_invariants(su2_4.modular);
  REQUIRE(found.size() == 2);
  CHECK(std::find(found.begin(), found.end(), identity(5)) != found.end());
  CHECK(std::find(found.begin(), found.end(), d4_block()) != found.end());
}

TEST_CASE("Ising invariants agree with brute force over bounded matrices") {
  const CategoryData ising = catalog::ising();
  EnumerationOptions opt;
  opt.max_entry = 2;
  CHECK(enumerate_modular_invariants(ising.modular, opt) ==
        oracle::brute_force_invariants(ising.modular, 2));
  CHECK(oracle::brute_force_invariants(ising.modular, 2).size() == 1);
}

TEST_CASE("Fibonacci and su2_2 invariants agree with brute force") {
  const CategoryData fib = catalog::fibonacci();
  EnumerationOptions opt;
  opt.max_entry = 3;
  CHECK(enumerate_modular_invariants(fib.modular, opt) ==
        oracle::brute_force_invariants(fib.modular, 3));
  const CategoryData su2_2 = catalog::su2(2);
  opt.max_entry = 2;
  CHECK(enumerate_modular_invariants(su2_2.modular, opt) ==
        oracle::brute_force_invariants(su2_2.modular, 2));
}

TEST_CASE("enumerated invariants satisfy the vacuum-row identity") {
  for (const auto& [name, data] : oracle::catalogs()) {
    CAPTURE(name);
    const RVector d = fp_dimensions(data.ring);
    for (const IMatrix& Z : enumerate_modular_invariants(data.modular)) {
      CHECK(invariant_residual(data.modular, Z) < 1e-9);
      bool unique_vacuum = true;
      for (int s = 1; s < Z.rows(); ++s) unique_vacuum &= Z(0, s) == 0 && Z(s, 0) == 0;
      if (!unique_vacuum) continue;
      for (int s = 0; s < Z.rows(); ++s) {
        double row = 0;
        for (int t = 0; t < Z.cols(); ++t) row += Z(s, t) * d(t);
        CHECK(std::abs(row - d(s)) < 1e-7);
      }
    }
  }
}

TEST_CASE("enumeration is independent of the thread count") {
  for (const auto& [name, data] : oracle::catalogs()) {
    CAPTURE(name);
    EnumerationOptions one, many;
    many.threads = 4;
    CHECK(enumerate_modular_invariants(data.modular, one) ==
          enumerate_modular_invariants(data.modular, many));
    if (data.ring.rank() <= 4) {
      CHECK(enumerate_nimreps(data.ring, data.ring.rank(), one) ==
            enumerate_nimreps(data.ring, data.ring.rank(), many));
    }
  }
}

TEST_CASE("regular nimreps") {
  CHECK(regular_nimrep(FusionRing::trivial()).n[0] == identity(1));
  const FusionRing ising = catalog::ising().ring;
  const Nimrep r = regular_nimrep(ising);
  CHECK(validate_nimrep(ising, r).ok());
  IMatrix a3(3, 3);
  a3 << 0, 1, 0, 1, 0, 1, 0, 1, 0;
  CHECK(r.n[1] == a3);
  IMatrix nt(2, 2);
  nt << 0, 1, 1, 1;
  CHECK(regular_nimrep(catalog::fibonacci().ring).n[1] == nt);
  for (const auto& [name, data] : oracle::catalogs()) {
    CHECK(validate_nimrep(data.ring, regular_nimrep(data.ring)).ok());
  }
}

TEST_CASE("nimrep validation names violated constraints") {
  const FusionRing ising = catalog::ising().ring;
  Nimrep bad = regular_nimrep(ising);
  bad.n[1](0, 1) = 2;
  CHECK_FALSE(validate_nimrep(ising, bad).ok());
  Nimrep neg = regular_nimrep(ising);
  neg.n[2](0, 2) = -1;
  bool named = false;
  for (const auto& v : validate_nimrep(ising, neg).violations) named |= v.code == "nonnegative";
  CHECK(named);
}

TEST_CASE("nimrep enumeration") {
  const FusionRing triv = FusionRing::trivial();
  const auto t = enumerate_nimreps(triv, 1);
  REQUIRE(t.size() == 1);
  CHECK(t[0].n[0] == identity(1));

  const FusionRing ising = catalog::ising().ring;
  const auto three = enumerate_nimreps(ising, 3);
  REQUIRE(three.size() == 1);
  CHECK(three[0] == canonical_form(regular_nimrep(ising)));
  CHECK(enumerate_nimreps(ising, 2).empty());
  CHECK(enumerate_nimreps(ising, 1).empty());

  const FusionRing fib = catalog::fibonacci().ring;
  const auto f2 = enumerate_nimreps(fib, 2);
  REQUIRE(f2.size() == 1);
  CHECK(f2[0] == canonical_form(regular_nimrep(fib)));
}

TEST_CASE("canonical form is invariant under relabeling") {
  const FusionRing ring = catalog::su2(3).ring;
  const Nimrep r = regular_nimrep(ring);
  std::vector<int> perm{2, 0, 3, 1};
  Nimrep p = r;
  for (size_t s = 0; s < r.n.size(); ++s)
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) p.n[s](perm[a], perm[b]) = r.n[s](a, b);
  CHECK(validate_nimrep(ring, p).ok());
  CHECK(canonical_form(p) == canonical_form(r));
}

TEST_CASE("Cardy solutions of regular nimreps") {
  const CategoryData triv = catalog::trivial();
  const CardySolution t = cardy_solve(regular_nimrep(triv.ring), triv.modular);
  CHECK(std::abs(std::abs(t.psi(0, 0)) - 1) < 1e-12);

  for (const auto& [name, data] : oracle::catalogs()) {
    CAPTURE(name);
    const CardySolution c = cardy_solve(regular_nimrep(data.ring), data.modular);
    CHECK(c.residual < 1e-9);
    CHECK(oracle::distance_up_to_phases(c.psi, data.modular.S(), c.exponents) < 1e-9);
    CHECK((c.psi.adjoint() * c.psi - CMatrix::Identity(c.psi.cols(), c.psi.cols()))
              .cwiseAbs()
              .maxCoeff() < 1e-9);
    for (Eigen::Index a = 0; a < c.psi.rows(); ++a) {
      const cplx v = c.psi(a, 0);
      CHECK(v.real() > 0);
      CHECK(std::abs(v.imag()) < 1e-12);
    }
    // Fusion matrices rebuilt from psi and the S ratios.
    const int n = data.ring.rank();
    double worst = 0;
    for (Label s = 0; s < n; ++s) {
      CMatrix D = CMatrix::Zero(n, n);
      for (int k = 0; k < n; ++k) {
        D(k, k) = data.modular.S()(s, c.exponents[k]) / data.modular.S()(0, c.exponents[k]);
      }
      const CMatrix rebuilt = c.psi * D * c.psi.adjoint();
      worst = std::max(worst, (rebuilt - fusion_matrix(data.ring, s).cast<double>().cast<cplx>())
                                  .cwiseAbs()
                                  .maxCoeff());
    }
    CHECK(worst < 1e-9);
  }
}

TEST_CASE("compatibility of nimreps with modular invariants") {
  const CategoryData ising = catalog::ising();
  const Compatibility ok = compatibility(identity(3), regular_nimrep(ising.ring), ising.modular);
  CHECK(ok.compatible);
  CHECK(ok.multiplicity == std::vector<int>{1, 1, 1});
  CHECK(identity(3).trace() == regular_nimrep(ising.ring).size);

  IMatrix bad = identity(3);
  bad(2, 2) = 0;
  const Compatibility no = compatibility(bad, regular_nimrep(ising.ring), ising.modular);
  CHECK_FALSE(no.compatible);
  CHECK_FALSE(no.reason.empty());

  const CategoryData fib = catalog::fibonacci();
  CHECK(compatibility(identity(2), regular_nimrep(fib.ring), fib.modular).compatible);
}

TEST_CASE("su2_4 block invariant pairs with the D-type nimrep") {
  const CategoryData su2_4 = catalog::su2(4);
  const auto four = enumerate_nimreps(su2_4.ring, 4);
  int compatible_with_d = 0;
  for (const Nimrep& n : four) {
    CHECK(validate_nimrep(su2_4.ring, n).ok());
    if (compatibility(d4_block(), n, su2_4.modular).compatible) ++compatible_with_d;
  }
  CHECK(compatible_with_d == 1);
}
