// One line per acceptance criterion; exit status is the number of failures.

#include "bcft/io.hpp"
#include "mutation.hpp"
#include "oracles.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>

using namespace bcft;

namespace {

constexpr Label kSigma = 1, kPsi = 2;
constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

int failures = 0;

void criterion(int number, double budget_seconds, const std::function<void(Outcome&)>& body) {
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  try {
    body(o);
  } catch (const std::exception& e) {
    o.pass = false;
    o.detail << " [exception: " << e.what() << "]";
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (secs >= budget_seconds) {
    o.pass = false;
    o.detail << " [over the " << budget_seconds << " s budget]";
  }
  if (!o.pass) ++failures;
  std::printf("criterion %d: %s (%.2f s)%s\n", number, o.pass ? "PASS" : "FAIL", secs,
              o.detail.str().c_str());
  std::fflush(stdout);
}

IMatrix identity(int n) { return IMatrix::Identity(n, n); }

}  // namespace

int main() {
  criterion(1, 1.0, [](Outcome& o) {
    const CategoryData d = catalog::ising();
    const CategoryPresentation& cat = *d.presentation;
    const Morphism e = cat.braiding(ObjectWord::simple(kSigma), ObjectWord::simple(kSigma));
    const cplx phase = e.block(kPsi)(0, 0);
    const double err = std::abs(phase - std::polar(1.0, -3 * kPi / 8));
    o.detail << " omega = " << phase.real() << (phase.imag() < 0 ? " - " : " + ")
             << std::abs(phase.imag()) << "i, error " << err;
    o.require(err < 1e-9, "exchange phase");
  });

  criterion(2, 1.0, [](Outcome& o) {
    const CategoryData d = catalog::ising();
    const IndexLedger l =
        index_ledger(d.ring, qsystems::car(*d.presentation, kPsi), identity(3));
    o.detail << " mu_A = " << l.mu_A << ", lambda = " << l.lambda << ", lambda+ = "
             << l.lambda_plus << ", mu_B+ = " << l.mu_B_plus;
    o.require(std::abs(global_dimension(d.ring) - 4) < 1e-9, "mu_A");
    o.require(std::abs(l.mu_A - 4) < 1e-9, "ledger mu_A");
    o.require(std::abs(l.lambda - 2) < 1e-9, "lambda");
    o.require(std::abs(l.lambda_plus - 4) < 1e-9, "lambda+");
    o.require(std::abs(l.mu_B_plus - 1) < 1e-9, "mu_B+");
    o.require(l.haag_dual, "haag_dual");
  });

  criterion(3, 10.0, [](Outcome& o) {
    const CategoryData d = catalog::ising();
    const CategoryPresentation& cat = *d.presentation;
    const CouplingMatrix triv = coupling_from_qsystem(cat, qsystems::trivial(cat));
    const CouplingMatrix car = coupling_from_qsystem(cat, qsystems::car(cat, kPsi));
    o.require(triv.Z == identity(3), "Z(theta = 1)");
    o.require(car.Z == identity(3), "Z(CAR)");
    o.require(triv.min_gap_ratio >= 1e3 && car.min_gap_ratio >= 1e3, "gap ratio");
    const auto thetas = dhr_orbit_thetas(d.modular, car.Z, regular_nimrep(d.ring));
    int checked = 0;
    for (const auto& theta : thetas) {
      const QSearchResult r = search_qsystems(cat, theta);
      o.require(r.status == QSearchStatus::found, "Q-system on orbit theta");
      for (const QSystemSpec& q : r.solutions) {
        o.require(coupling_from_qsystem(cat, q).Z == car.Z, "orbit invariance");
        ++checked;
      }
    }
    o.detail << " Z = identity for theta = 1 and 1+psi, min gap "
             << std::min(triv.min_gap_ratio, car.min_gap_ratio) << ", " << checked
             << " orbit Q-systems agree";
  });

  criterion(4, 1.0, [](Outcome& o) {
    const FusionRing ring = catalog::ising().ring;
    const ThetaPlus t = theta_plus(ring, identity(3));
    o.detail << " m = (" << t.multiplicities[0] << ", " << t.multiplicities[1] << ", "
             << t.multiplicities[2] << "), d = " << t.dimension;
    o.require(t.multiplicities == std::vector<long long>{3, 0, 1}, "multiplicities");
    o.require(std::abs(t.dimension - 4) < 1e-9, "dimension");
    o.require(std::abs(t.dimension - global_dimension(ring)) < 1e-9, "d = mu_A");
  });

  criterion(5, 60.0, [](Outcome& o) {
    const size_t ising = enumerate_modular_invariants(catalog::ising().modular).size();
    const size_t fib = enumerate_modular_invariants(catalog::fibonacci().modular).size();
    const size_t su2_4 = enumerate_modular_invariants(catalog::su2(4).modular).size();
    EnumerationOptions bounded;
    bounded.max_entry = 2;
    const auto tool = enumerate_modular_invariants(catalog::ising().modular, bounded);
    const auto brute = oracle::brute_force_invariants(catalog::ising().modular, 2);
    o.detail << " Ising " << ising << ", Fibonacci " << fib << ", SU(2)_4 " << su2_4
             << ", brute force over 3^9 Ising matrices finds " << brute.size();
    o.require(ising == 1 && fib == 1 && su2_4 == 2, "counts");
    o.require(tool == brute, "brute-force cross-check");
  });

  criterion(6, 10.0, [](Outcome& o) {
    const CategoryData d = catalog::ising();
    const auto three = enumerate_nimreps(d.ring, 3);
    const auto two = enumerate_nimreps(d.ring, 2);
    o.require(three.size() == 1 && three[0] == canonical_form(regular_nimrep(d.ring)),
              "size 3 is the regular orbit");
    o.require(two.empty(), "size 2 is empty");
    const CardySolution c = cardy_solve(regular_nimrep(d.ring), d.modular);
    const double phases = oracle::distance_up_to_phases(c.psi, d.modular.S(), c.exponents);
    o.require(c.residual < 1e-9, "Cardy residual");
    o.require(phases < 1e-9, "psi = S up to phases");
    o.detail << " size 3: " << three.size() << " orbit, size 2: " << two.size()
             << ", Cardy residual " << c.residual << ", |psi - S| " << phases;
  });

  criterion(7, 5.0, [](Outcome& o) {
    const CategoryData d = catalog::ising();
    const CategoryPresentation& cat = *d.presentation;
    const QSystemSpec car = qsystems::car(cat, kPsi);
    const QSystemCheck check = validate_qsystem(car, cat);
    const ChargedIntertwinerAlgebra alg = charged_algebra(car, cat);
    const double orth = (alg.orthogonality - 2.0 * CMatrix::Identity(2, 2)).cwiseAbs().maxCoeff();
    const bool car_local = is_local(car, cat).local;
    const bool triv_local = is_local(qsystems::trivial(cat), cat).local;
    o.require(check.ok(), "unit and associativity");
    o.require(std::max({check.unit_left, check.unit_right, check.associativity}) < 1e-9,
              "residuals");
    o.require(orth < 1e-9, "orthogonality sum");
    o.require(!car_local, "CAR is not local");
    o.require(triv_local, "trivial is local");
    o.detail << " unit " << std::max(check.unit_left, check.unit_right) << ", assoc "
             << check.associativity << ", orthogonality " << orth << ", local(CAR) = "
             << car_local << ", local(1) = " << triv_local;
  });

  criterion(8, 10.0, [](Outcome& o) {
    const CategoryData d = catalog::ising();
    const Nimrep n = regular_nimrep(d.ring);
    const CardySolution c = cardy_solve(n, d.modular);
    const auto chars = sector_characters(d.modular, *d.central_charge, 60).characters;
    double worst = 0;
    for (double beta : {3.0, 2 * kPi, 9.0})
      for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) {
          const AnnulusReport r = cardy_transform_check(n, c, d.modular, chars, a, b, beta);
          worst = std::max(worst, r.residual);
          o.require(r.passed, "transform residual");
        }
    const auto series = minimal_model_characters(3, 4, 100);
    const oracle::IsingLevels ref = oracle::ising_fermionic(100);
    auto same = [](const CharacterSeries& chi, const std::vector<long long>& want) {
      if (chi.levels.size() != want.size()) return false;
      for (size_t i = 0; i < want.size(); ++i)
        if (chi.levels[i] != want[i]) return false;
      return true;
    };
    o.require(same(series.at({1, 1}), ref.h0) && same(series.at({1, 2}), ref.h16) &&
                  same(series.at({2, 1}), ref.h12),
              "fermionic oracle");
    o.detail << " max residual " << worst << " over 27 checks, characters exact to order 100";
  });

  criterion(9, 120.0, [](Outcome& o) {
    std::mt19937_64 rng(9);
    int missed = 0, total = 0;
    double pentagon = 0, hexagon = 0, oracle_pentagon = 0;
    for (const auto& [name, data] : oracle::catalogs()) {
      const auto F = data.presentation->f_symbols();
      const auto R = data.presentation->r_symbols();
      for (int trial = 0; trial < 100; ++trial) {
        missed += !mutation::detected(data, mutation::mutate_ring(data.ring, rng), F, R);
        missed += !mutation::detected(data, data.ring, mutation::mutate_f(F, rng), R);
        total += 2;
      }
      const AxiomReport ax = validate_axioms(*data.presentation);
      pentagon = std::max(pentagon, ax.pentagon);
      hexagon = std::max(hexagon, ax.hexagon);
      oracle_pentagon = std::max(oracle_pentagon, oracle::pentagon_by_matrices(*data.presentation));
    }
    o.require(missed == 0, "mutations caught");
    o.require(pentagon < 1e-9 && hexagon < 1e-9 && oracle_pentagon < 1e-9, "axioms");

    int compared = 0;
    bool identical = true;
    for (const auto& [name, data] : oracle::catalogs()) {
      std::string reference;
      for (int threads : {1, 2, 4}) {
        EnumerationOptions opt;
        opt.threads = threads;
        io::Json list = io::Json::array();
        for (const IMatrix& Z : enumerate_modular_invariants(data.modular, opt))
          list.push_back(io::matrix_to_json(Z));
        if (data.ring.rank() <= 5) {
          for (const Nimrep& n : enumerate_nimreps(data.ring, data.ring.rank(), opt))
            list.push_back(io::nimrep_to_json(n));
        }
        const CategoryPresentation& cat = *data.presentation;
        list.push_back(io::to_json(
            coupling_from_qsystem(cat, qsystems::trivial(cat), Handedness::plus, threads)));
        const std::string bytes = io::dump(list);
        if (reference.empty()) reference = bytes;
        identical &= bytes == reference;
        ++compared;
      }
    }
    const CategoryData ising_data = catalog::ising();
    const CategoryPresentation& ising = *ising_data.presentation;
    QSearchOptions one, many;
    many.threads = 4;
    many.seed = 77;
    identical &= io::dump(io::to_json(search_qsystems(ising, {1, 0, 1}, one))) ==
                 io::dump(io::to_json(search_qsystems(ising, {1, 0, 1}, many)));
    o.require(identical, "determinism");
    o.detail << " " << total - missed << "/" << total << " mutations caught, pentagon "
             << pentagon << ", hexagon " << hexagon << ", " << compared
             << " threaded reports identical";
  });

  return failures;
}
