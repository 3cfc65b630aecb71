#include "bcft/catalog.hpp"
#include "bcft/classify.hpp"
#include "bcft/induction.hpp"
#include "bcft/io.hpp"
#include "bcft/partition.hpp"
#include "bcft/qsystem.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>

using namespace bcft;
using io::Json;

namespace {

enum Exit { kOk = 0, kFailed = 1, kMalformed = 2, kNumeric = 3 };

struct Globals {
  double tolerance = kDefaultTolerance;
  int threads = 1;
  std::uint64_t seed = 1;
};

struct Loaded {
  CategoryData data;
  Json raw;
};

Loaded load_category(const std::string& path) {
  Json raw = io::read_file(path);
  return {io::category_from_json(raw), raw};
}

const CategoryPresentation& need_presentation(const CategoryData& d) {
  if (!d.presentation) throw InputError("category file has no F and R symbols");
  return *d.presentation;
}

/// Picks entry `index` when `j` is a report, else parses `j` directly.
Json select_payload(const Json& j, const std::string& list, std::optional<int> index) {
  if (!j.is_object() || !j.contains("operation")) {
    if (index) throw InputError("--index applies to report files only");
    return j;
  }
  const Json& items = j.at("payload").at(list);
  const int i = index.value_or(0);
  if (i < 0 || i >= static_cast<int>(items.size())) {
    throw InputError("--index " + std::to_string(i) + " out of range");
  }
  return items.at(i);
}

void emit(const std::string& out, const Json& report) {
  if (!out.empty()) io::write_file(out, report);
}

std::string matrix_text(const IMatrix& m) {
  std::ostringstream os;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    os << "  ";
    for (Eigen::Index k = 0; k < m.cols(); ++k) os << (k ? " " : "") << m(i, k);
    os << "\n";
  }
  return os.str();
}

int cmd_validate(const Globals& g, const std::string& path, const std::string& out) {
  const Loaded cat = load_category(path);
  const ValidationReport all = validate_category(cat.data, g.tolerance);
  std::printf("%-14s %s\n", "check", "result");
  std::printf("%-14s %s\n", "fusion ring", validate_ring(cat.data.ring).ok() ? "ok" : "FAILED");
  std::printf("%-14s %s\n", "modular data",
              validate_modular(cat.data.modular, g.tolerance).ok() ? "ok" : "FAILED");
  Json residuals = Json::object();
  if (cat.data.presentation) {
    const AxiomReport ax = validate_axioms(*cat.data.presentation, g.tolerance);
    residuals = {{"pentagon", ax.pentagon},
                 {"hexagon", ax.hexagon},
                 {"unitarity", ax.unitarity},
                 {"normalization", ax.normalization}};
    for (const auto& [name, value] : residuals.items()) {
      std::printf("%-14s %.3e\n", name.c_str(), value.get<double>());
    }
  }
  for (const auto& v : all.violations) std::printf("violation [%s] %s\n", v.code.c_str(), v.message.c_str());
  std::printf("%s\n", all.ok() ? "valid" : "INVALID");
  emit(out, io::make_report("validate", {{"category", cat.raw}}, {{"tolerance", g.tolerance}},
                            {{"valid", all.ok()},
                             {"violations", io::to_json(all)},
                             {"residuals", residuals}}));
  return all.ok() ? kOk : kFailed;
}

int cmd_invariants(const Globals& g, const std::string& path, std::optional<long long> max_entry,
                   const std::string& out) {
  const Loaded cat = load_category(path);
  EnumerationOptions opt;
  opt.max_entry = max_entry;
  opt.threads = g.threads;
  opt.tolerance = g.tolerance;
  const auto found = enumerate_modular_invariants(cat.data.modular, opt);
  std::printf("%zu modular invariant(s)\n", found.size());
  Json list = Json::array();
  for (const IMatrix& Z : found) {
    std::printf("%s\n", matrix_text(Z).c_str());
    list.push_back({{"Z", io::matrix_to_json(Z)}});
  }
  Json settings = {{"tolerance", g.tolerance}};
  if (max_entry) settings["max_entry"] = *max_entry;
  emit(out, io::make_report("invariants", {{"category", cat.raw}}, settings,
                            {{"count", found.size()}, {"invariants", list}}));
  return kOk;
}

int cmd_nimreps(const Globals& g, const std::string& path, int size, const std::string& zpath,
                std::optional<int> zindex, std::optional<long long> max_entry,
                const std::string& out) {
  const Loaded cat = load_category(path);
  EnumerationOptions opt;
  opt.max_entry = max_entry;
  opt.threads = g.threads;
  opt.tolerance = g.tolerance;
  std::vector<Nimrep> found = enumerate_nimreps(cat.data.ring, size, opt);
  std::vector<io::ReportInput> inputs{{"category", cat.raw}};
  Json settings = {{"tolerance", g.tolerance}, {"size", size}};
  if (max_entry) settings["max_entry"] = *max_entry;
  if (!zpath.empty()) {
    const Json zraw = io::read_file(zpath);
    const IMatrix Z = io::coupling_from_json(select_payload(zraw, "invariants", zindex));
    inputs.push_back({"invariant", zraw});
    if (zindex) settings["invariant_index"] = *zindex;
    std::vector<Nimrep> kept;
    for (auto& n : found) {
      if (compatibility(Z, n, cat.data.modular, g.tolerance).compatible) kept.push_back(std::move(n));
    }
    found = std::move(kept);
  }
  std::printf("%zu nimrep(s) of size %d\n", found.size(), size);
  Json list = Json::array();
  for (const Nimrep& n : found) {
    for (int s = 0; s < cat.data.ring.rank(); ++s) {
      std::printf("n[%s]\n%s", cat.data.ring.label(s).c_str(), matrix_text(n.n[s]).c_str());
    }
    std::printf("\n");
    list.push_back(io::nimrep_to_json(n));
  }
  emit(out, io::make_report("nimreps", inputs, settings, {{"count", found.size()}, {"nimreps", list}}));
  return kOk;
}

int cmd_induce(const Globals& g, const std::string& cpath, const std::string& qpath,
               const std::string& handedness, const std::string& out) {
  const Loaded cat = load_category(cpath);
  const CategoryPresentation& pres = need_presentation(cat.data);
  const Json qraw = io::read_file(qpath);
  const QSystemSpec q = io::qsystem_from_json(qraw);
  const Handedness h = handedness == "minus" ? Handedness::minus : Handedness::plus;
  const CouplingMatrix Z = coupling_from_qsystem(pres, q, h, g.threads, g.tolerance);
  const ThetaPlus tp = theta_plus(cat.data.ring, Z.Z, g.tolerance);
  const IndexLedger led = index_ledger(cat.data.ring, q, Z.Z, g.tolerance);

  Json fields = Json::array();
  for (int s = 0; s < pres.rank(); ++s)
    for (int t = 0; t < pres.rank(); ++t)
      if (Z.Z(s, t) > 0) fields.push_back(io::to_json(charged_field_basis(pres, q, s, t, h, g.tolerance)));

  std::printf("Z =\n%s", matrix_text(Z.Z).c_str());
  std::printf("Theta+ multiplicities:");
  for (auto m : tp.multiplicities) std::printf(" %lld", m);
  std::printf("  (dimension %.12g)\n", tp.dimension);
  std::printf("lambda = %.12g  lambda+ = %.12g  mu_A = %.12g  mu_B+ = %.12g  haag_dual = %s\n",
              led.lambda, led.lambda_plus, led.mu_A, led.mu_B_plus, led.haag_dual ? "true" : "false");
  emit(out, io::make_report("induce", {{"category", cat.raw}, {"qsystem", qraw}},
                            {{"tolerance", g.tolerance}, {"handedness", handedness}},
                            {{"coupling", io::to_json(Z)},
                             {"theta_plus", io::to_json(tp)},
                             {"ledger", io::to_json(led)},
                             {"fields", fields}}));
  return kOk;
}

Nimrep load_nimrep(const std::string& path, std::optional<int> index, Json& raw) {
  raw = io::read_file(path);
  return io::nimrep_from_json(select_payload(raw, "nimreps", index));
}

int cmd_cardy(const Globals& g, const std::string& cpath, const std::string& npath,
              std::optional<int> index, const std::string& out) {
  const Loaded cat = load_category(cpath);
  Json nraw;
  const Nimrep n = load_nimrep(npath, index, nraw);
  const CardySolution sol = cardy_solve(n, cat.data.modular, g.tolerance);
  std::printf("exponents:");
  for (Label t : sol.exponents) std::printf(" %s", cat.data.ring.label(t).c_str());
  std::printf("\npsi =\n");
  for (int a = 0; a < n.size; ++a) {
    for (int k = 0; k < n.size; ++k) {
      std::printf("  %+.9f%+.9fi", sol.psi(a, k).real(), sol.psi(a, k).imag());
    }
    std::printf("\n");
  }
  const bool ok = sol.residual < g.tolerance;
  std::printf("residual %.3e %s\n", sol.residual, ok ? "ok" : "FAILED");
  Json settings = {{"tolerance", g.tolerance}};
  if (index) settings["index"] = *index;
  emit(out, io::make_report("cardy", {{"category", cat.raw}, {"nimrep", nraw}}, settings,
                            io::to_json(sol)));
  return ok ? kOk : kFailed;
}

int cmd_partition(const Globals& g, const std::string& cpath, const std::string& npath,
                  std::optional<int> index, int a, int b, double beta, int order, bool check,
                  const std::string& out) {
  const Loaded cat = load_category(cpath);
  if (!cat.data.central_charge) throw InputError("category file has no central_charge");
  Json nraw;
  const Nimrep n = load_nimrep(npath, index, nraw);
  const MinimalModelMatch mm = sector_characters(cat.data.modular, *cat.data.central_charge, order);
  const CharacterValue z = annulus_partition(n, mm.characters, a, b, beta);
  std::printf("minimal model (%d,%d)\n", mm.p, mm.p_prime);
  std::printf("Z_%d%d(%.12g) = %.15g  (tail bound %.3e)\n", a, b, beta, z.value, z.tail_bound);
  Json payload = {{"minimal_model", {mm.p, mm.p_prime}},
                  {"value", z.value},
                  {"tail_bound", z.tail_bound}};
  int code = kOk;
  if (check) {
    const CardySolution sol = cardy_solve(n, cat.data.modular, g.tolerance);
    const AnnulusReport rep = cardy_transform_check(n, sol, cat.data.modular, mm.characters, a, b, beta);
    std::printf("transformed at beta_hat = %.12g: %.15g  residual %.3e %s\n", rep.beta_hat,
                rep.transformed, rep.residual, rep.passed ? "ok" : "FAILED");
    payload["transform"] = io::to_json(rep);
    if (!rep.passed) code = kFailed;
  }
  Json settings = {{"tolerance", g.tolerance}, {"a", a}, {"b", b}, {"beta", beta},
                   {"order", order},           {"check_transform", check}};
  if (index) settings["index"] = *index;
  emit(out, io::make_report("partition", {{"category", cat.raw}, {"nimrep", nraw}}, settings, payload));
  return code;
}

std::vector<int> parse_theta(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      size_t used = 0;
      out.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw InputError("--theta expects comma-separated integers, got \"" + text + "\"");
    }
  }
  return out;
}

int cmd_qsearch(const Globals& g, const std::string& cpath, const std::string& theta_text,
                int starts, const std::string& out) {
  const Loaded cat = load_category(cpath);
  const CategoryPresentation& pres = need_presentation(cat.data);
  QSearchOptions opt;
  opt.starts = starts;
  opt.seed = g.seed;
  opt.threads = g.threads;
  opt.tolerance = g.tolerance;
  const std::vector<int> theta = parse_theta(theta_text);
  if (static_cast<int>(theta.size()) != pres.rank()) {
    throw InputError("--theta needs one multiplicity per sector");
  }
  const QSearchResult r = search_qsystems(pres, theta, opt);
  std::printf("status %s, %zu class(es); converged starts %d, stationary starts %d\n",
              to_string(r.status).c_str(), r.solutions.size(), r.converged_starts,
              r.stationary_starts);
  for (const QSystemSpec& q : r.solutions) std::printf("%s", io::dump(io::qsystem_to_json(q)).c_str());
  emit(out, io::make_report("qsearch", {{"category", cat.raw}},
                            {{"tolerance", g.tolerance}, {"starts", starts}}, io::to_json(r)));
  return r.status == QSearchStatus::inconclusive ? kNumeric : kOk;
}

QSystemSpec named_qsystem(const CategoryData& d, const std::string& name, double tol) {
  const CategoryPresentation& pres = need_presentation(d);
  auto label_after = [&](const std::string& prefix) {
    const Label s = d.ring.find(name.substr(prefix.size()));
    if (s < 0) throw InputError("unknown sector in \"" + name + "\"");
    return s;
  };
  if (name == "trivial") return qsystems::trivial(pres);
  if (name == "car") {
    const Label psi = d.ring.find("1/2");
    if (psi < 0 || d.ring.rank() != 3) throw InputError("car needs the Ising catalog");
    return qsystems::car(pres, psi, tol);
  }
  if (name.rfind("regular-", 0) == 0) return qsystems::regular(pres, label_after("regular-"), tol);
  if (name.rfind("simple-current-", 0) == 0) {
    return qsystems::simple_current(pres, label_after("simple-current-"), tol);
  }
  throw InputError("unknown Q-system \"" + name + "\"");
}

int cmd_catalog(const Globals& g, const std::string& name, std::optional<int> level,
                const std::string& qsystem, const std::string& nimrep, const std::string& out) {
  const CategoryData d = catalog::by_name(name, level);
  Json j;
  if (!qsystem.empty()) {
    j = io::qsystem_to_json(named_qsystem(d, qsystem, g.tolerance));
  } else if (!nimrep.empty()) {
    if (nimrep != "regular") throw InputError("only the regular nimrep is built in");
    j = io::nimrep_to_json(regular_nimrep(d.ring));
  } else {
    j = io::category_to_json(d);
  }
  io::write_file(out, j);
  std::printf("wrote %s\n", out.c_str());
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Boundary CFT classification engine"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--tolerance", g.tolerance, "Numerical tolerance")->check(CLI::PositiveNumber);
  app.add_option("--threads", g.threads, "Worker threads")->check(CLI::Range(1, 1024));
  app.add_option("--seed", g.seed, "Seed for Q-system search starts");

  std::string cat, second, out, zpath, handedness = "plus", theta, qsys, nimrep_name;
  std::optional<long long> max_entry;
  std::optional<int> index, level;
  int size = 0, a = 0, b = 0, order = 60, starts = 64;
  double beta = 0;
  bool check = false;

  auto* validate = app.add_subcommand("validate", "Run all validators on a category file");
  validate->add_option("category", cat)->required()->check(CLI::ExistingFile);
  validate->add_option("--out", out);

  auto* invariants = app.add_subcommand("invariants", "Enumerate modular invariants");
  invariants->add_option("category", cat)->required()->check(CLI::ExistingFile);
  invariants->add_option("--max-entry", max_entry);
  invariants->add_option("--out", out);

  auto* nimreps = app.add_subcommand("nimreps", "Enumerate nimreps of a given size");
  nimreps->add_option("category", cat)->required()->check(CLI::ExistingFile);
  nimreps->add_option("--size", size)->required()->check(CLI::Range(1, 64));
  nimreps->add_option("--invariant", zpath)->check(CLI::ExistingFile);
  nimreps->add_option("--index", index, "Entry of an invariants report");
  nimreps->add_option("--max-entry", max_entry);
  nimreps->add_option("--out", out);

  auto* induce = app.add_subcommand("induce", "Coupling matrix, Theta+ and index ledger");
  induce->add_option("category", cat)->required()->check(CLI::ExistingFile);
  induce->add_option("qsystem", second)->required()->check(CLI::ExistingFile);
  induce->add_option("--handedness", handedness)->check(CLI::IsMember({"plus", "minus"}));
  induce->add_option("--out", out);

  auto* cardy = app.add_subcommand("cardy", "Solve the Cardy equation for a nimrep");
  cardy->add_option("category", cat)->required()->check(CLI::ExistingFile);
  cardy->add_option("nimrep", second)->required()->check(CLI::ExistingFile);
  cardy->add_option("--index", index, "Entry of a nimreps report");
  cardy->add_option("--out", out);

  auto* partition = app.add_subcommand("partition", "Annulus partition function");
  partition->add_option("category", cat)->required()->check(CLI::ExistingFile);
  partition->add_option("nimrep", second)->required()->check(CLI::ExistingFile);
  partition->add_option("--index", index, "Entry of a nimreps report");
  partition->add_option("--a", a)->required()->check(CLI::NonNegativeNumber);
  partition->add_option("--b", b)->required()->check(CLI::NonNegativeNumber);
  partition->add_option("--beta", beta)->required()->check(CLI::PositiveNumber);
  partition->add_option("--order", order)->check(CLI::Range(0, 10000));
  partition->add_flag("--check-transform", check);
  partition->add_option("--out", out);

  auto* qsearch = app.add_subcommand("qsearch", "Search Q-systems on a given theta");
  qsearch->add_option("category", cat)->required()->check(CLI::ExistingFile);
  qsearch->add_option("--theta", theta)->required();
  qsearch->add_option("--starts", starts)->check(CLI::Range(1, 100000));
  qsearch->add_option("--out", out);

  auto* catalog_cmd = app.add_subcommand("catalog", "Emit a built-in category, Q-system or nimrep");
  catalog_cmd->add_option("name", cat)->required();
  catalog_cmd->add_option("--level", level);
  catalog_cmd->add_option("--qsystem", qsys, "trivial, car, regular-<label>, simple-current-<label>");
  catalog_cmd->add_option("--nimrep", nimrep_name, "regular");
  catalog_cmd->add_option("--out", out)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kMalformed;
  }

  try {
    if (*validate) return cmd_validate(g, cat, out);
    if (*invariants) return cmd_invariants(g, cat, max_entry, out);
    if (*nimreps) return cmd_nimreps(g, cat, size, zpath, index, max_entry, out);
    if (*induce) return cmd_induce(g, cat, second, handedness, out);
    if (*cardy) return cmd_cardy(g, cat, second, index, out);
    if (*partition) return cmd_partition(g, cat, second, index, a, b, beta, order, check, out);
    if (*qsearch) return cmd_qsearch(g, cat, theta, starts, out);
    if (*catalog_cmd) return cmd_catalog(g, cat, level, qsys, nimrep_name, out);
  } catch (const ValidationError& e) {
    std::cerr << "validation failure: " << e.what() << "\n";
    return kFailed;
  } catch (const InconsistencyError& e) {
    std::cerr << "inconsistency: " << e.what() << "\n";
    return kFailed;
  } catch (const NumericError& e) {
    std::cerr << "numeric degeneracy: " << e.what() << "\n";
    return kNumeric;
  } catch (const StructuralError& e) {
    std::cerr << "malformed input: " << e.what() << "\n";
    return kMalformed;
  } catch (const InputError& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kMalformed;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "malformed input: " << e.what() << "\n";
    return kMalformed;
  }
  return kMalformed;
}
