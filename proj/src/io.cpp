#include "bcft/io.hpp"

#include <openssl/evp.h>

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace bcft::io {

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw StructuralError(where + ": " + what);
}

void check_members(const Json& j, const std::string& where,
                   const std::set<std::string>& required,
                   const std::set<std::string>& optional = {}) {
  if (!j.is_object()) fail(where, "expected an object");
  for (const auto& [key, value] : j.items()) {
    if (!required.count(key) && !optional.count(key)) fail(where, "unknown member \"" + key + "\"");
  }
  for (const auto& key : required) {
    if (!j.contains(key)) fail(where, "missing member \"" + key + "\"");
  }
}

const Json& array_at(const Json& j, const std::string& key, const std::string& where) {
  const Json& a = j.at(key);
  if (!a.is_array()) fail(where + "." + key, "expected an array");
  return a;
}

long long get_int(const Json& j, const std::string& where) {
  if (!j.is_number_integer()) fail(where, "expected an integer");
  return j.get<long long>();
}

double get_real(const Json& j, const std::string& where) {
  if (!j.is_number()) fail(where, "expected a number");
  return j.get<double>();
}

cplx get_cplx(const Json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2) fail(where, "expected [re, im]");
  return {get_real(j[0], where + "[0]"), get_real(j[1], where + "[1]")};
}

Json cplx_json(cplx z) { return Json::array({z.real(), z.imag()}); }

std::vector<int> int_list(const Json& j, const std::string& where, size_t expected_size = 0) {
  if (!j.is_array()) fail(where, "expected an array");
  if (expected_size && j.size() != expected_size) {
    fail(where, "expected " + std::to_string(expected_size) + " entries");
  }
  std::vector<int> out;
  for (size_t i = 0; i < j.size(); ++i) {
    out.push_back(static_cast<int>(get_int(j[i], where + "[" + std::to_string(i) + "]")));
  }
  return out;
}

Json finite_or_null(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

}  // namespace

Json category_to_json(const CategoryData& data) {
  const FusionRing& ring = data.ring;
  const int n = ring.rank();
  Json j;
  j["labels"] = ring.labels();
  j["dual"] = ring.duals();
  Json N = Json::array();
  for (int s = 0; s < n; ++s)
    for (int t = 0; t < n; ++t)
      for (int u = 0; u < n; ++u)
        if (ring.N(s, t, u)) N.push_back({s, t, u, ring.N(s, t, u)});
  j["N"] = N;
  Json S = Json::array();
  for (int s = 0; s < n; ++s) {
    Json row = Json::array();
    for (int t = 0; t < n; ++t) row.push_back(cplx_json(data.modular.S()(s, t)));
    S.push_back(row);
  }
  j["S"] = S;
  Json T = Json::array();
  for (int s = 0; s < n; ++s) T.push_back(cplx_json(data.modular.T()(s)));
  j["T"] = T;
  if (data.presentation) {
    Json F = Json::array(), R = Json::array();
    for (const auto& [k, v] : data.presentation->f_symbols()) {
      F.push_back({{"labels", k}, {"value", cplx_json(v)}});
    }
    for (const auto& [k, v] : data.presentation->r_symbols()) {
      R.push_back({{"labels", k}, {"value", cplx_json(v)}});
    }
    j["F"] = F;
    j["R"] = R;
  }
  if (data.central_charge) j["central_charge"] = *data.central_charge;
  return j;
}

CategoryData category_from_json(const Json& j) {
  check_members(j, "category", {"labels", "dual", "N", "S", "T"}, {"F", "R", "central_charge"});
  const Json& labels_j = array_at(j, "labels", "category");
  std::vector<std::string> labels;
  for (size_t i = 0; i < labels_j.size(); ++i) {
    if (!labels_j[i].is_string()) fail("category.labels[" + std::to_string(i) + "]", "expected a string");
    labels.push_back(labels_j[i].get<std::string>());
  }
  const int n = static_cast<int>(labels.size());
  if (n == 0) fail("category.labels", "no sectors");
  const std::vector<int> dual = int_list(j.at("dual"), "category.dual", n);

  std::vector<int> mult(static_cast<size_t>(n) * n * n, 0);
  const Json& N = array_at(j, "N", "category");
  for (size_t i = 0; i < N.size(); ++i) {
    const std::string where = "category.N[" + std::to_string(i) + "]";
    const std::vector<int> e = int_list(N[i], where, 4);
    for (int k = 0; k < 3; ++k)
      if (e[k] < 0 || e[k] >= n) fail(where, "label out of range");
    mult[(static_cast<size_t>(e[0]) * n + e[1]) * n + e[2]] = e[3];
  }
  FusionRing ring(labels, dual, mult);

  const Json& S_j = array_at(j, "S", "category");
  if (static_cast<int>(S_j.size()) != n) fail("category.S", "expected " + std::to_string(n) + " rows");
  CMatrix S(n, n);
  for (int s = 0; s < n; ++s) {
    const std::string where = "category.S[" + std::to_string(s) + "]";
    if (!S_j[s].is_array() || static_cast<int>(S_j[s].size()) != n) fail(where, "wrong row length");
    for (int t = 0; t < n; ++t) S(s, t) = get_cplx(S_j[s][t], where + "[" + std::to_string(t) + "]");
  }
  const Json& T_j = array_at(j, "T", "category");
  if (static_cast<int>(T_j.size()) != n) fail("category.T", "expected " + std::to_string(n) + " entries");
  CVector T(n);
  for (int s = 0; s < n; ++s) T(s) = get_cplx(T_j[s], "category.T[" + std::to_string(s) + "]");

  CategoryData out{ring, ModularData(ring, S, T), std::nullopt, std::nullopt};
  if (j.contains("F") != j.contains("R")) fail("category", "F and R must be given together");
  if (j.contains("F")) {
    std::map<FKey, cplx> F;
    std::map<RKey, cplx> R;
    const Json& F_j = array_at(j, "F", "category");
    for (size_t i = 0; i < F_j.size(); ++i) {
      const std::string where = "category.F[" + std::to_string(i) + "]";
      check_members(F_j[i], where, {"labels", "value"});
      const std::vector<int> l = int_list(F_j[i].at("labels"), where + ".labels", 6);
      FKey k;
      std::copy(l.begin(), l.end(), k.begin());
      if (!F.emplace(k, get_cplx(F_j[i].at("value"), where + ".value")).second) {
        fail(where, "duplicate entry");
      }
    }
    const Json& R_j = array_at(j, "R", "category");
    for (size_t i = 0; i < R_j.size(); ++i) {
      const std::string where = "category.R[" + std::to_string(i) + "]";
      check_members(R_j[i], where, {"labels", "value"});
      const std::vector<int> l = int_list(R_j[i].at("labels"), where + ".labels", 3);
      if (!R.emplace(RKey{l[0], l[1], l[2]}, get_cplx(R_j[i].at("value"), where + ".value")).second) {
        fail(where, "duplicate entry");
      }
    }
    out.presentation.emplace(ring, F, R);
  }
  if (j.contains("central_charge")) {
    out.central_charge = get_real(j.at("central_charge"), "category.central_charge");
  }
  return out;
}

Json qsystem_to_json(const QSystemSpec& q) {
  Json lambda = Json::array();
  for (const auto& [k, v] : q.lambda) {
    lambda.push_back({{"summands", k}, {"channel", 0}, {"value", cplx_json(v)}});
  }
  return {{"theta", q.theta}, {"lambda", lambda}};
}

QSystemSpec qsystem_from_json(const Json& j) {
  check_members(j, "qsystem", {"theta", "lambda"});
  QSystemSpec q;
  q.theta = int_list(j.at("theta"), "qsystem.theta");
  const Json& L = array_at(j, "lambda", "qsystem");
  for (size_t i = 0; i < L.size(); ++i) {
    const std::string where = "qsystem.lambda[" + std::to_string(i) + "]";
    check_members(L[i], where, {"summands", "value"}, {"channel"});
    const std::vector<int> s = int_list(L[i].at("summands"), where + ".summands", 3);
    if (L[i].contains("channel") && get_int(L[i].at("channel"), where + ".channel") != 0) {
      fail(where + ".channel", "only channel 0 exists in a multiplicity-free category");
    }
    if (!q.lambda.emplace(LambdaKey{s[0], s[1], s[2]}, get_cplx(L[i].at("value"), where + ".value")).second) {
      fail(where, "duplicate entry");
    }
  }
  return q;
}

Json matrix_to_json(const IMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(m(i, k));
    rows.push_back(row);
  }
  return rows;
}

IMatrix matrix_from_json(const Json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) fail(where, "expected a non-empty array of rows");
  const size_t cols = j[0].is_array() ? j[0].size() : 0;
  IMatrix m(j.size(), cols);
  for (size_t i = 0; i < j.size(); ++i) {
    const std::string w = where + "[" + std::to_string(i) + "]";
    if (!j[i].is_array() || j[i].size() != cols) fail(w, "ragged or malformed row");
    for (size_t k = 0; k < cols; ++k) m(i, k) = get_int(j[i][k], w + "[" + std::to_string(k) + "]");
  }
  return m;
}

IMatrix coupling_from_json(const Json& j) {
  check_members(j, "coupling", {"Z"});
  return matrix_from_json(j.at("Z"), "coupling.Z");
}

Json nimrep_to_json(const Nimrep& n) {
  Json mats = Json::array();
  for (const IMatrix& m : n.n) mats.push_back(matrix_to_json(m));
  return {{"size", n.size}, {"n", mats}};
}

Nimrep nimrep_from_json(const Json& j) {
  check_members(j, "nimrep", {"size", "n"});
  Nimrep out;
  out.size = static_cast<int>(get_int(j.at("size"), "nimrep.size"));
  if (out.size < 1) fail("nimrep.size", "must be positive");
  const Json& mats = array_at(j, "n", "nimrep");
  for (size_t s = 0; s < mats.size(); ++s) {
    const std::string where = "nimrep.n[" + std::to_string(s) + "]";
    IMatrix m = matrix_from_json(mats[s], where);
    if (m.rows() != out.size || m.cols() != out.size) fail(where, "wrong shape");
    out.n.push_back(std::move(m));
  }
  return out;
}

Json complex_matrix_to_json(const CMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(cplx_json(m(i, k)));
    rows.push_back(row);
  }
  return rows;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Json read_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw StructuralError("cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return Json::parse(buf.str());
  } catch (const Json::parse_error& e) {
    throw StructuralError(path.string() + ": " + e.what());
  }
}

void write_file(const std::filesystem::path& path, const Json& j) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw StructuralError("cannot write " + path.string());
  out << dump(j);
}

std::string sha256_hex(const std::string& bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (!EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr)) {
    throw Error("SHA-256 failed");
  }
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[md[i] >> 4];
    out += hex[md[i] & 15];
  }
  return out;
}

std::string fingerprint(const Json& j) { return sha256_hex(j.dump()); }

Json make_report(const std::string& operation, const std::vector<ReportInput>& inputs,
                 const Json& settings, const Json& payload) {
  Json in = Json::array();
  for (const auto& i : inputs) in.push_back({{"role", i.role}, {"sha256", fingerprint(i.content)}});
  return {{"operation", operation}, {"inputs", in}, {"settings", settings}, {"payload", payload}};
}

Json to_json(const CouplingMatrix& z) {
  return {{"Z", matrix_to_json(z.Z)}, {"min_gap_ratio", finite_or_null(z.min_gap_ratio)}};
}

Json to_json(const ThetaPlus& t) {
  return {{"multiplicities", t.multiplicities}, {"dimension", t.dimension}};
}

Json to_json(const IndexLedger& l) {
  return {{"lambda", l.lambda},       {"lambda_plus", l.lambda_plus},
          {"mu_A", l.mu_A},           {"dual_index", l.dual_index},
          {"mu_B_plus", l.mu_B_plus}, {"haag_dual", l.haag_dual}};
}

Json to_json(const BoundaryFieldBasis& b) {
  Json coeffs = Json::array();
  for (const auto& [k, v] : b.coefficients) {
    coeffs.push_back({{"index", k}, {"value", cplx_json(v)}});
  }
  return {{"sigma", b.sigma},
          {"tau", b.tau},
          {"fields", b.fields.size()},
          {"coefficients", coeffs},
          {"projector", complex_matrix_to_json(b.projector)},
          {"normalization_residual", b.normalization_residual},
          {"projector_residual", b.projector_residual}};
}

Json to_json(const CardySolution& c) {
  return {{"psi", complex_matrix_to_json(c.psi)},
          {"exponents", c.exponents},
          {"residual", c.residual}};
}

Json to_json(const AnnulusReport& r) {
  return {{"a", r.a},
          {"b", r.b},
          {"beta", r.beta},
          {"beta_hat", r.beta_hat},
          {"direct", r.direct},
          {"transformed", r.transformed},
          {"residual", r.residual},
          {"tail_bound", r.tail_bound},
          {"passed", r.passed}};
}

Json to_json(const QSearchResult& r) {
  Json sols = Json::array();
  for (const auto& q : r.solutions) sols.push_back(qsystem_to_json(q));
  return {{"status", to_string(r.status)},
          {"theta", r.theta},
          {"solutions", sols},
          {"fingerprints", r.fingerprints}};
}

Json to_json(const ValidationReport& r) {
  Json v = Json::array();
  for (const auto& x : r.violations) v.push_back({{"code", x.code}, {"message", x.message}});
  return v;
}

}  // namespace bcft::io
