#pragma once

#include "bcft/catalog.hpp"
#include "bcft/classify.hpp"
#include "bcft/induction.hpp"
#include "bcft/partition.hpp"
#include "bcft/qsystem.hpp"

#include <json.hpp>

#include <filesystem>
#include <string>
#include <vector>

namespace bcft::io {

/// Keys are kept sorted, so dumps are canonical.
using Json = nlohmann::json;

// All loaders are strict: unknown members, missing members and wrong types
// raise StructuralError naming the offending path. Axioms are not checked.

Json category_to_json(const CategoryData& data);
CategoryData category_from_json(const Json& j);

Json qsystem_to_json(const QSystemSpec& q);
QSystemSpec qsystem_from_json(const Json& j);

Json nimrep_to_json(const Nimrep& n);
Nimrep nimrep_from_json(const Json& j);

Json matrix_to_json(const IMatrix& m);
IMatrix matrix_from_json(const Json& j, const std::string& where);
/// {"Z": rows}.
IMatrix coupling_from_json(const Json& j);

Json complex_matrix_to_json(const CMatrix& m);

/// Two-space indented dump with a trailing newline.
std::string dump(const Json& j);
Json read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const Json& j);

/// Lowercase hex SHA-256.
std::string sha256_hex(const std::string& bytes);
/// Hash of the canonical dump, independent of the file's formatting.
std::string fingerprint(const Json& j);

struct ReportInput {
  std::string role;
  Json content;
};

/// {"operation", "inputs": [{"role", "sha256"}], "settings", "payload"}.
Json make_report(const std::string& operation, const std::vector<ReportInput>& inputs,
                 const Json& settings, const Json& payload);

Json to_json(const CouplingMatrix& z);
Json to_json(const ThetaPlus& t);
Json to_json(const IndexLedger& l);
Json to_json(const BoundaryFieldBasis& b);
Json to_json(const CardySolution& c);
Json to_json(const AnnulusReport& r);
Json to_json(const QSearchResult& r);
Json to_json(const ValidationReport& r);

}  // namespace bcft::io
