#include "bcft/io.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>

using namespace bcft;
using io::Json;

namespace {

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("bcft_test_io_" + name);
}

template <class Fn>
std::string structural_message(Fn&& fn) {
  try {
    fn();
  } catch (const StructuralError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("category files round-trip byte for byte") {
  for (const auto& [name, data] : oracle::catalogs()) {
    CAPTURE(name);
    const std::string first = io::dump(io::category_to_json(data));
    const CategoryData back = io::category_from_json(Json::parse(first));
    const std::string second = io::dump(io::category_to_json(back));
    CHECK(first == second);
    CHECK(back.ring == data.ring);
    CHECK(back.modular.S() == data.modular.S());
    CHECK(back.modular.T() == data.modular.T());
    REQUIRE(back.presentation);
    CHECK(back.presentation->f_symbols() == data.presentation->f_symbols());
    CHECK(back.presentation->r_symbols() == data.presentation->r_symbols());
    CHECK(back.central_charge == data.central_charge);
    CHECK(validate_category(back).ok());
  }
}

TEST_CASE("category loader is strict") {
  const Json good = io::category_to_json(catalog::ising());

  Json extra = good;
  extra["colour"] = 1;
  CHECK(structural_message([&] { io::category_from_json(extra); }).find("colour") !=
        std::string::npos);

  Json missing = good;
  missing.erase("S");
  CHECK(structural_message([&] { io::category_from_json(missing); }).find("S") !=
        std::string::npos);

  Json wrong = good;
  wrong["dual"][1] = "x";
  CHECK_FALSE(structural_message([&] { io::category_from_json(wrong); }).empty());

  Json half = good;
  half.erase("R");
  CHECK_THROWS_AS(io::category_from_json(half), StructuralError);

  Json bare = good;
  bare.erase("F");
  bare.erase("R");
  bare.erase("central_charge");
  const CategoryData ring_only = io::category_from_json(bare);
  CHECK_FALSE(ring_only.presentation);
  CHECK_FALSE(ring_only.central_charge);

  Json bad_value = good;
  bad_value["F"][0]["value"] = Json::array({1.0});
  CHECK_THROWS_AS(io::category_from_json(bad_value), StructuralError);
}

TEST_CASE("Q-system files") {
  const CategoryData ising = catalog::ising();
  const QSystemSpec car = qsystems::car(*ising.presentation, 2);
  const Json j = io::qsystem_to_json(car);
  const QSystemSpec back = io::qsystem_from_json(j);
  CHECK(back.theta == car.theta);
  CHECK(back.lambda == car.lambda);
  CHECK(io::dump(io::qsystem_to_json(back)) == io::dump(j));
  CHECK(j.at("lambda")[0].at("channel") == 0);

  Json channel = j;
  channel["lambda"][0]["channel"] = 1;
  CHECK_THROWS_AS(io::qsystem_from_json(channel), StructuralError);
  Json unknown = j;
  unknown["w"] = 1;
  CHECK_THROWS_AS(io::qsystem_from_json(unknown), StructuralError);
}

TEST_CASE("nimrep and matrix files") {
  const Nimrep r = regular_nimrep(catalog::su2(3).ring);
  const Json j = io::nimrep_to_json(r);
  CHECK(io::nimrep_from_json(j) == r);
  CHECK(io::dump(io::nimrep_to_json(io::nimrep_from_json(j))) == io::dump(j));
  Json bad = j;
  bad["size"] = 3;
  CHECK_THROWS_AS(io::nimrep_from_json(bad), StructuralError);

  IMatrix Z = IMatrix::Identity(3, 3);
  Z(0, 2) = 2;
  CHECK(io::coupling_from_json(Json{{"Z", io::matrix_to_json(Z)}}) == Z);
  CHECK_THROWS_AS(io::coupling_from_json(Json{{"Z", Json::array({Json::array({1, 0}), Json::array({0})})}}),
                  StructuralError);
}

TEST_CASE("hashing") {
  CHECK(io::sha256_hex("abc") ==
        "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  CHECK(io::sha256_hex("") ==
        "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  const Json a = Json::parse(R"({"b": 1, "a": [1, 2]})");
  const Json b = Json::parse("{\n  \"a\":[1,2],\"b\":1}");
  CHECK(io::fingerprint(a) == io::fingerprint(b));
  CHECK(io::fingerprint(a) != io::fingerprint(Json::parse(R"({"a": [2, 1], "b": 1})")));
}

TEST_CASE("reports carry input hashes and settings") {
  const Json cat = io::category_to_json(catalog::fibonacci());
  const Json r = io::make_report("demo", {{"category", cat}}, {{"tolerance", 1e-9}},
                                 {{"value", 3}});
  CHECK(r.at("operation") == "demo");
  CHECK(r.at("inputs")[0].at("role") == "category");
  CHECK(r.at("inputs")[0].at("sha256") == io::fingerprint(cat));
  CHECK(r.at("settings").at("tolerance") == 1e-9);
  CHECK(r.at("payload").at("value") == 3);
  CHECK(io::dump(r) == io::dump(io::make_report("demo", {{"category", cat}},
                                                {{"tolerance", 1e-9}}, {{"value", 3}})));
}

TEST_CASE("files on disk") {
  const auto path = temp_file("ising.json");
  const Json j = io::category_to_json(catalog::ising());
  io::write_file(path, j);
  std::ifstream in(path);
  const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  CHECK(text == io::dump(j));
  CHECK(text.back() == '\n');
  CHECK(io::read_file(path) == j);

  const auto broken = temp_file("broken.json");
  std::ofstream(broken) << "{ not json";
  CHECK_THROWS_AS(io::read_file(broken), StructuralError);
  CHECK_THROWS_AS(io::read_file(temp_file("does_not_exist.json")), StructuralError);
  std::filesystem::remove(path);
  std::filesystem::remove(broken);
}

TEST_CASE("result payloads") {
  const CategoryData ising = catalog::ising();
  const CategoryPresentation& cat = *ising.presentation;
  const CouplingMatrix z = coupling_from_qsystem(cat, qsystems::car(cat, 2));
  const Json zj = io::to_json(z);
  CHECK(io::matrix_from_json(zj.at("Z"), "Z") == z.Z);
  CHECK(zj.at("min_gap_ratio").is_null());

  const Json lj = io::to_json(index_ledger(ising.ring, qsystems::car(cat, 2), z.Z));
  CHECK(lj.at("haag_dual") == true);
  CHECK(std::abs(lj.at("mu_B_plus").get<double>() - 1) < 1e-9);

  const Json tj = io::to_json(theta_plus(ising.ring, z.Z));
  CHECK(tj.at("multiplicities") == Json::array({3, 0, 1}));

  const Json fj = io::to_json(charged_field_basis(cat, qsystems::trivial(cat), 1, 1));
  CHECK(fj.at("coefficients").size() >= 1);
  CHECK(fj.at("coefficients")[0].at("index").size() == 4);

  ValidationReport rep;
  rep.add("code", "message");
  const Json vj = io::to_json(rep);
  CHECK(vj[0].at("code") == "code");
}
