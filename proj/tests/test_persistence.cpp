#include <random>

#include "doctest.h"
#include "store/hash.hpp"
#include "store/persistence.hpp"
#include "support.hpp"

using namespace store;
using testing::error_of;
using nlohmann::json;
namespace fs = std::filesystem;

TEST_SUITE("persistence") {

TEST_CASE("save and load the ERP fixture") {
  const auto p = testing::erp_project();
  CHECK(p.goals.size() == 7);
  CHECK(p.stakeholders.size() == 11);
  CHECK(p.assets.size() == 17);
  CHECK(p.attack_points.size() == 32);
  CHECK(p.threats.size() == 12);
  CHECK(p.assessments.size() == 12);

  testing::TempDir dir;
  const auto path = dir / "erp.store.json";
  const auto bytes = persistence::save(p, path);
  CHECK(testing::read_file(path) == bytes);
  CHECK(bytes == testing::read_file(testing::erp_project_path()));
  CHECK(persistence::load(path) == p);
}

TEST_CASE("saving twice gives identical bytes") {
  testing::TempDir dir;
  const auto p = testing::minimal_project(10);
  const auto first = persistence::save(p, dir / "a.store.json");
  const auto second = persistence::save(persistence::load(dir / "a.store.json"), dir / "a.store.json");
  CHECK(first == second);
  CHECK(first.back() == '\n');
  CHECK(first.find('\r') == std::string::npos);
}

TEST_CASE("file envelope") {
  const auto p = testing::minimal_project(4);
  const auto doc = json::parse(persistence::serialize(p));
  CHECK(doc["schema_version"] == 1);
  CHECK(doc["integrity"]["algorithm"] == "sha256");
  CHECK(doc["integrity"]["digest"] == sha256_hex(doc["project"].dump()));
  CHECK(doc["project"]["threats"].is_array());
}

TEST_CASE("save refuses an invalid project and leaves no files behind") {
  testing::TempDir dir;
  auto p = testing::minimal_project(6);
  p.threats[0].asset_refs.push_back("A9");
  try {
    persistence::save(p, dir / "bad.store.json");
    FAIL("expected InvalidProject");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InvalidProject);
    CHECK(e.details().dump().find("T1") != std::string::npos);
  }
  CHECK(fs::is_empty(dir.path()));
}

TEST_CASE("atomic save leaves only the destination") {
  testing::TempDir dir;
  for (int i = 0; i < 5; ++i) persistence::save(testing::minimal_project(i), dir / "p.store.json");
  int files = 0;
  for (const auto& e : fs::directory_iterator(dir.path())) {
    ++files;
    CHECK(e.path().filename() == "p.store.json");
  }
  CHECK(files == 1);
  CHECK(error_of([&] { persistence::save(testing::fresh(), dir / "missing" / "p.store.json"); }) ==
        ErrorCode::IoFailure);
}

TEST_CASE("load failures") {
  testing::TempDir dir;
  const auto bytes = persistence::serialize(testing::erp_project());

  SUBCASE("tampered byte") {
    auto tampered = bytes;
    const auto at = tampered.find("College ERP system");
    REQUIRE(at != std::string::npos);
    tampered[at] = 'K';
    CHECK(error_of([&] { persistence::deserialize(tampered); }) == ErrorCode::IntegrityMismatch);
  }
  SUBCASE("unknown schema version") {
    auto doc = json::parse(bytes);
    doc["schema_version"] = 999;
    CHECK(error_of([&] { persistence::deserialize(doc.dump(2)); }) == ErrorCode::UnsupportedSchemaVersion);
  }
  SUBCASE("not JSON") {
    CHECK(error_of([] { persistence::deserialize("garbage{"); }) == ErrorCode::ParseError);
    CHECK(error_of([] { persistence::deserialize("{}"); }) == ErrorCode::ParseError);
  }
  SUBCASE("missing file") {
    CHECK(error_of([&] { persistence::load(dir / "nope.store.json"); }) == ErrorCode::IoFailure);
  }
  SUBCASE("valid envelope around an invalid project") {
    auto doc = json::parse(bytes);
    doc["project"]["threats"][0]["stride"] = json::array();
    doc["integrity"]["digest"] = sha256_hex(doc["project"].dump());
    testing::write_file(dir / "x.store.json", doc.dump(2) + "\n");
    CHECK(error_of([&] { persistence::load(dir / "x.store.json"); }) == ErrorCode::InvalidProject);
  }
}

TEST_CASE("random projects round-trip") {
  std::mt19937 rng(99);
  for (int i = 0; i < 100; ++i) {
    const auto p = testing::random_project(rng);
    const auto bytes = persistence::serialize(p);
    const auto back = persistence::deserialize(bytes);
    CHECK(back == p);
    CHECK(persistence::serialize(back) == bytes);
  }
}

TEST_CASE("encode uses the file spellings") {
  const auto p = testing::minimal_project(8);
  const auto threat = persistence::encode(p.threats[0]);
  CHECK(threat["stride"] == json::array({"T"}));
  const auto risk = persistence::encode(p.assessments[0]);
  CHECK(risk["method"] == "Dread");
  CHECK(risk["score_tenths"] == 80);
  CHECK(risk["band"] == "High");
  CHECK(persistence::encode(p.requirements[0])["origin"]["kind"] == "Manual");
}

}
