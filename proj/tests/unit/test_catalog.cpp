#include <filesystem>
#include <fstream>

#include "darboux/catalog/catalog.hpp"
#include "darboux/discovery/repair.hpp"
#include "darboux/io/expr.hpp"
#include "doctest.h"

using namespace darboux;

namespace {

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("darboux_test_" + name);
  std::filesystem::remove_all(dir);
  return dir;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

TEST_CASE("sha-256 known answers") {
  CHECK(catalog::sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  CHECK(catalog::sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("embedded fixtures are intact and parse") {
  CHECK(catalog::embedded_intact());
  const auto files = catalog::embedded_files();
  REQUIRE(!files.empty());
  CHECK(files[0].name == "catalog.json");
  for (const auto& f : files) CHECK(f.intact());
  const auto& entries = catalog::builtin();
  CHECK(entries.size() == 15);
  for (const auto* id : {"1-filipstov", "1-quartic2", "1-deg12", "2-i", "2-ii", "2-iii", "3-i", "4-i", "4-ii", "5"}) {
    CHECK(catalog::find(entries, id) != nullptr);
  }
  CHECK(catalog::find(entries, "nope") == nullptr);
}

TEST_CASE("every erratum re-verifies and round-trips") {
  const auto& entries = catalog::builtin();
  REQUIRE(!catalog::builtin_errata().empty());
  for (const auto& e : catalog::builtin_errata()) {
    CAPTURE(e.id);
    const auto* entry = catalog::find(entries, e.id);
    REQUIRE(entry != nullptr);
    CHECK(catalog::verify_erratum(*entry, e).pass);
    CHECK(!e.diffs.empty());
    auto back = catalog::parse_erratum(catalog::serialize_erratum(e));
    REQUIRE(back.ok());
    CHECK(back.value() == e);
  }
  const auto* manual = catalog::find_erratum("1-filipstov");
  REQUIRE(manual != nullptr);
  CHECK(manual->kind == "manual");
  CHECK(catalog::find_erratum("2-i") == nullptr);
}

TEST_CASE("erratum schema violations are reported") {
  CHECK(!catalog::parse_erratum("[]").ok());
  CHECK(!catalog::parse_erratum(R"({"schema_version": 1, "id": "x", "kind": "guess"})").ok());
  auto bad = catalog::parse_erratum(
      R"({"schema_version": 1, "id": "x", "kind": "manual", "system": {"p": "y", "q": "z"}, "curve": "y +", "cofactor": "0"})");
  REQUIRE(!bad.ok());
  CHECK(bad.error().message.find("does not parse") != std::string::npos);
}

TEST_CASE("repair of a garbled entry yields a certified erratum") {
  const auto* entry = catalog::find(catalog::builtin(), "4-ii");
  REQUIRE(entry != nullptr);
  auto rep = discovery::repair(*entry);
  REQUIRE(rep.ok());
  CHECK(!rep.value().verbatim_verified);
  auto e = catalog::erratum_from_repair(*entry, rep.value());
  REQUIRE(e.has_value());
  CHECK(e->kind == "certified");
  CHECK(catalog::verify_erratum(*entry, *e).pass);
  const auto* committed = catalog::find_erratum("4-ii");
  REQUIRE(committed != nullptr);
  CHECK(io::parse_or_throw(committed->curve) == io::parse_or_throw(e->curve));
}

TEST_CASE("export writes the embedded bytes and tampering is detected") {
  const auto dir = scratch("export");
  catalog::export_to(dir);
  CHECK(slurp(dir / "catalog.json") == catalog::embedded_text());
  CHECK(catalog::matches_embedded(dir / "catalog.json"));
  const std::string sums = slurp(dir / "SHA256SUMS");
  CHECK(sums.find(std::string(catalog::embedded_sha256()) + "  catalog.json") != std::string::npos);
  for (const auto& f : catalog::embedded_files()) {
    if (f.name == "catalog.json") continue;
    CHECK(catalog::sha256_hex(slurp(dir / "errata" / f.name)) == f.sha256);
  }
  {
    std::ofstream out(dir / "catalog.json", std::ios::app);
    out << " ";
  }
  CHECK(!catalog::matches_embedded(dir / "catalog.json"));
  CHECK_THROWS(catalog::matches_embedded(dir / "missing.json"));
  std::filesystem::remove_all(dir);
}
