#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "doctest.h"
#include "json.hpp"

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = darboux::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

nlohmann::json json_of(const Run& r) { return nlohmann::json::parse(r.out); }

}  // namespace

TEST_CASE("usage errors exit with 2") {
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"genus", "no-such-id"}).code == 2);
  CHECK(run({"discover", "2-i"}).code == 2);
  CHECK(run({"plot", "2-i", "--window", "1,2,3"}).code == 2);
  CHECK(run({"catalog", "dance"}).code == 2);
}

TEST_CASE("verify reports pass, erratum rescue and trusted failure") {
  const Run ok = run({"verify", "2-i", "--json"});
  CHECK(ok.code == 0);
  const auto j = json_of(ok);
  CHECK(j["schema_version"] == darboux::cli::kSchemaVersion);
  CHECK(j["command"] == "verify");
  CHECK(!j["entries"][0].contains("seconds"));

  const Run rescued = run({"verify", "4-ii"});
  CHECK(rescued.code == 0);
  CHECK(rescued.out.find("pass-with-erratum") != std::string::npos);

  const Run manual = run({"verify", "1-filipstov"});
  CHECK(manual.code == 1);
  CHECK(manual.out.find("fail-manual-erratum-verifies") != std::string::npos);

  const Run timed = run({"verify", "2-i", "--json", "--timings"});
  CHECK(json_of(timed)["entries"][0].contains("seconds"));
}

TEST_CASE("text output renders the same document as json") {
  const Run text = run({"catalog", "list"});
  const Run js = run({"catalog", "list", "--json"});
  REQUIRE(text.code == 0);
  REQUIRE(js.code == 0);
  for (const auto& e : json_of(js)["entries"]) {
    CHECK(text.out.find(e["id"].get<std::string>()) != std::string::npos);
  }
}

TEST_CASE("genus and discover") {
  const Run g = run({"genus", "2-i", "--json"});
  CHECK(g.code == 0);
  const auto j = json_of(g);
  CHECK(j["runs"][0]["report"]["genus"] == 1);
  CHECK(j["runs"][0]["bindings"].size() == 1);

  const Run d = run({"discover", "2-i", "--degree", "3"});
  CHECK(d.code == 0);
  CHECK(d.out.find("no curves found") != std::string::npos);
}

TEST_CASE("plot writes a deterministic svg") {
  const auto dir = std::filesystem::temp_directory_path() / "darboux_cli_plot";
  std::filesystem::create_directories(dir);
  const std::string a = (dir / "a.svg").string(), b = (dir / "b.svg").string();
  const Run r1 = run({"plot", "2-i", "--resolution", "128", "--out", a, "--json"});
  const Run r2 = run({"plot", "2-i", "--resolution", "128", "--out", b, "--json"});
  REQUIRE(r1.code == 0);
  REQUIRE(r2.code == 0);
  CHECK(json_of(r1)["svg"]["sha256"] == json_of(r2)["svg"]["sha256"]);
  std::filesystem::remove_all(dir);
}

TEST_CASE("a tampered catalog file is flagged") {
  const auto dir = std::filesystem::temp_directory_path() / "darboux_cli_export";
  std::filesystem::remove_all(dir);
  REQUIRE(run({"catalog", "export", dir.string()}).code == 0);
  const std::string file = (dir / "catalog.json").string();
  CHECK(run({"catalog", "check", file}).code == 0);
  {
    std::ofstream out(file, std::ios::app);
    out << "\n";
  }
  const Run bad = run({"catalog", "check", file});
  CHECK(bad.code == 1);
  CHECK(bad.out.find("DIFFERS") != std::string::npos);
  const Run warned = run({"--catalog", file, "verify", "2-i"});
  CHECK(warned.err.find("differs from the embedded catalog") != std::string::npos);
  std::filesystem::remove_all(dir);
}
