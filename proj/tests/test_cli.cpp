#include <doctest.h>

#include <cstdlib>
#include <string>
#include <sys/wait.h>

#include <json.hpp>

#include "aisdb/ingest.hpp"
#include "support/files.hpp"
#include "support/oracles.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

int cli(const std::string& args) {
  const std::string cmd = std::string("\"") + AISDB_CLI_PATH + "\" " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  REQUIRE(WIFEXITED(status));
  return WEXITSTATUS(status);
}

std::string q(const fs::path& p) { return "\"" + p.string() + "\""; }

const char* kJumpRows =
    "XCoord,YCoord,SOG,COG,ROT,BASEDATETIME,MMSI\n"
    "-121.1481,34.825067,20,330,0,200901071138,366882000\n"
    "-121.151967,34.830567,102,360,0,200901071139,366882000\n"
    "-121.155453,34.83544,21,329,0,200901071140,366882000\n";

}  // namespace

TEST_CASE("cli: synth then run end to end") {
  oracle::TempDir dir("cli_run");
  const auto raw = dir.path() / "raw.csv";
  REQUIRE(cli("synth --raw " + q(raw) + " --kind arc --turn-rate 0.3 --length 700 --count 3 --gap 300:5 --spike 40:80") == 0);
  REQUIRE(cli("run --input " + q(raw) + " --out " + q(dir.path() / "run") + " --jobs 2") == 0);
  const auto rep = json::parse(testfs::slurp(dir.path() / "run" / "clean_report.json"));
  CHECK(rep.at("reports").size() == 3);
  CHECK(rep.at("reports")[0].at("records_inserted") == 4);
  CHECK(aisdb::read_database(dir.path() / "run" / "database").tracks.size() == 3);

  // Same run with a different thread count is byte-identical.
  REQUIRE(cli("run --input " + q(raw) + " --out " + q(dir.path() / "run1") + " --jobs 1") == 0);
  CHECK(testfs::read_tree(dir.path() / "run") == testfs::read_tree(dir.path() / "run1"));
}

TEST_CASE("cli: subcommand composition, clean before screen, stats rerun") {
  oracle::TempDir dir("cli_compose");
  const auto raw = dir.path() / "raw.csv";
  REQUIRE(cli("synth --raw " + q(raw) + " --length 600 --count 2 --gap 100:4") == 0);
  REQUIRE(cli("ingest --input " + q(raw) + " --out " + q(dir.path() / "db")) == 0);
  CHECK(fs::exists(dir.path() / "db" / "100000001.csv"));
  CHECK(fs::exists(dir.path() / "db" / "ingest_report.json"));
  REQUIRE(cli("clean --db " + q(dir.path() / "db") + " --out " + q(dir.path() / "clean")) == 0);
  REQUIRE(cli("screen --db " + q(dir.path() / "clean") + " --out " + q(dir.path() / "screen") +
                " --accepted-out " + q(dir.path() / "accepted")) == 0);
  CHECK(fs::exists(dir.path() / "accepted" / "100000002.csv"));
  const auto stats = "stats --db " + q(dir.path() / "clean") + " --clean-report " +
                     q(dir.path() / "clean" / "clean_report.json") + " --out ";
  REQUIRE(cli(stats + q(dir.path() / "s1")) == 0);
  REQUIRE(cli(stats + q(dir.path() / "s2")) == 0);
  const auto s1 = testfs::read_tree(dir.path() / "s1");
  CHECK(s1 == testfs::read_tree(dir.path() / "s2"));
  CHECK(s1.at("fig16_len.csv").find("Short,2") != std::string::npos);
}

TEST_CASE("cli: clean on the erroneous-jump file") {
  oracle::TempDir dir("cli_jump");
  fs::create_directories(dir.path() / "db");
  testfs::spit(dir.path() / "db" / "366882000.csv", kJumpRows);
  REQUIRE(cli("clean --annotated --db " + q(dir.path() / "db") + " --out " + q(dir.path() / "out")) == 0);
  const auto text = testfs::slurp(dir.path() / "out" / "366882000.csv");
  CHECK(text.find("-121.151967,34.830567,20,360,0,200901071139,366882000,CORRECTED") != std::string::npos);
  const auto rep = json::parse(testfs::slurp(dir.path() / "out" / "clean_report.json"));
  CHECK(rep.at("reports")[0].at("sog_correction_indices") == json::array({1}));
}

TEST_CASE("cli: predict writes errors, histogram, predicted track and manifest") {
  oracle::TempDir dir("cli_predict");
  REQUIRE(cli("synth --out " + q(dir.path() / "db") + " --length 400 --mmsi 7") == 0);
  REQUIRE(cli("predict --track " + q(dir.path() / "db" / "7.csv") + " --out " + q(dir.path() / "p") +
                " --samples 50 --hidden 20 --stride 10") == 0);
  for (const char* f : {"errors.csv", "histogram.csv", "predicted_track.csv", "manifest.json"}) {
    CAPTURE(f);
    CHECK(fs::exists(dir.path() / "p" / f));
  }
  CHECK(testfs::slurp(dir.path() / "p" / "errors.csv").starts_with("t_c,error_nm\n"));
  const auto m = json::parse(testfs::slurp(dir.path() / "p" / "manifest.json"));
  CHECK(m.at("samples") == 50);
  CHECK(m.at("hidden") == 20);

  // Track too short for the default windows: configuration does not fit the data.
  CHECK(cli("predict --track " + q(dir.path() / "db" / "7.csv") + " --out " + q(dir.path() / "p2") + " --samples 400") == 3);
}

TEST_CASE("cli: exit codes") {
  oracle::TempDir dir("cli_exit");
  CHECK(cli("") == 3);
  CHECK(cli("frobnicate") == 3);
  CHECK(cli("run --input " + q(dir.path() / "missing.csv") + " --out " + q(dir.path() / "o")) == 1);

  testfs::spit(dir.path() / "noschema.csv", "XCoord,YCoord,SOG,BASEDATETIME,MMSI\n");
  CHECK(cli("run --input " + q(dir.path() / "noschema.csv") + " --out " + q(dir.path() / "o")) == 2);

  testfs::spit(dir.path() / "ok.csv", kJumpRows);
  testfs::spit(dir.path() / "bad.json", "{\"screen\": {\"min_run\": \"many\"}}");
  CHECK(cli("run --config " + q(dir.path() / "bad.json") + " --input " + q(dir.path() / "ok.csv") + " --out " +
              q(dir.path() / "o")) == 3);
  CHECK_FALSE(fs::exists(dir.path() / "o"));
  CHECK(cli("run --input " + q(dir.path() / "ok.csv") + " --out " + q(dir.path() / "o") + " --min-run 0") == 3);
  CHECK(cli("synth --out " + q(dir.path() / "s") + " --kind spiral") == 3);

  // Flags override the config file.
  testfs::spit(dir.path() / "good.json", "{\"screen\": {\"min_run\": 2}, \"seed\": 9}");
  REQUIRE(cli("run --config " + q(dir.path() / "good.json") + " --seed 11 --input " + q(dir.path() / "ok.csv") +
                " --out " + q(dir.path() / "o2")) == 0);
  const auto m = json::parse(testfs::slurp(dir.path() / "o2" / "manifest.json"));
  CHECK(m.at("seed") == 11);
  CHECK(m.at("screen").at("min_run") == 2);
  CHECK(cli("run --input " + q(dir.path() / "ok.csv") + " --out " + q(dir.path() / "o") + " --help") == 0);
}
