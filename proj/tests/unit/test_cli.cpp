// Copyright 2026 The lfspec Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "lfs/cli.hpp"

using namespace lfs;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code = 0;
  std::string out;
  std::string err;
};

Run cli(std::vector<std::string> args) {
  args.insert(args.begin(), "lfspec");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  Run r;
  r.code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream is(s);
  for (std::string l; std::getline(is, l);) out.push_back(l);
  return out;
}

fs::path scratch_dir(const std::string& name) {
  const fs::path d = fs::temp_directory_path() / ("lfspec_test_" + name);
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

std::string slurp(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(is), std::istreambuf_iterator<char>()};
}

}  // namespace

TEST_CASE("spectrum table in CSV") {
  const Run r = cli({"spectrum", "--p", "2", "--e", "1", "--f", "1", "--m-max", "3", "--n-max", "5", "--format", "csv"});
  REQUIRE(r.code == kExitOk);
  CHECK(r.err.empty());
  const auto ls = lines(r.out);
  REQUIRE(ls.size() == 25);
  CHECK(ls[0] == "m,n,lambda,value,multiplicity");
  CHECK(ls[1] == "0,0,0.69310229165060433,0.69310229165060433,1");
}

TEST_CASE("spectrum JSON schema") {
  const Run r = cli({"spectrum", "--p", "2", "--e", "2", "--f", "1", "--m-max", "2", "--n-max", "20"});
  REQUIRE(r.code == kExitOk);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["params"] == nlohmann::json{{"p", 2}, {"e", 2}, {"f", 1}});
  CHECK(j["command"] == "spectrum");
  CHECK(j["results"].size() == 63);
  CHECK(j["meta"]["version"] == "0.1.0");
  CHECK(j["meta"].contains("seed"));
  CHECK(j["meta"].contains("tolerances"));
  for (const char* k : {"m", "n", "lambda", "value", "multiplicity"}) CHECK(j["results"][0].contains(k));
}

TEST_CASE("spectrum JSON round-trips through validate") {
  const fs::path d = scratch_dir("roundtrip");
  const std::string file = (d / "s.json").string();
  REQUIRE(cli({"spectrum", "--p", "3", "--m-max", "2", "--n-max", "4", "--out", file}).code == kExitOk);
  const Run ok = cli({"validate", "--input", file, "--checks", "roundtrip"});
  CHECK(ok.code == kExitOk);

  auto j = nlohmann::json::parse(slurp(file));
  j["results"][3]["value"] = j["results"][3]["value"].get<double>() * (1.0 + 1e-15);
  std::ofstream(d / "bad.json") << j.dump();
  CHECK(cli({"validate", "--input", (d / "bad.json").string(), "--checks", "roundtrip"}).code == kExitValidation);

  std::ofstream(d / "junk.json") << "{not json";
  const Run junk = cli({"validate", "--input", (d / "junk.json").string(), "--checks", "roundtrip"});
  CHECK(junk.code == kExitConfig);
  CHECK(junk.out.empty());
}

TEST_CASE("validate reports checks and exit codes") {
  SUBCASE("passing configuration") {
    const Run r = cli({"validate", "--N", "13", "--format", "csv"});
    CHECK(r.code == kExitOk);
    const auto ls = lines(r.out);
    CHECK(ls[0] == "check,measured,tolerance,pass");
    bool drift = false;
    for (const auto& l : ls) drift = drift || l.rfind("spectrum_drift_N_vs_N+2,", 0) == 0;
    CHECK(drift);
  }
  SUBCASE("corrupted eigenvalue") {
    const Run r = cli({"validate", "--N", "13", "--checks", "spectrum", "--corrupt", "1e-4"});
    CHECK(r.code == kExitValidation);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["results"][0]["pass"] == false);
    CHECK(j["meta"]["all_pass"] == false);
  }
  SUBCASE("field-case check") {
    CHECK(cli({"validate", "--checks", "fcase"}).code == kExitOk);
  }
}

TEST_CASE("zeta grid") {
  SUBCASE("eight real points") {
    const Run r = cli({"zeta", "--s", "1,2,3,4,5,6,7,8", "--format", "csv"});
    REQUIRE(r.code == kExitOk);
    const auto ls = lines(r.out);
    REQUIRE(ls.size() == 9);
    CHECK(ls[0] == "re_s,im_s,re_zeta,im_zeta,tail_bound,n_roots_used,pole");
  }
  SUBCASE("pole row at s = ef/2") {
    const Run r = cli({"zeta", "--p", "2", "--e", "2", "--f", "1", "--s-re-range", "0.5:2:0.5"});
    REQUIRE(r.code == kExitOk);
    const auto j = nlohmann::json::parse(r.out);
    REQUIRE(j["results"].size() == 4);
    for (const auto& row : j["results"]) CHECK(row["pole"] == (row["re_s"] == 1.0));
    CHECK(j["results"][1]["re_zeta"].is_null());
  }
  SUBCASE("tail bound decreases with the number of roots") {
    double prev = 1e300;
    for (const char* n : {"2", "4", "8", "16"}) {
      const auto j = nlohmann::json::parse(cli({"zeta", "--s", "2", "--n-roots", n}).out);
      const double b = j["results"][0]["tail_bound"].get<double>();
      CHECK(b < prev);
      prev = b;
    }
  }
  SUBCASE("domain errors") {
    CHECK(cli({"zeta", "--s", "-1"}).code == kExitConfig);
    CHECK(cli({"zeta", "--s-re-range", "3:1:1"}).code == kExitConfig);
  }
}

TEST_CASE("configuration errors") {
  for (const auto& args : std::vector<std::vector<std::string>>{{"spectrum", "--p", "6"},
                                                                 {"spectrum", "--n-max", "-1"},
                                                                 {"spectrum", "--format", "xml"},
                                                                 {"bogus"},
                                                                 {}}) {
    const Run r = cli(args);
    CHECK(r.code == kExitConfig);
    CHECK(r.out.empty());
    CHECK(lines(r.err).size() == 1);
  }
}

TEST_CASE("output destinations and determinism") {
  const fs::path d = scratch_dir("env");
  ::setenv("LFSPEC_OUTPUT_DIR", d.string().c_str(), 1);
  const Run r1 = cli({"zeta", "--format", "csv"});
  ::unsetenv("LFSPEC_OUTPUT_DIR");
  CHECK(r1.code == kExitOk);
  CHECK(r1.out.empty());
  REQUIRE(fs::exists(d / "zeta.csv"));
  const std::string first = slurp(d / "zeta.csv");
  CHECK(cli({"zeta", "--format", "csv"}).out == first);
  CHECK(cli({"validate", "--N", "8", "--seed", "9"}).out == cli({"validate", "--N", "8", "--seed", "9"}).out);
}
