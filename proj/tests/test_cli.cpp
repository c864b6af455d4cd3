#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <string>

#include <json.hpp>

#ifndef Z2LAB_CLI_PATH
#define Z2LAB_CLI_PATH "z2lab"
#endif
#ifndef Z2LAB_FIXTURE_DIR
#define Z2LAB_FIXTURE_DIR "fixtures"
#endif

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
};

RunResult run_cli(const std::string& args) {
  const std::string cmd = std::string(Z2LAB_CLI_PATH) + " " + args + " 2>/dev/null";
  RunResult r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf;
  while (size_t got = fread(buf.data(), 1, buf.size(), pipe)) r.out.append(buf.data(), got);
  const int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string fixture(const char* name) {
  return std::string(Z2LAB_FIXTURE_DIR) + "/" + name + ".json";
}

}  // namespace

TEST_CASE("cli: z2 small case in json mode") {
  const auto r = run_cli("z2 2 2 --output json --threads 2");
  CHECK(r.exit_code == 0);
  CHECK(r.out.back() == '\n');
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["value"] == 3);
  CHECK(j["exhausted"] == true);
  CHECK(j["m"] == 2);
  CHECK(j["witnesses"].size() >= 1);
}

TEST_CASE("cli: verify fixtures with expected totals") {
  CHECK(run_cli("verify " + fixture("thm2_2") + " --expect-t 8").exit_code == 0);
  CHECK(run_cli("verify " + fixture("thm6_1") + " --expect-t 14").exit_code == 0);
  CHECK(run_cli("verify " + fixture("thm5_1") + " --expect-t 11").exit_code == 0);
  CHECK(run_cli("verify " + fixture("extremal_5x4") + " --expect-t 12").exit_code == 0);
  CHECK(run_cli("verify " + fixture("extremal_5x5") + " --expect-t 15").exit_code == 0);
  // refuted expectation
  CHECK(run_cli("verify " + fixture("thm2_2") + " --expect-t 9").exit_code == 2);
}

TEST_CASE("cli: verify reports witnesses for inadmissible graphs") {
  // a full 2x2 grid written to a temp file
  const std::string tmp = "/tmp/z2lab_cli_bad.json";
  FILE* f = fopen(tmp.c_str(), "w");
  REQUIRE(f);
  fputs(R"({"m":2,"n":2,"e1":[[1,1],[1,2],[2,1],[2,2]],"e2":[]})", f);
  fclose(f);
  const auto r = run_cli("verify " + tmp + " --output json");
  CHECK(r.exit_code == 2);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["admissible"] == false);
  CHECK(j["witness"]["kind"] == "ClassicalC4");
  remove(tmp.c_str());
}

TEST_CASE("cli: table reproduces the small values") {
  const auto r = run_cli("table 3 3 --output json --threads 2");
  CHECK(r.exit_code == 0);
  const auto j = nlohmann::json::parse(r.out);
  REQUIRE(j["entries"].size() == 4);
  for (const auto& e : j["entries"]) {
    if (e["m"] == 2 && e["n"] == 2) CHECK(e["z2"] == 3);
    if (e["m"] == 2 && e["n"] == 3) CHECK(e["z2"] == 4);
    if (e["m"] == 3 && e["n"] == 2) CHECK(e["z2"] == 4);
    if (e["m"] == 3 && e["n"] == 3) {
      CHECK(e["z"] == 6);
      CHECK(e["z2"] == 6);
    }
  }
}

TEST_CASE("cli: form and gram emitters") {
  const auto text = run_cli("form " + fixture("thm2_2"));
  CHECK(text.exit_code == 0);
  CHECK(text.out.find("x1^2 y1^2") != std::string::npos);
  CHECK(text.out.find("2 x1 x4 y3 y2") != std::string::npos);

  const auto j = run_cli("form " + fixture("thm2_2") + " --emit json");
  CHECK(j.exit_code == 0);
  CHECK(nlohmann::json::parse(j.out)["terms"].size() == 10);

  const auto gram = run_cli("gram " + fixture("thm3_1") + " --output json");
  CHECK(gram.exit_code == 0);
  const auto gj = nlohmann::json::parse(gram.out);
  CHECK(gj["dim"] == 16);
  CHECK(gj["rank"] == 10);
  CHECK(gj["entries"].size() == 256);
}

TEST_CASE("cli: census subcommand") {
  const auto r = run_cli("census 4 3 7 --classical --output json");
  CHECK(r.exit_code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["count"] == 1);
}

TEST_CASE("cli: probe subcommand") {
  const auto r = run_cli("probe " + fixture("thm2_2") + " --n 6 --output json --threads 2");
  CHECK(r.exit_code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["expected_rank"] == 8);
  CHECK(j["red_flag"] == false);
  CHECK(j["n_probes"] == 6);
}

TEST_CASE("cli: exit codes for usage, parse, and time-limit failures") {
  CHECK(run_cli("no-such-command").exit_code == 64);
  CHECK(run_cli("z2 4").exit_code == 64);

  const std::string tmp = "/tmp/z2lab_cli_malformed.json";
  FILE* f = fopen(tmp.c_str(), "w");
  REQUIRE(f);
  fputs(R"({"m":2,"n":2,"e1":[],"e2":[[1,2]]})", f);
  fclose(f);
  CHECK(run_cli("verify " + tmp).exit_code == 65);
  remove(tmp.c_str());
  CHECK(run_cli("verify /no/such/file.json").exit_code == 65);

  const auto r = run_cli("z2 5 5 --time-limit 0.02 --output json");
  CHECK(r.exit_code == 3);
  CHECK(nlohmann::json::parse(r.out)["exhausted"] == false);
}
