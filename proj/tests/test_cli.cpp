#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "kmt/cli.hpp"

using namespace kmt;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream o, e;
  int c = run_command(args, o, e);
  return {c, o.str(), e.str()};
}

std::vector<ojson> lines(const std::string& s) {
  std::vector<ojson> out;
  std::istringstream in(s);
  std::string line;
  while (std::getline(in, line))
    if (!line.empty()) out.push_back(ojson::parse(line));
  return out;
}

std::string strip_elapsed(const std::string& s) {
  std::string out;
  for (auto j : lines(s)) {
    j.erase("elapsed_ms");
    out += j.dump() + "\n";
  }
  return out;
}

std::string temp_file(const std::string& name, const std::string& body) {
  std::string path = "kmt_test_" + name;
  std::ofstream(path) << body;
  return path;
}

}  // namespace

TEST_CASE("usage errors") {
  CHECK(run({}).code == kExitUsage);
  CHECK(run({"verify", "lemma-9.9"}).code == kExitUsage);
  CHECK(run({"commutator", "--type", "G2", "--a", "e1", "--b", "e2"}).code == kExitUsage);
  CHECK(run({"commutator", "--type", "A2", "--a", "e1+e3", "--b", "e2"}).code == kExitUsage);
  CHECK(run({"gcm", "validate", "no_such_file.json"}).code == kExitUsage);
  CHECK(run({"--config", "no_such_config.json", "verify", "wbar", "--l", "3"}).code == kExitUsage);
}

TEST_CASE("cap") {
  Run r = run({"verify", "thm-3.5", "--m", "9", "--n", "9"});
  CHECK(r.code == kExitCap);
  CHECK(r.out.empty());
}

TEST_CASE("gcm commands") {
  std::string a2 = temp_file("a2.json", "{\"size\":2,\"matrix\":[[2,-1],[-1,2]]}");
  Run c = run({"gcm", "classify", a2});
  CHECK(c.code == kExitOk);
  CHECK(lines(c.out).at(0)["params"]["result"] == "NotInFamilies");
  Run v = run({"gcm", "validate", a2});
  CHECK(v.code == kExitOk);
  CHECK(lines(v.out).at(0)["params"]["affine"] == false);

  std::string bad = temp_file("bad.json", "{\"size\":2,\"matrix\":[[2,-1],[0,2]]}");
  Run b = run({"gcm", "validate", bad});
  CHECK(b.code == kExitFail);
  ojson rep = lines(b.out).at(0);
  CHECK(rep["status"] == "fail");
  CHECK_FALSE(rep["witnesses"].empty());

  std::string tw = temp_file("tw.json", "{\"size\":4,\"matrix\":[[2,0,0,-1],[0,2,0,-1],[0,0,2,-1],[-2,-1,-1,2]]}");
  Run t = run({"gcm", "classify", tw});
  ojson r = lines(t.out).at(0);
  CHECK(r["params"]["result"] == "A2odd");
  CHECK(r["params"]["l"] == 3);
}

TEST_CASE("roots enumerate") {
  Run r = run({"roots", "enumerate", "--family", "A1t", "--l", "2", "--height", "3"});
  CHECK(r.code == kExitOk);
  ojson j = ojson::parse(r.out);
  CHECK(j["height_bound"] == 3);
  CHECK(j["roots"].size() == 12);
  CHECK(run({"roots", "enumerate", "--family", "Q9", "--l", "2"}).code == kExitUsage);
}

TEST_CASE("commutator") {
  Run r = run({"commutator", "--type", "C3", "--ring", "zmod:7", "--a", "e3", "--b", "e2", "--r", "1", "--rp", "1"});
  CHECK(r.code == kExitOk);
  ojson j = lines(r.out).at(0);
  CHECK(j["check_id"] == "commutator");
  CHECK(j["params"]["normal_form"].size() == 2);
  CHECK(j["params"]["matrix_oracle_agrees"] == true);
  Run s = run({"commutator", "--type", "A2", "--a", "[1,0]", "--b", "a1", "--r", "1", "--rp", "r"});
  CHECK(lines(s.out).at(0)["params"]["normal_form"] == ojson::parse("[[[1,1],\"r\"]]"));
}

TEST_CASE("config is echoed and deterministic") {
  std::string cfg = temp_file("cfg.json", "{\"height_bound\":20}");
  Run r = run({"--config", cfg, "verify", "lemma-3.1", "--l", "3"});
  CHECK(r.code == kExitOk);
  ojson j = lines(r.out).at(0);
  CHECK(j["params"]["config"]["height_bound"] == 20);
  CHECK(j["params"]["config"]["search_depth"] == 8);
  CHECK(j["location"] == "Lemma 3.1");

  Run d = run({"verify", "wbar"});
  CHECK(lines(d.out).at(0)["params"]["config"]["height_bound"] == 12);

  std::string bad = temp_file("badcfg.json", "{\"height_bound\":-1}");
  CHECK(run({"--config", bad, "verify", "wbar"}).code == kExitUsage);
}

TEST_CASE("parallel runs keep canonical order") {
  std::string par = temp_file("par.json", "{\"parallelism\":3}");
  Run a = run({"verify", "serre"});
  Run b = run({"verify", "serre"});
  Run c = run({"--config", par, "verify", "serre"});
  CHECK(a.code == kExitOk);
  CHECK(strip_elapsed(a.out) == strip_elapsed(b.out));
  auto la = lines(a.out), lc = lines(c.out);
  REQUIRE(la.size() == lc.size());
  for (std::size_t i = 0; i < la.size(); ++i) CHECK(la[i]["params"]["type"] == lc[i]["params"]["type"]);
}

TEST_CASE("environment variable selects the config") {
  std::string cfg = temp_file("env.json", "{\"search_depth\":5}");
  setenv(kConfigEnv, cfg.c_str(), 1);
  Run r = run({"verify", "wbar", "--l", "3"});
  unsetenv(kConfigEnv);
  CHECK(lines(r.out).at(0)["params"]["config"]["search_depth"] == 5);
}
