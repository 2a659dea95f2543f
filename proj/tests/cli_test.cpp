/*
 * Copyright 2026 The shapwa Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Runs the built shapwa binary against the files in samples/.

#include <gtest/gtest.h>
#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <map>
#include <string>

#include "shapwa/json_io.hpp"

namespace shapwa {
namespace {

using json_io::json;

struct Result {
  int code = -1;
  std::string out;
  std::string err;
};

const std::string kSamples = SHAPWA_SAMPLES_DIR;

std::string sample(const std::string& name) { return kSamples + "/" + name; }

Result run(const std::string& args) {
  const std::string err_path = ::testing::TempDir() + "shapwa_cli_stderr.txt";
  const std::string cmd = std::string(SHAPWA_CLI_PATH) + " " + args + " 2>" + err_path;
  Result r;
  FILE* p = popen(cmd.c_str(), "r");
  if (p == nullptr) return r;
  std::array<char, 4096> buf;
  std::size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), got);
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream e(err_path);
  r.err.assign(std::istreambuf_iterator<char>(e), std::istreambuf_iterator<char>());
  return r;
}

TEST(CliShapTest, BaselineExample) {
  auto r = run("shap --scope local --variant baseline --model " + sample("and.wa.json") +
               " --input 11 --reference 00 --feature 1");
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = json::parse(r.out);
  EXPECT_EQ(j["value"], "1/2");
  EXPECT_EQ(j["decimal"], 0.5);
  EXPECT_EQ(j["feature"], 1);
  EXPECT_EQ(j["variant"], "baseline");
  EXPECT_EQ(j["scope"], "local");
}

TEST(CliShapTest, FeatureOutOfRangeExits3WithoutOutput) {
  auto r = run("shap --scope local --variant baseline --model " + sample("and.wa.json") +
               " --input 11 --reference 00 --feature 3");
  EXPECT_EQ(r.code, 3);
  EXPECT_TRUE(r.out.empty());
  EXPECT_NE(r.err.find("out of range"), std::string::npos);
}

TEST(CliShapTest, ConditionalOverGuardExits4) {
  auto r = run("shap --variant conditional --model " + sample("and.wa.json") + " --dist " +
               sample("uniform.hmm.json") + " --input " + std::string(30, '1') + " --feature 1");
  EXPECT_EQ(r.code, 4);
  EXPECT_TRUE(r.out.empty());
  EXPECT_NE(r.err.find("guard"), std::string::npos);
}

TEST(CliShapTest, GuardOverriddenByEnvironment) {
  auto r = run("shap --variant conditional --model " + sample("and.wa.json") + " --dist " +
               sample("uniform.hmm.json") + " --input 111 --feature 1");
  EXPECT_EQ(r.code, 0);
  const std::string env = "SHAPWA_GUARD_BITS=2 ";
  std::string cmd = env + SHAPWA_CLI_PATH + " shap --variant conditional --model " + sample("and.wa.json") +
                    " --dist " + sample("uniform.hmm.json") + " --input 111 --feature 1 >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  EXPECT_EQ(WEXITSTATUS(status), 4);
}

TEST(CliShapTest, EngineAndOracleAgreeOnTabularModel) {
  for (int f = 1; f <= 3; ++f) {
    auto eng = run("shap --variant interventional --model " + sample("tree.dt.json") + " --dist " + sample("ind.json") +
                   " --input 111 --order 3,1,2 --format tsv --feature " + std::to_string(f));
    auto orc = run("shap --variant conditional --model " + sample("tree.dt.json") + " --dist " + sample("ind.json") +
                   " --input 111 --format tsv --feature " + std::to_string(f));
    ASSERT_EQ(eng.code, 0) << eng.err;
    ASSERT_EQ(orc.code, 0) << orc.err;
    auto value = [](const std::string& tsv) {
      auto row = tsv.substr(tsv.find('\n') + 1);
      for (int k = 0; k < 3; ++k) row = row.substr(row.find('\t') + 1);
      return row.substr(0, row.find('\t'));
    };
    EXPECT_EQ(value(eng.out), value(orc.out));
    EXPECT_NE(eng.out.find("engine"), std::string::npos);
  }
}

TEST(CliShapTest, SigmoidRequiresFloatMode) {
  auto g = run("gadget --out " + ::testing::TempDir() + "sig.json wmg-sigmoid --weights 1,1 --quota 2");
  ASSERT_EQ(g.code, 0) << g.err;
  auto bundle = json_io::read_file(::testing::TempDir() + "sig.json");
  const std::string model = ::testing::TempDir() + "sig.model.json";
  std::ofstream(model) << bundle["model"].dump();
  auto exact = run("shap --model " + model + " --input 11 --reference 00 --feature 1");
  EXPECT_EQ(exact.code, 3);
  EXPECT_TRUE(exact.out.empty());
  auto fl = run("shap --model " + model + " --input 11 --reference 00 --feature 1 --mode float");
  ASSERT_EQ(fl.code, 0) << fl.err;
  EXPECT_TRUE(json::parse(fl.out)["value"].is_null());
  EXPECT_GT(json::parse(fl.out)["decimal"].get<double>(), 1.0 / 3.0);
}

TEST(CliShapTest, ParseFailuresExit2) {
  EXPECT_EQ(run("shap --model /nonexistent.json --feature 1").code, 2);
  EXPECT_EQ(run("shap --model " + sample("formula.cnf") + " --feature 1").code, 2);
  EXPECT_EQ(run("shap --feature 1").code, 2);
  EXPECT_EQ(run("frobnicate").code, 2);
}

TEST(CliShapTest, Deterministic) {
  const std::string args = "shap --scope global --variant baseline --model " + sample("linear.json") + " --dist " +
                           sample("data.emp.json") + " --reference 010 --feature 2";
  auto a = run(args), b = run(args);
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  auto v1 = run("verify --seed 4 --instances 5"), v2 = run("verify --seed 4 --instances 5");
  EXPECT_EQ(v1.out, v2.out);
}

TEST(CliConvertTest, TreeRoundTrip) {
  auto r = run("convert --from " + sample("tree.dt.json") + " --order 2,3,1");
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = json::parse(r.out);
  EXPECT_EQ(j["provenance"]["source_type"], "dt");
  EXPECT_EQ(j["provenance"]["order"], json::parse("[2,3,1]"));
  EXPECT_EQ(j["provenance"]["source_sha256"].get<std::string>().size(), 64u);
  Wa f = json_io::read_wa(j);
  DecisionTree t = json_io::read_dt(json_io::read_file(sample("tree.dt.json")));
  const std::vector<std::size_t> order{1, 2, 0};
  for (const char* x : {"000", "001", "010", "011", "100", "101", "110", "111"}) {
    EXPECT_EQ(eval(f, sequentialize(x, order)), t.evaluate(x)) << x;
  }
}

TEST(CliConvertTest, EmpiricalDistributionReproducesCounts) {
  auto r = run("convert --from " + sample("data.emp.json"));
  ASSERT_EQ(r.code, 0) << r.err;
  Hmm h = json_io::read_hmm(json::parse(r.out));
  std::map<std::string, Rational> expect{{"011", Rational(2, 3)}, {"110", Rational(1, 3)}};
  for (const char* x : {"000", "001", "010", "011", "100", "101", "110", "111"}) {
    Rational want = expect.count(x) ? expect[x] : Rational(0);
    EXPECT_EQ(h.prefix_probability(x), want) << x;
  }
}

TEST(CliConvertTest, VoteEnsembleRefused) {
  const std::string out = ::testing::TempDir() + "vote.out.json";
  std::remove(out.c_str());
  auto r = run("convert --from " + sample("vote.ensemble.json") + " --out " + out);
  EXPECT_EQ(r.code, 3);
  EXPECT_NE(r.err.find("vote-mode"), std::string::npos);
  EXPECT_NE(r.err.find("NP-hard"), std::string::npos);
  EXPECT_FALSE(std::ifstream(out).good());
}

TEST(CliGadgetTest, WmgCertificate) {
  auto r = run("gadget wmg-sigmoid --weights 1,1 --quota 2 --player 1");
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = json::parse(r.out);
  EXPECT_EQ(j["certificate"]["verdict"], "not dummy; φ_b > ε");
  EXPECT_TRUE(j["certificate"]["holds"].get<bool>());
  EXPECT_EQ(j["threshold"]["epsilon"], "1/3");
  const std::string path = ::testing::TempDir() + "wmg.json";
  std::ofstream(path) << r.out;
  auto v = run("verify --gadget " + path);
  EXPECT_EQ(v.code, 0);
  EXPECT_NE(v.out.find("PASS\tgadget wmg-sigmoid\tnot dummy; φ_b > ε"), std::string::npos);
}

TEST(CliGadgetTest, SatAndCsp) {
  auto s = run("gadget sat --dimacs " + sample("formula.cnf"));
  ASSERT_EQ(s.code, 0) << s.err;
  EXPECT_EQ(json::parse(s.out)["certificate"]["verdict"], "satisfiable; φ_b > 0");
  auto u = run("gadget sat --clauses '1;-1'");
  ASSERT_EQ(u.code, 0) << u.err;
  EXPECT_EQ(json::parse(u.out)["certificate"]["phi_b"], "0");
  auto c = run("gadget csp --strings 00,11 --radius 0");
  ASSERT_EQ(c.code, 0) << c.err;
  EXPECT_EQ(json::parse(c.out)["certificate"]["verdict"], "no closest string; network is empty");
  EXPECT_EQ(run("gadget sat").code, 2);
  EXPECT_EQ(run("gadget csp --strings 00,1 --radius 0").code, 3);
}

TEST(CliVerifyTest, SeededSuitePasses) {
  auto r = run("verify --seed 0 --instances 50");
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 6);
  EXPECT_EQ(r.out.find("FAIL"), std::string::npos);
}

TEST(CliVerifyTest, TamperedGadgetFails) {
  auto r = run("gadget wmg-rnn --weights 1,1 --quota 2");
  ASSERT_EQ(r.code, 0);
  auto j = json::parse(r.out);
  j["source"]["weights"] = json::parse("[0,1]");  // player 1 is now a dummy
  const std::string path = ::testing::TempDir() + "tampered.json";
  std::ofstream(path) << j.dump();
  auto v = run("verify --gadget " + path);
  EXPECT_EQ(v.code, 1);
  EXPECT_NE(v.out.find("FAIL"), std::string::npos);
}

}  // namespace
}  // namespace shapwa
