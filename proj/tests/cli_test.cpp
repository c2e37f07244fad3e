// Copyright 2026 The cwsdec Authors
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


#include "cwsdec/commands.h"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cwsdec/cws_code.h"
#include "json.hpp"

namespace cwsdec {
namespace {

namespace fs = std::filesystem;

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun cli(std::vector<std::string> args) {
  args.insert(args.begin(), "cwsdec");
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("cwsdec_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

std::string slurp(const std::string& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

TEST_F(CliTest, BuildWritesLoadableSpec) {
  const CliRun r = cli({"build", "--d", "4", "--out", path("c.spec")});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("K=4"), std::string::npos);
  EXPECT_NE(r.out.find("m=5"), std::string::npos);
  const CwsCode code = load_code_spec(path("c.spec"));
  EXPECT_EQ(code.modulus(), 4);
  EXPECT_EQ(code.dimension(), 4u);
  EXPECT_EQ(code_to_spec_text(code), code_to_spec_text(build_family_5_d_3(4)));
}

TEST_F(CliTest, BuildRejectsSmallD) {
  EXPECT_EQ(cli({"build", "--d", "3"}).code, kExitUsage);
  EXPECT_EQ(cli({"build"}).code, kExitUsage);
}

TEST_F(CliTest, UsageAndHelp) {
  EXPECT_EQ(cli({"--help"}).code, kExitOk);
  EXPECT_EQ(cli({"no-such-command"}).code, kExitUsage);
  EXPECT_EQ(cli({"verify", "--d", "5", "--level", "bogus"}).code, kExitUsage);
  EXPECT_EQ(cli({"verify", "--level", "kl"}).code, kExitUsage);  // no code source
}

TEST_F(CliTest, VerifyLevels) {
  for (const char* level : {"classical", "kl", "distance"}) {
    const CliRun r = cli({"verify", "--d", "5", "--level", level});
    EXPECT_EQ(r.code, kExitOk) << level << ": " << r.err;
  }
  const CliRun t = cli({"verify", "--d", "4", "--level", "theorems", "--max-cases", "20",
                     "--format", "structured", "--out", path("t.json")});
  EXPECT_EQ(t.code, kExitOk) << t.err;
  EXPECT_TRUE(nlohmann::json::accept(slurp(path("t.json"))));
  EXPECT_EQ(cli({"verify", "--d", "5", "--level", "distance", "--delta", "4"}).code, kExitFailure);
}

TEST_F(CliTest, VerifyRejectsTamperedSpec) {
  auto j = nlohmann::json::parse(code_to_spec_text(build_family_5_d_3(5)));
  const nlohmann::json w = {{"phase", 0}, {"z", {1, 1, 1, 1, 1}}, {"x", {0, 0, 0, 0, 0}}};
  j["words"].push_back(w);
  j["words"].push_back(w);
  std::ofstream(path("bad.spec")) << j.dump();
  const CliRun r = cli({"verify", "--spec", path("bad.spec"), "--level", "kl"});
  EXPECT_EQ(r.code, kExitFailure);
  EXPECT_NE(r.err.find("duplicate word"), std::string::npos) << r.err;
}

TEST_F(CliTest, DecodeTrial) {
  const CliRun r = cli({"decode-trial", "--d", "5", "--error", "Z3^2", "--seed", "7", "--out",
                     path("tr.json")});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("located group 2 (qudit 3)"), std::string::npos) << r.out;
  const auto j = nlohmann::json::parse(slurp(path("tr.json")));
  EXPECT_EQ(j.at("located_group").get<int>(), 2);
  EXPECT_EQ(j.at("seed").get<int>(), 7);

  const CliRun id = cli({"decode-trial", "--d", "4", "--error", "I", "--format", "structured"});
  EXPECT_EQ(id.code, kExitOk) << id.err;
  const auto jid = nlohmann::json::parse(id.out);
  EXPECT_EQ(jid.at("identified_class").get<std::vector<int>>(), std::vector<int>(5, 0));

  EXPECT_EQ(cli({"decode-trial", "--d", "4", "--error", "X1 Z2"}).code, kExitUsage);
  EXPECT_EQ(cli({"decode-trial", "--d", "4", "--error", "Q7"}).code, kExitUsage);
  EXPECT_EQ(cli({"decode-trial", "--d", "5", "--max-dim", "100"}).code, kExitUsage);
}

TEST_F(CliTest, DecodeTrialIsDeterministic) {
  const std::vector<std::string> args = {"decode-trial", "--d", "4", "--error", "random",
                                         "--seed", "19", "--format", "structured"};
  const CliRun a = cli(args), b = cli(args);
  EXPECT_EQ(a.code, kExitOk);
  EXPECT_EQ(a.out, b.out);
}

TEST_F(CliTest, ExhaustiveSmallRuns) {
  const CliRun idonly = cli({"exhaustive", "--d", "4", "--max-weight", "0", "--superpositions", "2"});
  EXPECT_EQ(idonly.code, kExitOk) << idonly.err;

  const std::vector<std::string> args = {"exhaustive", "--d", "4", "--superpositions", "0",
                                         "--seed", "3", "--format", "structured"};
  const CliRun a = cli(args), b = cli(args);
  ASSERT_EQ(a.code, kExitOk) << a.err;
  EXPECT_EQ(a.out, b.out);
  const auto j = nlohmann::json::parse(a.out);
  EXPECT_EQ(j.dump().find("duration"), std::string::npos);
}

TEST_F(CliTest, AlgebraCheck) {
  EXPECT_EQ(cli({"algebra-check", "--d", "2", "--n", "1", "--trials", "100"}).code, kExitOk);
  const CliRun r = cli({"algebra-check", "--d", "3", "--n", "2", "--trials", "500", "--out",
                     path("alg.json")});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  EXPECT_TRUE(fs::exists(path("alg.json")));
  EXPECT_EQ(cli({"algebra-check", "--d", "5", "--n", "5"}).code, kExitUsage);
}

TEST_F(CliTest, SnapshotWritesState) {
  const CliRun r = cli({"snapshot", "--d", "4", "--error", "X2", "--seed", "2", "--out",
                     path("s.snap")});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  EXPECT_TRUE(fs::exists(path("s.snap")));
  EXPECT_EQ(cli({"snapshot", "--d", "4"}).code, kExitUsage);
}

}  // namespace
}  // namespace cwsdec
