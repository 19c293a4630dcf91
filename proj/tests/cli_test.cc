// Copyright 2026 The clusterfold Authors
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

#include "clusterfold/cli.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "clusterfold/framed_seed.h"
#include "gtest/gtest.h"
#include "json.hpp"

namespace clusterfold::cli {
namespace {

std::string DataPath(const std::string& name) {
  const char* dir = std::getenv("CLUSTERFOLD_DATA_DIR");
  return std::string(dir ? dir : "data") + "/" + name;
}

struct Result {
  int status;
  std::string out;
  std::string err;
};

Result RunArgs(std::vector<std::string> args) {
  args.insert(args.begin(), "clusterfold");
  std::ostringstream out, err;
  const int status = Main(args, out, err);
  return {status, out.str(), err.str()};
}

class TempFile {
 public:
  TempFile(const std::string& name, const std::string& contents)
      : path_(std::filesystem::temp_directory_path() /
              ("clusterfold_cli_test_" + name)) {
    std::ofstream(path_) << contents;
  }
  ~TempFile() { std::filesystem::remove(path_); }
  std::string path() const { return path_.string(); }

 private:
  std::filesystem::path path_;
};

TEST(CliTest, ClassifyExample) {
  const Result r = RunArgs({"classify", DataPath("example_4x4.txt")});
  EXPECT_EQ(r.status, kExitOk) << r.err;
  EXPECT_NE(r.out.find("sign-skew-symmetric: true"), std::string::npos);
  EXPECT_NE(r.out.find("skew-symmetrizable: false"), std::string::npos);
  EXPECT_NE(r.out.find("acyclic: true"), std::string::npos);
}

TEST(CliTest, ClassifyJson) {
  const Result r = RunArgs({"classify", "--json", DataPath("a2.txt")});
  ASSERT_EQ(r.status, kExitOk) << r.err;
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_EQ(doc["skew_symmetric"], true);
  EXPECT_EQ(doc["symmetrizer"], nlohmann::json::array({1, 1}));
}

TEST(CliTest, MutateJsonRoundTrip) {
  const Result first =
      RunArgs({"mutate", DataPath("a2.txt"), "--seq", "1", "--json"});
  ASSERT_EQ(first.status, kExitOk) << first.err;
  const FramedSeed seed = ParseSeedDocument(first.out);
  EXPECT_EQ(seed.b, (ExchangeMatrix{{0, -1}, {1, 0}}));
  EXPECT_EQ(seed.c, (SquareMatrix{{-1, 1}, {0, 1}}));
  // Feeding the document back and undoing the step restores the start.
  const TempFile doc("seed.json", first.out);
  const Result back = RunArgs({"mutate", doc.path(), "-s", "1", "--json"});
  ASSERT_EQ(back.status, kExitOk) << back.err;
  EXPECT_EQ(ParseSeedDocument(back.out), Extend({{0, 1}, {-1, 0}}));
}

TEST(CliTest, Deterministic) {
  const std::vector<std::string> args = {"unfold", DataPath("example_4x4.txt"),
                                         "-m", "3", "--framed", "--json"};
  const Result a = RunArgs(args), b = RunArgs(args);
  EXPECT_EQ(a.status, kExitOk) << a.err;
  EXPECT_EQ(a.out, b.out);
}

TEST(CliTest, MgsExample) {
  const Result r = RunArgs({"mgs", DataPath("example_4x4.txt"), "--brute-force"});
  EXPECT_EQ(r.status, kExitOk) << r.err;
  EXPECT_NE(r.out.find("sequence: 1,2,3,4"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("source sequence found: true"), std::string::npos)
      << r.out;
}

TEST(CliTest, MgsOnCyclicInputIsAPreconditionError) {
  const Result r = RunArgs({"mgs", DataPath("cyclic_3.txt")});
  EXPECT_EQ(r.status, kExitUsage);
  EXPECT_NE(r.err.find("no source"), std::string::npos) << r.err;
}

TEST(CliTest, CoherenceAndTotalMutability) {
  Result r = RunArgs({"coherence", DataPath("example_4x4.txt"), "-d", "3"});
  EXPECT_EQ(r.status, kExitOk) << r.err;
  r = RunArgs({"total-mutability", DataPath("example_4x4.txt"), "-d", "3"});
  EXPECT_EQ(r.status, kExitOk) << r.err;
  r = RunArgs({"total-mutability", DataPath("example_4x4.txt"), "-d", "0"});
  EXPECT_EQ(r.status, kExitUsage);
}

TEST(CliTest, TotalMutabilityViolation) {
  // Mutating this cyclic matrix at 1 gives entries 2 and 0 in one pair.
  const TempFile input("violating.txt", "3\n0 1 -1\n-1 0 2\n1 -1 0\n");
  const Result r = RunArgs({"total-mutability", input.path(), "-d", "2"});
  EXPECT_EQ(r.status, kExitViolated) << r.out << r.err;
}

TEST(CliTest, VerifyUnfolding) {
  Result r = RunArgs({"verify-unfolding", DataPath("example_4x4.txt"), "-s",
                      "1,2", "-m", "6"});
  EXPECT_EQ(r.status, kExitOk) << r.err;
  EXPECT_NE(r.out.find("commutes: true"), std::string::npos) << r.out;
  r = RunArgs({"verify-unfolding", DataPath("example_4x4.txt"), "-s", "1,2",
               "-m", "5"});
  EXPECT_EQ(r.status, kExitUsage);
}

TEST(CliTest, UnfoldWritesDot) {
  const auto dot = std::filesystem::temp_directory_path() / "clusterfold.dot";
  const Result r = RunArgs({"unfold", DataPath("example_4x4.txt"), "-m", "1",
                            "--framed", "--dot", dot.string()});
  EXPECT_EQ(r.status, kExitOk) << r.err;
  std::ifstream in(dot);
  std::stringstream text;
  text << in.rdbuf();
  EXPECT_EQ(text.str().rfind("digraph unfolding {", 0), 0u);
  std::filesystem::remove(dot);
}

TEST(CliTest, UnfoldReportsMissingInterior) {
  const Result r =
      RunArgs({"unfold", DataPath("example_4x4.txt"), "-m", "2", "--framed"});
  EXPECT_EQ(r.status, kExitOk) << r.err;
  EXPECT_NE(r.out.find("folding: unavailable"), std::string::npos) << r.out;
}

TEST(CliTest, UsageErrors) {
  EXPECT_EQ(RunArgs({}).status, kExitUsage);
  EXPECT_EQ(RunArgs({"bogus"}).status, kExitUsage);
  EXPECT_EQ(RunArgs({"classify"}).status, kExitUsage);
  EXPECT_EQ(RunArgs({"mutate", DataPath("a2.txt")}).status, kExitUsage);
  EXPECT_EQ(RunArgs({"mutate", DataPath("a2.txt"), "-s", "3"}).status,
            kExitUsage);
  EXPECT_EQ(RunArgs({"unfold", DataPath("a2.txt")}).status, kExitUsage);
  EXPECT_EQ(RunArgs({"classify", "/nonexistent/matrix.txt"}).status,
            kExitUsage);
}

TEST(CliTest, ParseErrorsCarryPosition) {
  const TempFile input("bad.txt", "2\n0 1\n-1 x\n");
  const Result r = RunArgs({"classify", input.path()});
  EXPECT_EQ(r.status, kExitUsage);
  EXPECT_NE(r.err.find("line 3, column 4"), std::string::npos) << r.err;
}

TEST(CliTest, Help) {
  const Result r = RunArgs({"--help"});
  EXPECT_EQ(r.status, kExitOk);
  EXPECT_NE(r.out.find("verify-unfolding"), std::string::npos);
}

}  // namespace
}  // namespace clusterfold::cli
