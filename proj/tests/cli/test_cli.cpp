// Copyright 2026 The Pentaweave Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;

namespace {

struct Result {
  int code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    dir_ = fs::path(PENTAWEAVE_TEST_WORK_DIR) / info->name();
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }

  // Runs the tool with `args` (already shell-quoted where needed).
  Result run(const std::string& args, const std::string& env = "") const {
    const fs::path out = dir_ / "stdout.txt";
    const fs::path err = dir_ / "stderr.txt";
    const std::string cmd = env + " '" + std::string(PENTAWEAVE_CLI_PATH) + "' " + args + " >'" + out.string() +
                            "' 2>'" + err.string() + "'";
    const int status = std::system(cmd.c_str());
    Result r;
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(out);
    r.err = slurp(err);
    return r;
  }

  std::string at(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

std::vector<std::vector<std::string>> tsv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::istringstream ls(line);
    std::string c;
    while (std::getline(ls, c, '\t')) cells.push_back(c);
    rows.push_back(cells);
  }
  return rows;
}

TEST_F(CliTest, SubdividePentagonTable) {
  const Result r = run("subdivide --gen pentagon --steps 3");
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = tsv(r.out);
  ASSERT_EQ(rows.size(), 5u);
  EXPECT_EQ(rows[0], (std::vector<std::string>{"step", "V", "E", "F", "euler", "count_check"}));
  EXPECT_EQ(rows[1], (std::vector<std::string>{"0", "5", "5", "1", "1", "-"}));
  EXPECT_EQ(rows[2], (std::vector<std::string>{"1", "16", "20", "5", "1", "ok"}));
  EXPECT_EQ(rows[3], (std::vector<std::string>{"2", "61", "85", "25", "1", "ok"}));
  EXPECT_EQ(rows[4], (std::vector<std::string>{"3", "256", "380", "125", "1", "ok"}));
}

TEST_F(CliTest, SubdivideFourStepsVertexCount) {
  const Result r = run("subdivide --gen pentagon --steps 4");
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = tsv(r.out);
  ASSERT_EQ(rows.size(), 6u);
  EXPECT_EQ(rows[5][1], "1141");
  EXPECT_EQ(rows[5][5], "ok");
}

TEST_F(CliTest, PrettyPadsColumns) {
  const Result r = run("subdivide --gen pentagon --steps 1 --pretty");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.find('\t'), std::string::npos);
  EXPECT_NE(r.out.find("step"), std::string::npos);
}

TEST_F(CliTest, LoopOnQuadsIsValidationError) {
  const Result r = run("subdivide --gen grid:3x3 --scheme loop --steps 1");
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("NotTriangleMesh"), std::string::npos) << r.err;
  EXPECT_TRUE(r.out.empty());
}

TEST_F(CliTest, FaceSplitWithoutInteriorEdgesFails) {
  const Result r = run("weave --gen pentagon --mode face-split --steps 0");
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("NoInteriorEdges"), std::string::npos) << r.err;
}

TEST_F(CliTest, ParseErrorsExitTwo) {
  EXPECT_EQ(run("").code, 2);
  EXPECT_EQ(run("bogus").code, 2);
  EXPECT_EQ(run("subdivide --steps x").code, 2);
  EXPECT_EQ(run("subdivide --gen pentagon --input x.pmesh").code, 2);
  EXPECT_EQ(run("subdivide --gen hexagon").code, 2);
  EXPECT_EQ(run("fractal --raster 8").code, 2);
}

TEST_F(CliTest, HelpAndVersionExitZero) {
  EXPECT_EQ(run("--help").code, 0);
  const Result v = run("--version");
  EXPECT_EQ(v.code, 0);
  EXPECT_FALSE(v.out.empty());
}

TEST_F(CliTest, MissingInputFileIsValidationError) {
  const Result r = run("subdivide --input '" + at("nope.pmesh") + "'");
  EXPECT_EQ(r.code, 2);
  EXPECT_FALSE(r.err.empty());
}

TEST_F(CliTest, OutputRoundTripsThroughInput) {
  ASSERT_EQ(run("subdivide --gen pentagon --steps 2 -o '" + at("p2.pmesh") + "'").code, 0);
  const Result r = run("subdivide --input '" + at("p2.pmesh") + "' --steps 1");
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = tsv(r.out);
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[1][1], "61");
  EXPECT_EQ(rows[2][1], "256");
}

TEST_F(CliTest, AllStepsWritesNumberedFiles) {
  ASSERT_EQ(run("subdivide --gen pentagon --steps 2 --all-steps -o '" + at("m.pmesh") + "'").code, 0);
  for (int t = 0; t <= 2; ++t) EXPECT_TRUE(fs::exists(dir_ / ("m_t" + std::to_string(t) + ".pmesh"))) << t;
}

TEST_F(CliTest, OutDirFromEnvironmentAndFlag) {
  const fs::path env_dir = dir_ / "env";
  ASSERT_EQ(run("subdivide --gen pentagon --steps 1 -o a.pmesh", "PENTAWEAVE_OUT_DIR='" + env_dir.string() + "'").code,
            0);
  EXPECT_TRUE(fs::exists(env_dir / "a.pmesh"));

  const fs::path flag_dir = dir_ / "flag";
  ASSERT_EQ(run("subdivide --gen pentagon --steps 1 -o b.pmesh --out-dir '" + flag_dir.string() + "'",
                "PENTAWEAVE_OUT_DIR='" + env_dir.string() + "'")
                .code,
            0);
  EXPECT_TRUE(fs::exists(flag_dir / "b.pmesh"));
  EXPECT_FALSE(fs::exists(env_dir / "b.pmesh"));
}

TEST_F(CliTest, OutputsAreByteIdenticalAcrossRuns) {
  const std::vector<std::string> names = {"m.pmesh", "m.svg", "w.json", "w.svg", "t.svg", "c.svg", "r.ppm", "l.svg"};
  for (const char* sub : {"a", "b"}) {
    const std::string d = "--out-dir '" + (dir_ / sub).string() + "'";
    ASSERT_EQ(run("subdivide --gen pentagon --steps 2 -o m.pmesh --svg m.svg --fill face --highlight " + d).code,
              0);
    ASSERT_EQ(run("weave --gen pentagon --mode snub-glue --steps 2 --json w.json --svg w.svg --tiles t.svg "
                  "--cut-template c.svg " +
                  d)
                  .code,
              0);
    ASSERT_EQ(run("fractal --steps 2 --raster 64 --raster-out r.ppm --lsystem 2 --lsystem-out l.svg " + d).code, 0);
  }
  for (const auto& n : names) {
    const std::string a = slurp(dir_ / "a" / n);
    EXPECT_FALSE(a.empty()) << n;
    EXPECT_EQ(a, slurp(dir_ / "b" / n)) << n;
  }
}

TEST_F(CliTest, WeaveReportsStrandsAndWritesJson) {
  const Result r = run("weave --gen pentagon --mode snub-glue --steps 2 --json '" + at("w.json") + "'");
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = tsv(r.out);
  ASSERT_GE(rows.size(), 5u);
  EXPECT_EQ(rows[0], (std::vector<std::string>{"mode", "snub-glue"}));
  EXPECT_EQ(rows[2], (std::vector<std::string>{"strands", "15"}));
  EXPECT_EQ(rows[3], (std::vector<std::string>{"crossings", "20"}));
  EXPECT_EQ(rows[4], (std::vector<std::string>{"visits", "40"}));
  const std::string json = slurp(dir_ / "w.json");
  EXPECT_NE(json.find("\"strands\""), std::string::npos);
}

TEST_F(CliTest, WeaveModes) {
  EXPECT_EQ(run("weave --gen grid:4x4 --mode quad-2color --steps 0").code, 0);
  EXPECT_EQ(run("weave --gen trigrid:3x3 --mode tri-glue --steps 1").code, 0);
  EXPECT_EQ(run("weave --gen trigrid:3x3 --mode sqrt3-quadize --steps 1").code, 0);
  EXPECT_EQ(run("weave --gen pentagon --mode face-split --steps 1").code, 0);
  EXPECT_EQ(run("weave --gen pentagon --mode plaid --steps 1").code, 2);
  EXPECT_EQ(run("weave --gen pentagon --mode snub-glue --steps 1 --palette nope --svg '" + at("x.svg") + "'").code,
            2);
}

TEST_F(CliTest, FractalTable) {
  const Result r = run("fractal --steps 3");
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = tsv(r.out);
  ASSERT_GE(rows.size(), 5u);
  EXPECT_EQ(rows[0], (std::vector<std::string>{"step", "boundary_length", "ratio"}));
  for (int t = 2; t <= 3; ++t) EXPECT_NEAR(std::stod(rows[t + 1][2]), 1.133893419, 1e-8);
  bool has_dimension = false;
  for (const auto& row : rows)
    if (!row.empty() && row[0] == "dimension") {
      has_dimension = true;
      EXPECT_NEAR(std::stod(row[1]), 1.12915, 1e-5);
    }
  EXPECT_TRUE(has_dimension);
}

TEST_F(CliTest, RasterIsBinaryPpm) {
  const Result r = run("fractal --steps 1 --raster 64 --raster-out '" + at("r.ppm") + "'");
  ASSERT_EQ(r.code, 0) << r.err;
  const std::string ppm = slurp(dir_ / "r.ppm");
  ASSERT_GT(ppm.size(), 15u);
  EXPECT_EQ(ppm.substr(0, 2), "P6");
  EXPECT_NE(r.out.find("raster_resolution\t64x64"), std::string::npos);
}

TEST_F(CliTest, ColoringFillNeedsQuads) {
  EXPECT_EQ(run("subdivide --gen grid:3x3 --scheme catmull-clark --steps 1 --svg '" + at("g.svg") + "' --fill coloring")
                .code,
            0);
  EXPECT_NE(slurp(dir_ / "g.svg").find("<svg"), std::string::npos);
  const Result r = run("subdivide --gen pentagon --steps 1 --svg '" + at("p.svg") + "' --fill coloring");
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("NotQuadMesh"), std::string::npos) << r.err;
}

TEST_F(CliTest, UnwritableOutputIsReported) {
  std::ofstream(dir_ / "file") << "x";
  const Result r = run("subdivide --gen pentagon --steps 1 -o '" + (dir_ / "file" / "sub.pmesh").string() + "'");
  EXPECT_NE(r.code, 0);
  EXPECT_NE(r.err.find("Io"), std::string::npos) << r.err;
}

}  // namespace
