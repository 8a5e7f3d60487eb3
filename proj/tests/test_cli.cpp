#include <gtest/gtest.h>

#include <filesystem>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "io.hpp"

namespace sceot::cli {
namespace {

namespace fs = std::filesystem;

const fs::path kTests = fs::path(SCEOT_TEST_DATA_DIR);
const fs::path kData = kTests / "data";

struct Outcome {
  int code = 0;
  std::string out;
  std::string err;
};

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    root_ = fs::temp_directory_path() / (std::string("sceot_cli_") + info->name());
    fs::remove_all(root_);
    fs::create_directories(root_);
  }
  void TearDown() override { fs::remove_all(root_); }

  Outcome run_in(const std::string& dir, std::vector<std::string> args) {
    args.push_back("--out");
    args.push_back((root_ / dir).string());
    std::ostringstream out;
    std::ostringstream err;
    const int code = run(args, out, err);
    return {code, out.str(), err.str()};
  }

  std::string read(const std::string& dir, const std::string& file) const {
    return io::read_text(root_ / dir / file);
  }

  // Data files of a run, manifest excluded.
  std::map<std::string, std::string> data_files(const std::string& dir) const {
    std::map<std::string, std::string> files;
    for (const auto& e : fs::directory_iterator(root_ / dir)) {
      const std::string name = e.path().filename().string();
      if (name != "manifest.json") files[name] = io::read_text(e.path());
    }
    return files;
  }

  fs::path root_;
};

TEST_F(CliTest, WellOrderingVerdictsAndExpectations) {
  const std::string ring = (kData / "ring_inverse.json").string();
  const std::string sq = (kData / "squared_line.json").string();
  EXPECT_EQ(run_in("a", {"check-wellordering", "--cost", ring, "--grid", "24"}).code, kOk);
  EXPECT_EQ(run_in("b", {"check-wellordering", "--cost", sq, "--grid", "24"}).code, kOk);
  EXPECT_EQ(run_in("c", {"check-wellordering", "--cost", sq, "--grid", "24", "--expect", "well-ordering"}).code,
            kVerdictFailure);
  const io::Json j = io::parse_json(read("b", "wellordering.json"), "wellordering.json");
  EXPECT_EQ(j.at("verdict"), "violated");
  EXPECT_TRUE(j.contains("counterexample"));
  const io::Json m = io::parse_json(read("a", "manifest.json"), "manifest.json");
  EXPECT_EQ(m.at("command"), "check-wellordering");
  EXPECT_EQ(m.at("inputs").at(0).at("sha256"), io::sha256_hex(io::read_text(ring)));
  EXPECT_EQ(m.at("outputs").at(0).at("file"), "wellordering.json");
}

TEST_F(CliTest, MissingInputExitsWithError) {
  const Outcome o = run_in("a", {"check-wellordering", "--cost", (kData / "absent.json").string()});
  EXPECT_EQ(o.code, kError);
  EXPECT_NE(o.err.find("absent.json"), std::string::npos) << o.err;
}

TEST_F(CliTest, MalformedInputReportsLine) {
  const Outcome o = run_in("a", {"mmot-solve", "--cost", (kData / "malformed.json").string()});
  EXPECT_EQ(o.code, kError);
  EXPECT_NE(o.err.find("line 3"), std::string::npos) << o.err;
}

TEST_F(CliTest, UsageErrors) {
  EXPECT_EQ(run_in("a", {"seidl-plan", "--n", "1"}).code, kError);
  EXPECT_EQ(run_in("b", {"no-such-command"}).code, kError);
  EXPECT_EQ(run_in("c", {"mmot-solve"}).code, kError);
}

TEST_F(CliTest, SizeGuardIsReported) {
  const Outcome o = run_in("a", {"mmot-solve", "--cost", (kData / "ring_inverse.json").string(), "--n", "7",
                                 "--m", "8"});
  EXPECT_EQ(o.code, kError);
  EXPECT_NE(o.err.find("size error"), std::string::npos) << o.err;
}

TEST_F(CliTest, SwapDemoMatchesGolden) {
  ASSERT_EQ(run_in("a", {"swap-demo"}).code, kOk);
  EXPECT_EQ(read("a", "trace.json"), io::read_text(kTests / "golden" / "swap_trace.json"));
}

TEST_F(CliTest, SeidlPlanOutputs) {
  ASSERT_EQ(run_in("a", {"seidl-plan", "--density", (kData / "cosine.json").string(), "--n", "3", "--m", "6",
                         "--cost", (kData / "ring_inverse.json").string()})
                .code,
            kOk);
  const io::CsvTable plan = io::parse_csv(read("a", "plan.csv"), "plan.csv");
  EXPECT_EQ(plan.columns, (std::vector<std::string>{"x1", "x2", "x3", "weight"}));
  double mass = 0.0;
  for (const auto& r : plan.rows) mass += r[3];
  EXPECT_NEAR(mass, 1.0, 1e-12);
  const io::CsvTable map = io::parse_csv(read("a", "seidl_map.csv"), "seidl_map.csv");
  EXPECT_EQ(map.rows.size(), 512u);
}

TEST_F(CliTest, MmotExpectations) {
  const std::string ring = (kData / "ring_inverse.json").string();
  const std::string sq = (kData / "squared_line.json").string();
  EXPECT_EQ(run_in("a", {"mmot-solve", "--cost", ring, "--m", "4", "--expect", "seidl_optimal"}).code, kOk);
  EXPECT_EQ(run_in("b", {"mmot-solve", "--cost", sq, "--m", "4", "--expect", "seidl_optimal"}).code,
            kVerdictFailure);
  EXPECT_EQ(run_in("c", {"mmot-solve", "--cost", sq, "--m", "4", "--expect", "seidl_suboptimal"}).code, kOk);
}

TEST_F(CliTest, KantorovichCertificate) {
  const Outcome o = run_in("a", {"kantorovich", "--density", (kData / "cosine.json").string(), "--cost",
                                 (kData / "ring_inverse_truncated.json").string(), "--grid", "64"});
  EXPECT_EQ(o.code, kOk) << o.err;
  const io::Json j = io::parse_json(read("a", "kantorovich.json"), "kantorovich.json");
  EXPECT_EQ(j.at("passed"), true);
  EXPECT_EQ(io::parse_csv(read("a", "potential.csv"), "potential.csv").rows.size(), 64u);
}

TEST_F(CliTest, DataOutputsAreDeterministic) {
  const std::string ring = (kData / "ring_inverse.json").string();
  const std::string trunc = (kData / "ring_inverse_truncated.json").string();
  const std::string bumpy = (kData / "bumpy.json").string();
  const std::vector<std::vector<std::string>> commands = {
      {"check-wellordering", "--cost", ring, "--grid", "16", "--seed", "3"},
      {"seidl-plan", "--density", bumpy, "--m", "5"},
      {"swap-demo", "--set", "1,2,3,7,9"},
      {"mmot-solve", "--density", bumpy, "--m", "5", "--cost", ring},
      {"kantorovich", "--density", bumpy, "--cost", trunc, "--grid", "32", "--m", "4"},
  };
  for (std::size_t c = 0; c < commands.size(); ++c) {
    const std::string a = "a" + std::to_string(c);
    const std::string b = "b" + std::to_string(c);
    const int ca = run_in(a, commands[c]).code;
    const int cb = run_in(b, commands[c]).code;
    EXPECT_EQ(ca, cb);
    EXPECT_NE(ca, kError) << commands[c][0];
    const auto fa = data_files(a);
    EXPECT_FALSE(fa.empty());
    EXPECT_EQ(fa, data_files(b)) << commands[c][0];
  }
}

}  // namespace
}  // namespace sceot::cli
