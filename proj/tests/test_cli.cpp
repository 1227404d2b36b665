#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "sshc/cli/commands.hpp"
#include "sshc/cli/csv.hpp"
#include "sshc/cli/manifest.hpp"

using namespace sshc::cli;
namespace fs = std::filesystem;

namespace {

class CliTest : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("sshc_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    int cli(std::vector<std::string> args, const fs::path& out_dir) {
        args.push_back("--out-dir");
        args.push_back(out_dir.string());
        out_.str("");
        err_.str("");
        return run_cli(args, out_, err_);
    }

    static std::string slurp(const fs::path& p) {
        std::ifstream in(p, std::ios::binary);
        std::stringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }

    static std::vector<std::vector<std::string>> read_csv(const fs::path& p) {
        std::vector<std::vector<std::string>> rows;
        std::stringstream ss(slurp(p));
        std::string line;
        while (std::getline(ss, line)) {
            std::vector<std::string> cols;
            std::stringstream ls(line);
            std::string c;
            while (std::getline(ls, c, ',')) cols.push_back(c);
            rows.push_back(cols);
        }
        return rows;
    }

    static std::string first_line(const fs::path& p) {
        std::ifstream in(p);
        std::string line;
        std::getline(in, line);
        return line;
    }

    void expect_manifest_complete(const fs::path& d, const std::string& sub) {
        const RunManifest m = parse_manifest_json(slurp(d / "manifest.json"));
        EXPECT_EQ(m.subcommand, sub);
        EXPECT_EQ(m.tool_version, kToolVersion);
        std::set<std::string> listed(m.output_paths.begin(), m.output_paths.end());
        std::set<std::string> on_disk;
        for (const auto& e : fs::directory_iterator(d)) on_disk.insert(e.path().filename().string());
        EXPECT_EQ(listed, on_disk);
        // echo resolves to the same parameter set the run used
        EXPECT_NO_THROW(resolve(m.config_echo));
    }

    fs::path dir_;
    std::ostringstream out_, err_;
};

}  // namespace

TEST_F(CliTest, AnalyzeEqualCaps) {
    ASSERT_EQ(cli({"analyze", "--ct-ratio", "1", "--cycles", "10"}, dir_), 0) << err_.str();
    const auto rows = read_csv(dir_ / "analyze_series.csv");
    ASSERT_EQ(rows.size(), 11u);
    EXPECT_EQ(first_line(dir_ / "analyze_series.csv"), kSeriesHeader);
    EXPECT_DOUBLE_EQ(std::stod(rows[1][1]), 0.25);
    EXPECT_NEAR(std::stod(rows[10][1]), 1.0 / 3.0, 1e-6);
    expect_manifest_complete(dir_, "analyze");
}

TEST_F(CliTest, AnalyzeHundredTimesCp) {
    ASSERT_EQ(cli({"analyze", "--ct-ratio", "100", "--cycles", "300", "--svg"}, dir_), 0) << err_.str();
    const auto rows = read_csv(dir_ / "analyze_series.csv");
    ASSERT_EQ(rows.size(), 301u);
    EXPECT_LT(std::abs(std::stod(rows[300][1]) - 0.4975) / 0.4975, 0.005);
    EXPECT_TRUE(fs::exists(dir_ / "efficiency.svg"));
    expect_manifest_complete(dir_, "analyze");
}

TEST_F(CliTest, SimulateDefaultsReachMinusPoint8) {
    ASSERT_EQ(cli({"simulate", "--svg"}, dir_), 0) << err_.str();
    EXPECT_EQ(first_line(dir_ / "waveform.csv"), kWaveformHeader);
    EXPECT_EQ(first_line(dir_ / "flips.csv"), kFlipHeader);
    const auto flips = read_csv(dir_ / "flips.csv");
    // last positive-to-negative flip
    const auto& row = flips[flips.size() - 2];
    EXPECT_NEAR(std::stod(row[2]), 2.4, 1e-9);
    EXPECT_NEAR(std::stod(row[3]), -0.8, 0.005);
    EXPECT_TRUE(fs::exists(dir_ / "waveform.svg"));
    expect_manifest_complete(dir_, "simulate");
}

TEST_F(CliTest, SimulateIsDeterministic) {
    const fs::path a = dir_ / "a", b = dir_ / "b";
    ASSERT_EQ(cli({"simulate", "--cycles", "3", "--set", "cap_ct=4.7x"}, a), 0);
    ASSERT_EQ(cli({"simulate", "--cycles", "3", "--set", "cap_ct=4.7x"}, b), 0);
    for (const char* f : {"waveform.csv", "flips.csv", "manifest.json"}) EXPECT_EQ(slurp(a / f), slurp(b / f)) << f;
}

TEST_F(CliTest, SweepHeaders) {
    ASSERT_EQ(cli({"sweep", "--axis", "ct", "--values", "1,10,100"}, dir_ / "ct"), 0) << err_.str();
    EXPECT_EQ(first_line(dir_ / "ct" / "sweep_ct_ratio.csv"), kSweepHeader);
    EXPECT_EQ(read_csv(dir_ / "ct" / "sweep_ct_ratio.csv").size(), 4u);
    expect_manifest_complete(dir_ / "ct", "sweep");
    ASSERT_EQ(cli({"sweep", "--axis", "vs", "--svg"}, dir_ / "vs"), 0) << err_.str();
    EXPECT_EQ(first_line(dir_ / "vs" / "sweep_vs_fullbridge.csv"), kSweepHeader);
    EXPECT_EQ(first_line(dir_ / "vs" / "sweep_vs_sshc.csv"), kSweepHeader);
    expect_manifest_complete(dir_ / "vs", "sweep");
}

TEST_F(CliTest, CompareShowsGainBelowCutoff) {
    ASSERT_EQ(cli({"compare", "--cycles", "12"}, dir_), 0) << err_.str();
    const auto rows = read_csv(dir_ / "compare.csv");
    ASSERT_EQ(rows.size(), 5u);
    EXPECT_EQ(rows[1][0], "full_bridge");
    EXPECT_EQ(std::stod(rows[1][4]), 0.0);  // default source is below the full-bridge cutoff
    EXPECT_GT(std::stod(rows[2][4]), 0.0);
    // analytic vs transient SSHC harvest within 1%
    EXPECT_NEAR(std::stod(rows[4][4]), std::stod(rows[2][4]), 0.01 * std::stod(rows[2][4]));
    expect_manifest_complete(dir_, "compare");
}

TEST_F(CliTest, ConfigFileAndErrors) {
    const fs::path cfg = dir_ / "run.cfg";
    std::ofstream(cfg) << "frequency = 50Hz\ncap_ct = 2x\n";
    ASSERT_EQ(cli({"analyze", "--config", cfg.string()}, dir_ / "ok"), 0) << err_.str();
    const RunManifest m = parse_manifest_json(slurp(dir_ / "ok" / "manifest.json"));
    EXPECT_EQ(m.config_echo.at("frequency"), "50");

    EXPECT_EQ(cli({"simulate", "--set", "dt=-1"}, dir_ / "bad"), kExitConfig);
    EXPECT_NE(err_.str().find("error: kind=config key=dt"), std::string::npos) << err_.str();
    EXPECT_EQ(cli({"simulate", "--set", "wobble=3"}, dir_ / "bad"), kExitConfig);
    EXPECT_NE(err_.str().find("key=wobble"), std::string::npos);
    EXPECT_EQ(cli({"analyze", "--set", "cap_ct=none"}, dir_ / "bad"), kExitConfig);
    EXPECT_EQ(cli({"frobnicate"}, dir_ / "bad"), kExitConfig);
}
