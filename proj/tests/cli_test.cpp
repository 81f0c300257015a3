// Copyright 2026 The qwalk5 Authors
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
#include "cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

#include <gtest/gtest.h>

#include "qwalk5/errors.hpp"

namespace qwalk5::cli {
namespace {

const std::string kLeft = "1,0,0,0,0,0,0,0,0,0";

RunConfig parse(std::vector<std::string> args) { return parse_args(args); }

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

class TempDir : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = std::filesystem::temp_directory_path() /
           ("qwalk5_cli_test_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    std::filesystem::create_directories(dir_);
  }
  void TearDown() override { std::filesystem::remove_all(dir_); }
  std::filesystem::path dir_;
};

TEST(ParseArgs, EvolveExample) {
  const auto config = parse({"evolve", "--steps", "10", "--init", kLeft, "--out", "d.csv"});
  EXPECT_EQ(config.subcommand, Subcommand::kEvolve);
  EXPECT_EQ(config.steps, 10);
  EXPECT_EQ(config.radius, 10);
  EXPECT_EQ(config.kgrid, 256);
  EXPECT_EQ(config.format, OutputFormat::kCsv);
  EXPECT_EQ(config.seed, 42u);
  ASSERT_TRUE(config.out.has_value());
  EXPECT_EQ(config.out->string(), "d.csv");
  EXPECT_EQ(config.init, Spinor::Unit(0));
}

TEST(ParseArgs, ComplexInitialState) {
  const double h = 1.0 / std::sqrt(2.0);
  std::ostringstream init;
  init.precision(17);
  init << "0," << h << ",0,0,0,0," << -h << ",0,0,0";
  const auto config = parse({"limit", "--init", init.str()});
  EXPECT_EQ(config.init(0), Complex(0.0, h));
  EXPECT_EQ(config.init(3), Complex(-h, 0.0));
  EXPECT_EQ(config.radius, 10);
}

TEST(ParseArgs, UsageErrors) {
  const std::vector<std::vector<std::string>> bad = {
      {"evolve", "--steps", "10", "--init", "1,0,1,0,0,0,0,0,0,0"},
      {"spectrum", "--kgrid", "1"},
      {},
      {"teleport"},
      {"evolve", "--init", kLeft},
      {"evolve", "--steps", "-1", "--init", kLeft},
      {"evolve", "--steps", "ten", "--init", kLeft},
      {"evolve", "--steps", "3", "--init", "1,0,0"},
      {"evolve", "--steps", "3", "--init", kLeft, "--format", "png"},
      {"evolve", "--steps", "3", "--init", kLeft, "--kgrid", "8"},
      {"spectrum", "--format", "pgm"},
      {"limit", "--init", kLeft, "--kgrid", "9"},
      {"decay", "--init", kLeft},
      {"decay", "--init", kLeft, "--times", "5,3"},
      {"decay", "--init", kLeft, "--times", "1", "--site", "1"},
      {"verdict", "--init", kLeft, "--steps", "10", "--format", "csv"},
      {"timeavg", "--init", kLeft, "--steps", "0"},
  };
  for (const auto& args : bad) {
    std::string joined;
    for (const auto& a : args) joined += a + " ";
    try {
      parse(args);
      ADD_FAILURE() << "accepted: " << joined;
    } catch (const UsageError& e) {
      EXPECT_EQ(std::string(e.what()).find('\n'), std::string::npos) << joined;
    }
  }
}

TEST(ParseArgs, DecayAndVerdict) {
  const auto decay = parse({"decay", "--init", kLeft, "--times", "0,25,400", "--site", "1,-2", "--kgrid", "64"});
  EXPECT_EQ(decay.times, (std::vector<int>{0, 25, 400}));
  EXPECT_EQ(decay.site, (Site{1, -2}));
  EXPECT_EQ(decay.kgrid, 64);
  const auto verdict = parse({"verdict", "--init", kLeft, "--horizon", "50"});
  EXPECT_EQ(verdict.steps, 50);
  EXPECT_EQ(verdict.format, OutputFormat::kJson);
}

TEST(ParseArgs, HelpIsNotAnError) {
  EXPECT_THROW(parse({"--help"}), HelpRequested);
}

TEST(MainEntry, ExitCodes) {
  std::ostringstream out;
  std::ostringstream err;
  const std::vector<std::string> ok = {"evolve", "--steps", "1", "--init", kLeft};
  EXPECT_EQ(main_entry(ok, out, err), 0);
  EXPECT_TRUE(err.str().empty());
  EXPECT_EQ(out.str().substr(0, 8), "n1,n2,p\n");

  std::ostringstream out2;
  std::ostringstream err2;
  const std::vector<std::string> usage = {"spectrum", "--kgrid", "1"};
  EXPECT_EQ(main_entry(usage, out2, err2), 2);
  EXPECT_TRUE(out2.str().empty());
  EXPECT_FALSE(err2.str().empty());

  std::ostringstream out3;
  std::ostringstream err3;
  const std::vector<std::string> failing = {"evolve", "--steps", "1", "--init", kLeft, "--out", "/nonexistent-dir/x.csv"};
  EXPECT_EQ(main_entry(failing, out3, err3), 1);
  EXPECT_TRUE(out3.str().empty());
  EXPECT_FALSE(err3.str().empty());
}

TEST_F(TempDir, EverySubcommandIsByteDeterministic) {
  const std::vector<std::vector<std::string>> runs = {
      {"evolve", "--steps", "6", "--init", kLeft},
      {"evolve", "--steps", "6", "--init", kLeft, "--format", "pgm"},
      {"spectrum", "--kgrid", "6"},
      {"spectrum", "--kgrid", "4", "--format", "json"},
      {"limit", "--init", kLeft, "--kgrid", "16", "--radius", "3"},
      {"limit", "--init", kLeft, "--kgrid", "16", "--radius", "3", "--format", "json"},
      {"timeavg", "--init", kLeft, "--steps", "12", "--radius", "4"},
      {"decay", "--init", kLeft, "--kgrid", "16", "--times", "0,5,9"},
      {"verdict", "--init", kLeft, "--kgrid", "16", "--steps", "20"},
  };
  for (std::size_t i = 0; i < runs.size(); ++i) {
    std::string first;
    for (int rep = 0; rep < 2; ++rep) {
      const auto path = dir_ / ("run" + std::to_string(i) + "_" + std::to_string(rep));
      auto args = runs[i];
      args.insert(args.end(), {"--out", path.string()});
      std::ostringstream out;
      std::ostringstream err;
      ASSERT_EQ(main_entry(args, out, err), 0) << err.str();
      const std::string bytes = slurp(path);
      ASSERT_FALSE(bytes.empty());
      if (rep == 0) {
        first = bytes;
      } else {
        EXPECT_EQ(bytes, first) << "run " << i;
      }
    }
  }
}

TEST_F(TempDir, BinaryExitStatus) {
  const std::string bin = QWALK5_CLI_PATH;
  const auto status = [](const std::string& cmd) {
    const int raw = std::system(cmd.c_str());
    return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  };
  const auto out = dir_ / "grid.csv";
  EXPECT_EQ(status(bin + " evolve --steps 2 --init " + kLeft + " --out " + out.string()), 0);
  EXPECT_EQ(slurp(out).substr(0, 8), "n1,n2,p\n");
  EXPECT_EQ(status(bin + " evolve --steps 2 --init 1,0,1,0,0,0,0,0,0,0 2>/dev/null"), 2);
  EXPECT_EQ(status(bin + " evolve --steps 2 --init " + kLeft + " --out /nonexistent-dir/x 2>/dev/null"), 1);
}

}  // namespace
}  // namespace qwalk5::cli
