// Copyright 2026 The qconc Authors
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

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "qconc/analytic.hpp"
#include "qconc/experiments.hpp"

namespace qconc {
namespace {

namespace fs = std::filesystem;

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

class Workdir : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("qconc_exp_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  fs::path write_config(const std::string& name, const Json& j) {
    const fs::path p = dir_ / name;
    std::ofstream(p) << j.dump();
    return p;
  }

  int cli(const std::string& args) {
    const std::string cmd = std::string("'") + QCONC_CLI + "' " + args + " 2>/dev/null";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }

  fs::path dir_;
};

TEST(ParseConfig, SeedRules) {
  const Json base = {{"qubits", {1}}, {"depths", {1}}};
  EXPECT_THROW(parse_sweep_config(base, std::nullopt), ConfigError);
  EXPECT_EQ(parse_sweep_config(base, 7).seed, 7u);
  Json with_seed = base;
  with_seed["seed"] = 9;
  EXPECT_EQ(parse_sweep_config(with_seed, std::nullopt).seed, 9u);
  EXPECT_EQ(parse_sweep_config(with_seed, 9).seed, 9u);
  EXPECT_THROW(parse_sweep_config(with_seed, 10), ConfigError);
}

TEST(ParseConfig, RejectsBadInput) {
  const Json ok = {{"qubits", {2}}, {"depths", {1, 3}}, {"seed", 1}};
  EXPECT_NO_THROW(parse_sweep_config(ok, std::nullopt));
  auto bad = [&](const char* key, Json v) {
    Json j = ok;
    j[key] = std::move(v);
    EXPECT_THROW(parse_sweep_config(j, std::nullopt), ConfigError) << key;
  };
  bad("colour", "red");
  bad("qubits", Json::array());
  bad("qubits", {0});
  bad("depths", "3");
  bad("sigma", -0.5);
  bad("sigma", "wide");
  bad("class", 2);
  bad("encoder", "Heisenberg");
  bad("mc_samples", -1);
  EXPECT_THROW(parse_sweep_config(Json::array(), 1), ConfigError);
  EXPECT_THROW(parse_sweep_config(Json{{"depths", {1}}, {"seed", 1}}, std::nullopt), ConfigError);
}

TEST(ParseConfig, DefaultsAreResolved) {
  const auto s = parse_sweep_config(Json{{"qubits", {1}}, {"depths", {1}}}, 3);
  const Json r = to_json(s);
  EXPECT_EQ(r.at("encoder"), "RyProduct");
  EXPECT_EQ(r.at("sigma"), 0.8);
  EXPECT_EQ(r.at("mc_samples"), 200000);

  const auto t = parse_train_config(Json{{"data", {{"kind", "synthetic"}}}, {"seed", 4}}, std::nullopt);
  EXPECT_EQ(t.resolved_layers(), 6);
  const Json tr = to_json(t);
  EXPECT_EQ(tr.at("layers"), 6);
  EXPECT_EQ(tr.at("training").at("batch_size"), 200);
  EXPECT_EQ(tr.at("training").at("learning_rate"), 0.02);
  EXPECT_EQ(tr.at("training").at("beta1"), 0.9);
  EXPECT_EQ(tr.at("data").at("encoder"), "StronglyEntanglingRy");

  EXPECT_THROW(parse_train_config(Json{{"data", {{"kind", "audio"}}}, {"seed", 4}}, std::nullopt), ConfigError);
  EXPECT_THROW(parse_train_config(Json{{"data", {{"kind", "synthetic"}}}, {"training", {{"epochs", 0}}}}, 1),
               ConfigError);
  EXPECT_THROW(parse_train_config(Json{{"data", {{"kind", "mnist"}, {"dir", "x"}, {"digits", {3, 3}}}}}, 1),
               ConfigError);
  EXPECT_THROW(parse_mnist_prep_config(Json{{"dir", "x"}, {"split", "validation"}}, 1), ConfigError);
}

TEST(ConfigHash, StableAndSensitive) {
  const Json a = {{"x", 1}, {"y", {1, 2}}};
  EXPECT_EQ(config_hash(a), config_hash(Json::parse(a.dump())));
  EXPECT_EQ(config_hash(a).size(), 16u);
  EXPECT_NE(config_hash(a), config_hash(Json{{"x", 2}, {"y", {1, 2}}}));
  // FNV-1a 64 of the empty object "{}".
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : std::string("{}")) h = (h ^ c) * 0x100000001b3ULL;
  char want[17];
  std::snprintf(want, sizeof want, "%016llx", static_cast<unsigned long long>(h));
  EXPECT_EQ(config_hash(Json::object()), want);
}

TEST(FormatNumber, NineSignificantDigits) {
  EXPECT_EQ(format_number(0.6109763150122), "0.610976315");
  EXPECT_EQ(format_number(16), "16");
  EXPECT_EQ(format_number(1e-12), "1e-12");
}

TEST(Bounds, RowsAndErrors) {
  const auto rows = run_bounds({{4, std::nullopt, 0.8, 0.1}, {3, 5, 0.8, std::nullopt}, {2, 2, -1.0, std::nullopt},
                                {2, std::nullopt, 0.8, std::nullopt}, {2, 3, 0.5, 1.5}});
  ASSERT_EQ(rows.size(), 5u);
  EXPECT_EQ(rows[0].depth_threshold, 16);
  EXPECT_TRUE(rows[0].error.empty());
  EXPECT_FALSE(rows[0].bound_warmup);

  const BoundQuery q{3, 5, 0.8, 0.1};
  ASSERT_TRUE(rows[1].bound_general);
  EXPECT_EQ(*rows[1].bound_warmup, bound_warmup(q));
  EXPECT_EQ(*rows[1].bound_general, bound_general(q));
  EXPECT_EQ(*rows[1].bound_ry_layered, bound_ry_layered(q));
  EXPECT_FALSE(rows[1].depth_threshold);

  for (std::size_t i : {2u, 3u, 4u}) {
    EXPECT_FALSE(rows[i].error.empty()) << i;
    EXPECT_FALSE(rows[i].depth_threshold) << i;
  }
}

TEST(Sweep, AnalyticColumnMatchesClosedForm) {
  SweepConfig c;
  c.qubits = {1, 2};
  c.depths = {1, 3};
  c.mc_samples = 0;
  c.seed = 1;
  const auto rows = run_divergence_sweep(c);
  ASSERT_EQ(rows.size(), 4u);
  for (const auto& r : rows) {
    // Each qubit's Bloch vector shrinks to length exp(-D sigma^2 / 2).
    const double a = std::exp(-r.depth * 0.32);
    const double p = (1 + a) / 2, q = (1 - a) / 2;
    EXPECT_NEAR(r.d2_analytic, r.qubits * std::log2(2 * (p * p + q * q)), 1e-12);
    EXPECT_FALSE(r.d2_monte_carlo);
    EXPECT_LE(r.d2_analytic, r.bound_warmup + 1e-12);
  }
  EXPECT_NEAR(rows[0].d2_analytic, 0.610976315, 1e-9);
}

TEST(Discriminate, IdenticalClassesAreNearChance) {
  DiscriminateConfig c;
  c.qubits = {2};
  c.depths = {1};
  c.samples_per_class = 3000;
  c.identical_classes = true;
  c.seed = 2;
  const auto rows = run_discrimination_sweep(c);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_GE(rows[0].p_succ, 0.5);
  EXPECT_LT(rows[0].p_succ, 0.55);
  c.identical_classes = false;
  EXPECT_GT(run_discrimination_sweep(c)[0].p_succ, rows[0].p_succ + 0.1);
}

TEST_F(Workdir, CliExitCodes) {
  const auto good = write_config("b.json", Json{{"rows", {{{"qubits", 4}, {"sigma", 0.8}, {"eps", 0.1}}}}});
  EXPECT_EQ(cli("bounds --config " + good.string() + " --out " + (dir_ / "b.csv").string() + " --seed 1"), 0);
  const auto csv = lines(slurp(dir_ / "b.csv"));
  ASSERT_EQ(csv.size(), 3u);
  EXPECT_EQ(csv[0].rfind("# {", 0), 0u);
  const Json meta = Json::parse(csv[0].substr(2));
  EXPECT_EQ(meta.at("command"), "bounds");
  EXPECT_EQ(meta.at("config_hash"), config_hash(meta.at("config")));
  EXPECT_EQ(csv[1], "n,D,sigma,eps,bound_warmup,bound_general,bound_ry_layered,depth_threshold,error");
  EXPECT_EQ(csv[2].substr(0, 4), "4,,0");
  EXPECT_NE(csv[2].find(",16,"), std::string::npos);

  EXPECT_EQ(cli("bounds --config " + good.string() + " --out " + (dir_ / "c.csv").string()), 1);
  const auto unknown = write_config("u.json", Json{{"rows", {{{"qubits", 4}, {"sigma", 0.8}}}}, {"bogus", 1}});
  EXPECT_EQ(cli("bounds --config " + unknown.string() + " --out " + (dir_ / "u.csv").string() + " --seed 1"), 1);
  std::ofstream(dir_ / "broken.json") << "{ not json";
  EXPECT_EQ(cli("bounds --config " + (dir_ / "broken.json").string() + " --out x --seed 1"), 1);
  EXPECT_EQ(cli("bounds --out x --seed 1"), 1);
  EXPECT_EQ(cli("frobnicate --config a --out b"), 1);
  EXPECT_EQ(cli("bounds --config " + good.string() + " --out " + (dir_ / "no" / "such" / "dir.csv").string() +
                " --seed 1"),
            2);
  const auto missing = write_config("m.json", Json{{"dir", (dir_ / "nowhere").string()}});
  EXPECT_EQ(cli("mnist-prep --config " + missing.string() + " --out " + (dir_ / "m.csv").string() + " --seed 1"), 2);
}

TEST_F(Workdir, TrainWritesReportAndTrace) {
  const Json cfg = {{"data",
                     {{"kind", "synthetic"}, {"qubits", 2}, {"depth", 1}, {"train_per_class", 40}, {"test_per_class", 10}}},
                    {"layers", 1},
                    {"training", {{"batch_size", 20}, {"epochs", 2}}},
                    {"seed", 5}};
  run_command("train", cfg, std::nullopt, dir_ / "run.json");
  const Json report = Json::parse(slurp(dir_ / "run.json"));
  EXPECT_EQ(report.at("train_size"), 80);
  EXPECT_EQ(report.at("test_size"), 20);
  EXPECT_EQ(report.at("steps"), 8);
  EXPECT_EQ(report.at("theta").size(), 2u * 1 + 6);
  const auto trace = lines(slurp(dir_ / "run.loss.csv"));
  ASSERT_EQ(trace.size(), 2u + 8);
  EXPECT_EQ(trace[1], "step,batch_loss");
}

TEST_F(Workdir, RerunsAreByteIdentical) {
  const auto sweep = write_config(
      "s.json", Json{{"qubits", {1, 2}}, {"depths", {1, 2}}, {"mc_samples", 500}, {"encoder", "U3Entangled"}});
  const auto disc = write_config("d.json", Json{{"qubits", {2}}, {"depths", {1, 2}}, {"samples_per_class", 100}});
  const auto prep = write_config(
      "p.json", Json{{"dir", (fs::path(QCONC_SOURCE_DIR) / "data" / "mnist-subset").string()}, {"split", "test"}});
  for (const auto& [cmd, cfg] : {std::pair{"sweep-divergence", sweep}, {"discriminate", disc}, {"mnist-prep", prep}}) {
    const auto a = dir_ / (std::string(cmd) + ".a.csv"), b = dir_ / (std::string(cmd) + ".b.csv");
    ASSERT_EQ(cli(std::string(cmd) + " --config " + cfg.string() + " --out " + a.string() + " --seed 11"), 0) << cmd;
    ASSERT_EQ(cli(std::string(cmd) + " --config " + cfg.string() + " --out " + b.string() + " --seed 11"), 0) << cmd;
    EXPECT_EQ(slurp(a), slurp(b)) << cmd;
    EXPECT_GT(lines(slurp(a)).size(), 2u) << cmd;
  }
}

}  // namespace
}  // namespace qconc
