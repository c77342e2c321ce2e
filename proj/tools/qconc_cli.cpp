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

// Command-line front end: qconc <subcommand> --config cfg.json --out path [--seed N]
// Exit codes: 0 success, 1 configuration error, 2 runtime error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "qconc/experiments.hpp"

namespace {

constexpr int kConfigError = 1;
constexpr int kRuntimeError = 2;

struct Args {
  std::string config;
  std::string out;
  std::optional<std::uint64_t> seed;
};

qconc::Json read_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw qconc::ConfigError("cannot open config file " + path);
  try {
    return qconc::Json::parse(in);
  } catch (const qconc::Json::parse_error& e) {
    throw qconc::ConfigError("config file " + path + " is not valid JSON: " + e.what());
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Data-encoding concentration experiments"};
  app.require_subcommand(1);

  Args args;
  const char* commands[][2] = {
      {"sweep-divergence", "Divergence of the class average to the maximally mixed state over an (n, D) grid (CSV)"},
      {"train", "Train the variational classifier (JSON report plus <stem>.loss.csv)"},
      {"discriminate", "Helstrom success probability over an (n, D) grid (CSV)"},
      {"bounds", "Evaluate the divergence bounds and depth threshold (CSV)"},
      {"mnist-prep", "Reduce an MNIST digit pair to encoder features (CSV)"},
  };
  for (const auto& [name, help] : commands) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("--config", args.config, "JSON config file")->required();
    sub->add_option("--out", args.out, "Output file")->required();
    sub->add_option("--seed", args.seed, "Master seed (u64)");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kConfigError;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    qconc::run_command(command, read_config(args.config), args.seed, args.out);
  } catch (const qconc::ConfigError& e) {
    std::cerr << "qconc " << command << ": config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "qconc " << command << ": error: " << e.what() << "\n";
    return kRuntimeError;
  }
  return 0;
}
