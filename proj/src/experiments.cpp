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

#include "qconc/experiments.hpp"

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "qconc/analytic.hpp"
#include "qconc/discriminate.hpp"
#include "qconc/metrics.hpp"

namespace qconc {

namespace {

// Reads one JSON object and remembers which keys were consumed, so that
// leftovers can be reported as unknown.
class Fields {
 public:
  Fields(const Json& j, std::string where) : j_(j), where_(std::move(where)) {
    if (!j_.is_object()) throw ConfigError(where_ + ": expected a JSON object");
  }

  bool has(const std::string& key) const { return j_.contains(key); }

  template <typename T>
  std::optional<T> optional(const std::string& key) {
    used_.insert(key);
    if (!j_.contains(key)) return std::nullopt;
    return convert<T>(j_.at(key), where_ + "." + key);
  }

  template <typename T>
  T get(const std::string& key, T fallback) {
    return optional<T>(key).value_or(std::move(fallback));
  }

  template <typename T>
  T require(const std::string& key) {
    auto v = optional<T>(key);
    if (!v) throw ConfigError(where_ + ": missing required key \"" + key + "\"");
    return *v;
  }

  std::optional<Fields> object(const std::string& key) {
    used_.insert(key);
    if (!j_.contains(key)) return std::nullopt;
    return Fields(j_.at(key), where_ + "." + key);
  }

  const Json* raw(const std::string& key) {
    used_.insert(key);
    return j_.contains(key) ? &j_.at(key) : nullptr;
  }

  void finish() const {
    for (const auto& [key, value] : j_.items()) {
      if (!used_.contains(key)) throw ConfigError(where_ + ": unknown key \"" + key + "\"");
    }
  }

  const std::string& where() const { return where_; }

 private:
  template <typename T>
  static T convert(const Json& v, const std::string& name) {
    if constexpr (std::is_same_v<T, bool>) {
      if (!v.is_boolean()) throw ConfigError(name + ": expected a boolean");
      return v.get<bool>();
    } else if constexpr (std::is_same_v<T, std::uint64_t>) {
      // Non-negative literals built in code are stored signed.
      const bool ok = v.is_number_unsigned() || (v.is_number_integer() && v.get<std::int64_t>() >= 0);
      if (!ok) throw ConfigError(name + ": expected a non-negative integer");
      return v.get<std::uint64_t>();
    } else if constexpr (std::is_integral_v<T>) {
      if (!v.is_number_integer()) throw ConfigError(name + ": expected an integer");
      const auto x = v.get<std::int64_t>();
      if (x < std::numeric_limits<T>::min() || x > std::numeric_limits<T>::max()) {
        throw ConfigError(name + ": integer out of range");
      }
      return static_cast<T>(x);
    } else if constexpr (std::is_same_v<T, double>) {
      if (!v.is_number()) throw ConfigError(name + ": expected a number");
      return v.get<double>();
    } else if constexpr (std::is_same_v<T, std::string>) {
      if (!v.is_string()) throw ConfigError(name + ": expected a string");
      return v.get<std::string>();
    } else if constexpr (std::is_same_v<T, std::vector<int>>) {
      if (!v.is_array()) throw ConfigError(name + ": expected an array of integers");
      std::vector<int> out;
      for (const auto& e : v) out.push_back(convert<int>(e, name + "[]"));
      return out;
    } else {
      static_assert(sizeof(T) == 0, "unsupported config type");
    }
  }

  const Json& j_;
  std::string where_;
  std::set<std::string> used_;
};

std::uint64_t resolve_seed(Fields& f, std::optional<std::uint64_t> flag) {
  const auto key = f.optional<std::uint64_t>("seed");
  if (key && flag && *key != *flag) {
    throw ConfigError("seed " + std::to_string(*flag) + " from --seed conflicts with config seed " +
                      std::to_string(*key));
  }
  if (!key && !flag) throw ConfigError("no seed given: pass --seed or set \"seed\" in the config");
  return flag ? *flag : *key;
}

EncodingFamily family_field(Fields& f, const std::string& key, EncodingFamily fallback) {
  const auto name = f.optional<std::string>(key);
  if (!name) return fallback;
  try {
    return parse_encoding_family(*name);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(f.where() + "." + key + ": " + e.what());
  }
}

std::array<int, 2> digits_field(Fields& f, std::array<int, 2> fallback) {
  const auto d = f.optional<std::vector<int>>("digits");
  if (!d) return fallback;
  if (d->size() != 2) throw ConfigError(f.where() + ".digits: expected two digits");
  const std::array<int, 2> out = {(*d)[0], (*d)[1]};
  for (int x : out) {
    if (x < 0 || x > 9) throw ConfigError(f.where() + ".digits: digits must be in [0, 9]");
  }
  if (out[0] == out[1]) throw ConfigError(f.where() + ".digits: digits must be distinct");
  return out;
}

std::vector<int> positive_list(Fields& f, const std::string& key) {
  auto v = f.require<std::vector<int>>(key);
  if (v.empty()) throw ConfigError(f.where() + "." + key + ": grid must not be empty");
  for (int x : v) {
    if (x < 1) throw ConfigError(f.where() + "." + key + ": entries must be >= 1");
  }
  return v;
}

// Runs the library's own validation at parse time so bad values surface as
// config errors instead of failing mid-run.
template <typename F>
void check(const std::string& where, F&& f) {
  try {
    f();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(where + ": " + e.what());
  }
}

void check_grid(EncodingFamily family, const std::vector<int>& qubits, const std::vector<int>& depths,
                double sigma) {
  check("config", [&] {
    for (int n : qubits) {
      for (int d : depths) {
        SyntheticTaskSpec task{family, n, d, sigma};
        task.validate();
      }
    }
  });
}

std::string csv_field(std::string_view text) {
  if (text.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(text);
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

template <typename T>
std::string optional_number(const std::optional<T>& v) {
  if (!v) return "";
  if constexpr (std::is_integral_v<T>) {
    return std::to_string(*v);
  } else {
    return format_number(*v);
  }
}

class CsvWriter {
 public:
  CsvWriter(const std::filesystem::path& path, const Json& metadata, const std::vector<std::string>& header)
      : path_(path), out_(path, std::ios::binary | std::ios::trunc) {
    if (!out_) throw std::runtime_error("cannot open " + path.string() + " for writing");
    out_ << "# " << metadata.dump() << "\n";
    row(header);
  }

  void row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) out_ << (i ? "," : "") << csv_field(cells[i]);
    out_ << "\n";
  }

  void close() {
    out_.close();
    if (!out_) throw std::runtime_error("write to " + path_.string() + " failed");
  }

 private:
  std::filesystem::path path_;
  std::ofstream out_;
};

Json decisions() {
  return {
      {"feature_layout", "qubit-major, then layer, then U3 rotation index"},
      {"entanglers", "ring CNOT j->j+1 mod n between consecutive rotation columns"},
      {"class_means", "class 0: 2pi/16 (j-1) mod 2pi; class 1: 2pi/16 (16-j) mod 2pi"},
      {"rng", "splitmix64 counter streams with Box-Muller normals"},
      {"csv_precision", "9 significant digits"},
  };
}

Json metadata(const std::string& command, const Json& resolved) {
  return {{"command", command},
          {"seed", resolved.at("seed")},
          {"config_hash", config_hash(resolved)},
          {"config", resolved},
          {"decisions", decisions()}};
}

Json mnist_decisions(const EncodingCircuitSpec& spec) {
  Json d = {{"mnist_resize", "7x7 block mean to 4x4, scaled by pi/255"},
            {"mnist_class0", "first digit of the pair"},
            {"mnist_split", "train files for training, t10k files for testing"}};
  if (spec.feature_count() != static_cast<std::size_t>(kReducedFeatures)) {
    d["mnist_feature_tiling"] = "16 reduced features tiled cyclically onto " +
                                std::to_string(spec.feature_count()) + " encoder slots";
  }
  return d;
}

void write_sweep(const SweepConfig& cfg, const std::filesystem::path& out) {
  const auto rows = run_divergence_sweep(cfg);
  auto meta = metadata("sweep-divergence", to_json(cfg));
  meta["decisions"]["monte_carlo_stream"] = "grid point i samples from substream i of the seed";
  CsvWriter csv(out, meta,
                {"n", "D", "d2_analytic", "d2_monte_carlo", "bound_warmup", "bound_general",
                 "bound_ry_layered", "M"});
  for (const auto& r : rows) {
    csv.row({std::to_string(r.qubits), std::to_string(r.depth), format_number(r.d2_analytic),
             optional_number(r.d2_monte_carlo), format_number(r.bound_warmup),
             format_number(r.bound_general), format_number(r.bound_ry_layered),
             std::to_string(r.mc_samples)});
  }
  csv.close();
}

void write_discriminate(const DiscriminateConfig& cfg, const std::filesystem::path& out) {
  const auto rows = run_discrimination_sweep(cfg);
  auto meta = metadata("discriminate", to_json(cfg));
  meta["decisions"]["discrimination"] = "Helstrom measurement on empirical class averages, equal priors";
  CsvWriter csv(out, meta, {"n", "D", "p_succ"});
  for (const auto& r : rows) {
    csv.row({std::to_string(r.qubits), std::to_string(r.depth), format_number(r.p_succ)});
  }
  csv.close();
}

void write_bounds(const std::vector<BoundsRowInput>& inputs, std::uint64_t seed,
                  const std::filesystem::path& out) {
  Json rows = Json::array();
  for (const auto& in : inputs) {
    Json r = {{"qubits", in.qubits}, {"sigma", in.sigma}};
    if (in.depth) r["depth"] = *in.depth;
    if (in.eps) r["eps"] = *in.eps;
    rows.push_back(std::move(r));
  }
  const Json resolved = {{"rows", rows}, {"seed", seed}};
  CsvWriter csv(out, metadata("bounds", resolved),
                {"n", "D", "sigma", "eps", "bound_warmup", "bound_general", "bound_ry_layered",
                 "depth_threshold", "error"});
  for (const auto& r : run_bounds(inputs)) {
    csv.row({std::to_string(r.input.qubits), optional_number(r.input.depth), format_number(r.input.sigma),
             optional_number(r.input.eps), optional_number(r.bound_warmup), optional_number(r.bound_general),
             optional_number(r.bound_ry_layered), optional_number(r.depth_threshold), r.error});
  }
  csv.close();
}

void write_train(const TrainExperimentConfig& cfg, const std::filesystem::path& out) {
  const auto result = run_training_experiment(cfg);
  auto meta = metadata("train", to_json(cfg));
  meta["decisions"]["qnn"] = "U3 column, then blocks of ring CNOTs and an RY column; Z and X on qubit 0";
  meta["decisions"]["theta_init"] = "uniform in [0, 2pi)";
  meta["decisions"]["loss"] = "softmax cross-entropy in nats";
  if (cfg.data.kind == TrainDataConfig::Kind::Mnist) {
    meta["decisions"].update(
        mnist_decisions(EncodingCircuitSpec::make(cfg.data.family, cfg.data.qubits, cfg.data.depth)));
  }

  std::filesystem::path loss_path = out;
  loss_path.replace_filename(out.stem().string() + ".loss.csv");

  const auto& rep = result.report;
  Json report = {{"metadata", meta},
                 {"train_size", result.train_size},
                 {"test_size", result.test_size},
                 {"steps", rep.loss_trace.size()},
                 {"final_train_loss", rep.final_train_loss},
                 {"train_accuracy", rep.train_accuracy},
                 {"test_accuracy", rep.test_accuracy ? Json(*rep.test_accuracy) : Json(nullptr)},
                 {"theta", rep.theta},
                 {"loss_trace_file", loss_path.filename().string()}};
  std::ofstream json_out(out, std::ios::binary | std::ios::trunc);
  if (!json_out) throw std::runtime_error("cannot open " + out.string() + " for writing");
  json_out << report.dump(2) << "\n";
  json_out.close();
  if (!json_out) throw std::runtime_error("write to " + out.string() + " failed");

  CsvWriter csv(loss_path, meta, {"step", "batch_loss"});
  for (std::size_t s = 0; s < rep.loss_trace.size(); ++s) {
    csv.row({std::to_string(s + 1), format_number(rep.loss_trace[s])});
  }
  csv.close();
}

void write_mnist_prep(const MnistPrepConfig& cfg, const std::filesystem::path& out) {
  const auto files = locate_mnist(cfg.mnist_dir, cfg.train_split);
  const auto raw = load_mnist_idx(files.images, files.labels);
  const auto spec = EncodingCircuitSpec::make(cfg.family, cfg.qubits, cfg.depth);
  const auto data = preprocess_mnist(raw, cfg.digits, spec);

  auto meta = metadata("mnist-prep", to_json(cfg));
  meta["decisions"].update(mnist_decisions(spec));
  std::array<std::size_t, 2> counts{};
  for (std::size_t i = 0; i < data.size(); ++i) ++counts[static_cast<std::size_t>(data.class_of(i))];
  meta["source_items"] = raw.images.size();
  meta["class_counts"] = counts;

  std::vector<std::string> header = {"class", "digit"};
  for (std::size_t f = 0; f < spec.feature_count(); ++f) header.push_back("x" + std::to_string(f));
  CsvWriter csv(out, meta, header);
  for (std::size_t i = 0; i < data.size(); ++i) {
    const int cls = data.class_of(i);
    std::vector<std::string> cells = {std::to_string(cls), std::to_string(cfg.digits[cls])};
    for (double x : data.features[i]) cells.push_back(format_number(x));
    csv.row(cells);
  }
  csv.close();
}

}  // namespace

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

std::string config_hash(const Json& j) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : j.dump()) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016" PRIx64, h);
  return buf;
}

std::vector<SweepRow> run_divergence_sweep(const SweepConfig& cfg) {
  const SeededStream root(cfg.seed);
  std::vector<SweepRow> rows;
  std::uint64_t point = 0;
  for (int n : cfg.qubits) {
    for (int d : cfg.depths) {
      const SyntheticTaskSpec task{cfg.family, n, d, cfg.sigma};
      const auto spec = task.encoder();
      const auto g = synthetic_spec(task, cfg.class_id);
      const BoundQuery q{n, d, cfg.sigma, 0.1};
      SweepRow row{n, d, analytic_divergence_to_mixed(spec, g), std::nullopt, bound_warmup(q),
                   bound_general(q), bound_ry_layered(q), cfg.mc_samples};
      if (cfg.mc_samples > 0) {
        row.d2_monte_carlo = renyi2_vs_mixed(monte_carlo_average(spec, g, cfg.mc_samples, root.substream(point)));
      }
      rows.push_back(row);
      ++point;
    }
  }
  return rows;
}

std::vector<DiscriminateRow> run_discrimination_sweep(const DiscriminateConfig& cfg) {
  const SeededStream root(cfg.seed);
  std::vector<DiscriminateRow> rows;
  std::uint64_t point = 0;
  for (int n : cfg.qubits) {
    for (int d : cfg.depths) {
      const SyntheticTaskSpec task{cfg.family, n, d, cfg.sigma};
      const auto class0 = synthetic_spec(task, 0);
      const std::array<GaussianFeatureSpec, 2> classes = {
          class0, cfg.identical_classes ? class0 : synthetic_spec(task, 1)};
      const auto data =
          generate_gaussian_dataset(task.encoder(), classes, cfg.samples_per_class, root.substream(point));
      rows.push_back({n, d, optimal_discrimination(class_average_states(data)).p_succ});
      ++point;
    }
  }
  return rows;
}

std::vector<BoundsRow> run_bounds(const std::vector<BoundsRowInput>& inputs) {
  std::vector<BoundsRow> rows;
  for (const auto& in : inputs) {
    BoundsRow row{in, {}, {}, {}, {}, {}};
    try {
      if (!in.depth && !in.eps) throw std::invalid_argument("row needs a depth, an eps, or both");
      if (in.depth) {
        const BoundQuery q{in.qubits, *in.depth, in.sigma, 0.1};
        row.bound_warmup = bound_warmup(q);
        row.bound_general = bound_general(q);
        row.bound_ry_layered = bound_ry_layered(q);
      }
      if (in.eps) row.depth_threshold = depth_threshold(BoundQuery{in.qubits, 1, in.sigma, *in.eps});
    } catch (const std::invalid_argument& e) {
      row = BoundsRow{in, {}, {}, {}, {}, e.what()};
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

MnistFiles locate_mnist(const std::filesystem::path& dir, bool train_split) {
  const std::string prefix = train_split ? "train" : "t10k";
  auto find = [&](const std::string& name) {
    for (const auto& candidate : {dir / name, dir / (name + ".gz")}) {
      if (std::filesystem::exists(candidate)) return candidate;
    }
    throw std::runtime_error("neither " + name + " nor " + name + ".gz found in " + dir.string());
  };
  return {find(prefix + "-images-idx3-ubyte"), find(prefix + "-labels-idx1-ubyte")};
}

TrainExperimentResult run_training_experiment(const TrainExperimentConfig& cfg) {
  const SeededStream root(cfg.seed);
  const auto& dc = cfg.data;
  LabeledDataset train_set, test_set;
  if (dc.kind == TrainDataConfig::Kind::Synthetic) {
    const SyntheticTaskSpec task{dc.family, dc.qubits, dc.depth, dc.sigma};
    train_set = generate_dataset(task, dc.train_per_class, root.substream(0));
    test_set = generate_dataset(task, dc.test_per_class, root.substream(1));
  } else {
    const auto spec = EncodingCircuitSpec::make(dc.family, dc.qubits, dc.depth);
    const auto train_files = locate_mnist(dc.mnist_dir, true);
    const auto test_files = locate_mnist(dc.mnist_dir, false);
    train_set = preprocess_mnist(load_mnist_idx(train_files.images, train_files.labels), dc.digits, spec);
    test_set = preprocess_mnist(load_mnist_idx(test_files.images, test_files.labels), dc.digits, spec);
  }

  auto qnn = QnnSpec::make(dc.qubits, cfg.resolved_layers(), QnnSpec::default_observables(dc.qubits));
  SeededStream init = root.substream(2);
  randomize_parameters(qnn, init);
  TrainConfig training = cfg.training;
  training.seed = root.substream(3).next_u64();

  TrainExperimentResult result;
  result.train_size = train_set.size();
  result.test_size = test_set.size();
  result.report = train(train_set, qnn, training, &test_set);
  return result;
}

SweepConfig parse_sweep_config(const Json& j, std::optional<std::uint64_t> seed_flag) {
  Fields f(j, "config");
  SweepConfig c;
  c.seed = resolve_seed(f, seed_flag);
  c.family = family_field(f, "encoder", c.family);
  c.qubits = positive_list(f, "qubits");
  c.depths = positive_list(f, "depths");
  c.sigma = f.get("sigma", c.sigma);
  c.class_id = f.get("class", c.class_id);
  c.mc_samples = f.get("mc_samples", c.mc_samples);
  f.finish();
  if (c.class_id != 0 && c.class_id != 1) throw ConfigError("config.class: must be 0 or 1");
  check_grid(c.family, c.qubits, c.depths, c.sigma);
  for (int n : c.qubits) {
    if (n > 12) throw ConfigError("config.qubits: the analytic average supports at most 12 qubits");
  }
  return c;
}

DiscriminateConfig parse_discriminate_config(const Json& j, std::optional<std::uint64_t> seed_flag) {
  Fields f(j, "config");
  DiscriminateConfig c;
  c.seed = resolve_seed(f, seed_flag);
  c.family = family_field(f, "encoder", c.family);
  c.qubits = positive_list(f, "qubits");
  c.depths = positive_list(f, "depths");
  c.sigma = f.get("sigma", c.sigma);
  c.samples_per_class = f.get<std::uint64_t>("samples_per_class", c.samples_per_class);
  c.identical_classes = f.get("identical_classes", c.identical_classes);
  f.finish();
  if (c.samples_per_class == 0) throw ConfigError("config.samples_per_class: must be >= 1");
  check_grid(c.family, c.qubits, c.depths, c.sigma);
  return c;
}

std::vector<BoundsRowInput> parse_bounds_config(const Json& j, std::optional<std::uint64_t> seed_flag,
                                                std::uint64_t* seed_out) {
  Fields f(j, "config");
  const auto seed = resolve_seed(f, seed_flag);
  if (seed_out) *seed_out = seed;
  const Json* rows = f.raw("rows");
  f.finish();
  if (!rows || !rows->is_array() || rows->empty()) throw ConfigError("config.rows: expected a non-empty array");
  std::vector<BoundsRowInput> out;
  for (std::size_t i = 0; i < rows->size(); ++i) {
    Fields r((*rows)[i], "config.rows[" + std::to_string(i) + "]");
    BoundsRowInput in;
    in.qubits = r.require<int>("qubits");
    in.depth = r.optional<int>("depth");
    in.sigma = r.require<double>("sigma");
    in.eps = r.optional<double>("eps");
    r.finish();
    out.push_back(in);
  }
  return out;
}

TrainExperimentConfig parse_train_config(const Json& j, std::optional<std::uint64_t> seed_flag) {
  Fields f(j, "config");
  TrainExperimentConfig c;
  c.seed = resolve_seed(f, seed_flag);
  c.layers = f.get("layers", c.layers);

  auto data = f.object("data");
  if (!data) throw ConfigError("config: missing required key \"data\"");
  auto& dc = c.data;
  const auto kind = data->require<std::string>("kind");
  if (kind == "synthetic") {
    dc.kind = TrainDataConfig::Kind::Synthetic;
    dc.sigma = data->get("sigma", dc.sigma);
    dc.train_per_class = data->get<std::uint64_t>("train_per_class", dc.train_per_class);
    dc.test_per_class = data->get<std::uint64_t>("test_per_class", dc.test_per_class);
    if (dc.train_per_class == 0 || dc.test_per_class == 0) {
      throw ConfigError("config.data: per-class sample counts must be >= 1");
    }
  } else if (kind == "mnist") {
    dc.kind = TrainDataConfig::Kind::Mnist;
    dc.mnist_dir = data->require<std::string>("dir");
    dc.digits = digits_field(*data, dc.digits);
  } else {
    throw ConfigError("config.data.kind: expected \"synthetic\" or \"mnist\", got \"" + kind + "\"");
  }
  dc.family = family_field(*data, "encoder", dc.family);
  dc.qubits = data->get("qubits", dc.qubits);
  dc.depth = data->get("depth", dc.depth);
  data->finish();

  if (auto t = f.object("training")) {
    auto& tc = c.training;
    tc.batch_size = t->get<std::uint64_t>("batch_size", tc.batch_size);
    tc.learning_rate = t->get("learning_rate", tc.learning_rate);
    tc.beta1 = t->get("beta1", tc.beta1);
    tc.beta2 = t->get("beta2", tc.beta2);
    tc.adam_eps = t->get("adam_eps", tc.adam_eps);
    tc.epochs = t->get("epochs", tc.epochs);
    t->finish();
  }
  f.finish();

  check("config", [&] {
    c.training.validate();
    if (dc.kind == TrainDataConfig::Kind::Synthetic) {
      SyntheticTaskSpec{dc.family, dc.qubits, dc.depth, dc.sigma}.validate();
    } else {
      EncodingCircuitSpec::make(dc.family, dc.qubits, dc.depth).validate();
    }
    QnnSpec::make(dc.qubits, c.resolved_layers(), QnnSpec::default_observables(dc.qubits));
  });
  return c;
}

MnistPrepConfig parse_mnist_prep_config(const Json& j, std::optional<std::uint64_t> seed_flag) {
  Fields f(j, "config");
  MnistPrepConfig c;
  c.seed = resolve_seed(f, seed_flag);
  c.mnist_dir = f.require<std::string>("dir");
  const auto split = f.get<std::string>("split", "train");
  if (split != "train" && split != "test") throw ConfigError("config.split: expected \"train\" or \"test\"");
  c.train_split = split == "train";
  c.digits = digits_field(f, c.digits);
  c.family = family_field(f, "encoder", c.family);
  c.qubits = f.get("qubits", c.qubits);
  c.depth = f.get("depth", c.depth);
  f.finish();
  check("config", [&] { EncodingCircuitSpec::make(c.family, c.qubits, c.depth).validate(); });
  return c;
}

Json to_json(const SweepConfig& c) {
  return {{"encoder", to_string(c.family)}, {"qubits", c.qubits}, {"depths", c.depths},
          {"sigma", c.sigma},               {"class", c.class_id}, {"mc_samples", c.mc_samples},
          {"seed", c.seed}};
}

Json to_json(const DiscriminateConfig& c) {
  return {{"encoder", to_string(c.family)},
          {"qubits", c.qubits},
          {"depths", c.depths},
          {"sigma", c.sigma},
          {"samples_per_class", c.samples_per_class},
          {"identical_classes", c.identical_classes},
          {"seed", c.seed}};
}

Json to_json(const TrainExperimentConfig& c) {
  const auto& dc = c.data;
  Json data = {{"encoder", to_string(dc.family)}, {"qubits", dc.qubits}, {"depth", dc.depth}};
  if (dc.kind == TrainDataConfig::Kind::Synthetic) {
    data["kind"] = "synthetic";
    data["sigma"] = dc.sigma;
    data["train_per_class"] = dc.train_per_class;
    data["test_per_class"] = dc.test_per_class;
  } else {
    data["kind"] = "mnist";
    data["dir"] = dc.mnist_dir.string();
    data["digits"] = dc.digits;
  }
  const auto& t = c.training;
  return {{"data", data},
          {"layers", c.resolved_layers()},
          {"training",
           {{"batch_size", t.batch_size},
            {"learning_rate", t.learning_rate},
            {"beta1", t.beta1},
            {"beta2", t.beta2},
            {"adam_eps", t.adam_eps},
            {"epochs", t.epochs}}},
          {"seed", c.seed}};
}

Json to_json(const MnistPrepConfig& c) {
  return {{"dir", c.mnist_dir.string()},
          {"split", c.train_split ? "train" : "test"},
          {"digits", c.digits},
          {"encoder", to_string(c.family)},
          {"qubits", c.qubits},
          {"depth", c.depth},
          {"seed", c.seed}};
}

void run_command(const std::string& command, const Json& config, std::optional<std::uint64_t> seed_flag,
                 const std::filesystem::path& out) {
  if (command == "sweep-divergence") {
    write_sweep(parse_sweep_config(config, seed_flag), out);
  } else if (command == "discriminate") {
    write_discriminate(parse_discriminate_config(config, seed_flag), out);
  } else if (command == "bounds") {
    std::uint64_t seed = 0;
    const auto rows = parse_bounds_config(config, seed_flag, &seed);
    write_bounds(rows, seed, out);
  } else if (command == "train") {
    write_train(parse_train_config(config, seed_flag), out);
  } else if (command == "mnist-prep") {
    write_mnist_prep(parse_mnist_prep_config(config, seed_flag), out);
  } else {
    throw ConfigError("unknown command \"" + command + "\"");
  }
}

}  // namespace qconc
