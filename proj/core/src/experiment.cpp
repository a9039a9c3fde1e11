#include "sorr/experiment.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <json.hpp>
#include <mutex>
#include <numeric>
#include <random>
#include <sstream>

#include "sorr/errors.hpp"
#include "sorr/metrics.hpp"
#include "sorr/objective.hpp"

namespace sorr {

using Json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Enumerations.

std::string to_string(Task task) {
  switch (task) {
    case Task::binary:
      return "binary";
    case Task::multiclass:
      return "multiclass";
    case Task::multilabel:
      return "multilabel";
  }
  return "unknown";
}

std::string to_string(Aggregate aggregate) {
  switch (aggregate) {
    case Aggregate::average:
      return "average";
    case Aggregate::max:
      return "max";
    case Aggregate::median:
      return "median";
    case Aggregate::atk:
      return "atk";
    case Aggregate::aorr:
      return "aorr";
    case Aggregate::topk:
      return "topk";
    case Aggregate::tkml:
      return "tkml";
    case Aggregate::tkml_aorr:
      return "tkml_aorr";
    case Aggregate::auto_aorr:
      return "auto_aorr";
  }
  return "unknown";
}

Task task_from_string(const std::string& name) {
  for (Task t : {Task::binary, Task::multiclass, Task::multilabel}) {
    if (to_string(t) == name) {
      return t;
    }
  }
  throw ParameterError("task: unknown value '" + name +
                       "' (binary, multiclass, multilabel)");
}

Aggregate aggregate_from_string(const std::string& name) {
  for (Aggregate a : {Aggregate::average, Aggregate::max, Aggregate::median,
                      Aggregate::atk, Aggregate::aorr, Aggregate::topk,
                      Aggregate::tkml, Aggregate::tkml_aorr, Aggregate::auto_aorr}) {
    if (to_string(a) == name) {
      return a;
    }
  }
  throw ParameterError("aggregate: unknown value '" + name + "'");
}

// ---------------------------------------------------------------------------
// RankSpec.

std::size_t RankSpec::resolve(std::size_t n) const {
  const double v = relative ? value * static_cast<double>(n) : value;
  return static_cast<std::size_t>(std::llround(v));
}

std::string RankSpec::to_string() const {
  std::ostringstream out;
  out << std::setprecision(17) << value;
  if (relative) {
    return (value == 1.0 ? std::string() : out.str()) + "n";
  }
  return out.str();
}

RankSpec RankSpec::parse(const std::string& text) {
  RankSpec r;
  std::string body = text;
  if (!body.empty() && body.back() == 'n') {
    r.relative = true;
    body.pop_back();
    if (body.empty()) {
      r.value = 1.0;
      return r;
    }
  }
  char* end = nullptr;
  r.value = std::strtod(body.c_str(), &end);
  if (body.empty() || *end != '\0' || r.value < 0.0) {
    throw ParameterError("rank '" + text + "' is neither a count nor a multiple of n");
  }
  return r;
}

// ---------------------------------------------------------------------------
// Config.

std::map<int, int> parse_flip_map(const std::string& text) {
  std::map<int, int> out;
  std::stringstream ss(text);
  std::string pair;
  while (std::getline(ss, pair, ',')) {
    if (pair.empty()) {
      continue;
    }
    const auto colon = pair.find(':');
    if (colon == std::string::npos) {
      throw ParameterError("flip_map entry '" + pair + "' must look like 2:7");
    }
    const int from = std::stoi(pair.substr(0, colon));
    const int to = std::stoi(pair.substr(colon + 1));
    if (from < 1 || to < 1) {
      throw ParameterError("flip_map labels are 1-based");
    }
    out[from - 1] = to - 1;
  }
  return out;
}

namespace {

const std::vector<std::string>& knownKeys() {
  static const std::vector<std::string> keys = {
      "name", "task", "loss", "aggregate", "dataset", "format", "test_dataset",
      "num_labels", "num_features", "subsample", "test_subsample", "synthetic", "n_outliers",
      "noise", "noise_p", "flip_map", "split", "standardize", "k", "m",
      "kprime", "C", "eta_outer", "eta_inner", "outer_epochs", "inner_epochs",
      "warmup_epochs", "batch", "seed", "patience", "refresh_every", "bias", "keep_best",
      "init_scale",
      "repeats", "eval_k", "output"};
  return keys;
}

std::string joinReals(const std::vector<double>& v) {
  std::ostringstream out;
  out << std::setprecision(17);
  for (std::size_t i = 0; i < v.size(); ++i) {
    out << (i ? "," : "") << v[i];
  }
  return out.str();
}

std::string realText(double v) {
  std::ostringstream out;
  out << std::setprecision(17) << v;
  return out.str();
}

}  // namespace

ExperimentConfig ExperimentConfig::from_doc(const KeyValueDoc& doc) {
  for (const std::string& key : doc.keys()) {
    if (std::find(knownKeys().begin(), knownKeys().end(), key) == knownKeys().end()) {
      throw ParseError("unknown config key '" + key + "'", doc.line_of(key));
    }
  }
  ExperimentConfig c;
  c.name = doc.get_string("name", c.name);
  c.task = task_from_string(doc.get_string("task", to_string(c.task)));
  c.loss = loss_kind_from_string(doc.get_string("loss", to_string(c.loss)));
  c.aggregate = aggregate_from_string(doc.get_string("aggregate", to_string(c.aggregate)));
  c.dataset = doc.get_string("dataset", c.dataset);
  c.format = data_format_from_string(doc.get_string("format", to_string(c.format)));
  c.test_dataset = doc.get_string("test_dataset", c.test_dataset);
  c.num_labels = static_cast<int>(doc.get_int("num_labels", c.num_labels));
  c.num_features = static_cast<int>(doc.get_int("num_features", c.num_features));
  c.subsample = static_cast<std::size_t>(doc.get_int("subsample", 0));
  c.test_subsample = static_cast<std::size_t>(doc.get_int("test_subsample", 0));
  c.synthetic = doc.get_string("synthetic", c.synthetic);
  c.n_outliers = static_cast<int>(doc.get_int("n_outliers", c.n_outliers));
  c.noise = doc.get_string("noise", c.noise);
  c.noise_p = doc.get_real("noise_p", c.noise_p);
  c.flip_map = doc.get_string("flip_map", c.flip_map);
  c.split = doc.get_reals("split", c.split);
  c.standardize = doc.get_bool("standardize", c.standardize);
  if (doc.has("k")) {
    c.k = RankSpec::parse(doc.get("k"));
  }
  if (doc.has("m")) {
    c.m = RankSpec::parse(doc.get("m"));
  }
  c.kprime = static_cast<int>(doc.get_int("kprime", c.kprime));
  TrainConfig& t = c.train;
  t.C = doc.get_real("C", t.C);
  t.eta_outer = doc.get_real("eta_outer", t.eta_outer);
  t.eta_inner = doc.get_real("eta_inner", t.eta_inner);
  t.outer_epochs = static_cast<int>(doc.get_int("outer_epochs", t.outer_epochs));
  t.inner_epochs = static_cast<int>(doc.get_int("inner_epochs", t.inner_epochs));
  t.warmup_epochs = static_cast<int>(doc.get_int("warmup_epochs", t.warmup_epochs));
  t.batch = static_cast<std::size_t>(doc.get_int("batch", static_cast<long long>(t.batch)));
  t.seed = static_cast<std::uint64_t>(doc.get_int("seed", static_cast<long long>(t.seed)));
  t.patience = static_cast<int>(doc.get_int("patience", t.patience));
  t.refresh_every = static_cast<int>(doc.get_int("refresh_every", t.refresh_every));
  t.bias = doc.get_bool("bias", t.bias);
  t.keep_best = doc.get_bool("keep_best", t.keep_best);
  t.init_scale = doc.get_real("init_scale", t.init_scale);
  c.repeats = static_cast<int>(doc.get_int("repeats", c.repeats));
  if (doc.has("eval_k")) {
    c.eval_k.clear();
    for (double v : doc.get_reals("eval_k", {})) {
      c.eval_k.push_back(static_cast<int>(v));
    }
  }
  c.output = doc.get_string("output", c.output);
  c.validate();
  return c;
}

ExperimentConfig ExperimentConfig::load(const std::filesystem::path& path) {
  return from_doc(KeyValueDoc::load(path));
}

KeyValueDoc ExperimentConfig::to_doc() const {
  KeyValueDoc d;
  d.set("name", name);
  d.set("task", to_string(task));
  d.set("loss", to_string(loss));
  d.set("aggregate", to_string(aggregate));
  d.set("dataset", dataset);
  d.set("format", to_string(format));
  d.set("test_dataset", test_dataset);
  d.set("num_labels", std::to_string(num_labels));
  d.set("num_features", std::to_string(num_features));
  d.set("subsample", std::to_string(subsample));
  d.set("test_subsample", std::to_string(test_subsample));
  d.set("synthetic", synthetic);
  d.set("n_outliers", std::to_string(n_outliers));
  d.set("noise", noise);
  d.set("noise_p", realText(noise_p));
  d.set("flip_map", flip_map);
  d.set("split", joinReals(split));
  d.set("standardize", standardize ? "true" : "false");
  d.set("k", k.to_string());
  d.set("m", m.to_string());
  d.set("kprime", std::to_string(kprime));
  d.set("C", realText(train.C));
  d.set("eta_outer", realText(train.eta_outer));
  d.set("eta_inner", realText(train.eta_inner));
  d.set("outer_epochs", std::to_string(train.outer_epochs));
  d.set("inner_epochs", std::to_string(train.inner_epochs));
  d.set("warmup_epochs", std::to_string(train.warmup_epochs));
  d.set("batch", std::to_string(train.batch));
  d.set("seed", std::to_string(train.seed));
  d.set("patience", std::to_string(train.patience));
  d.set("refresh_every", std::to_string(train.refresh_every));
  d.set("bias", train.bias ? "true" : "false");
  d.set("keep_best", train.keep_best ? "true" : "false");
  d.set("init_scale", realText(train.init_scale));
  d.set("repeats", std::to_string(repeats));
  std::string ks;
  for (std::size_t i = 0; i < eval_k.size(); ++i) {
    ks += (i ? "," : "") + std::to_string(eval_k[i]);
  }
  d.set("eval_k", ks);
  d.set("output", output);
  return d;
}

void ExperimentConfig::validate() const {
  const bool synth = synthetic != "none";
  if (synth && synthetic != "balanced" && synthetic != "imbalanced") {
    throw ParameterError("synthetic: expected none, balanced or imbalanced");
  }
  if (!synth && dataset.empty()) {
    throw ParameterError("dataset: a data file or synthetic = balanced|imbalanced is required");
  }
  if (synth && task != Task::binary) {
    throw ParameterError("synthetic: the generator produces binary data (task = binary)");
  }
  if (repeats < 1) {
    throw ParameterError("repeats: must be at least 1");
  }
  if (!synth) {
    const std::size_t parts = test_dataset.empty() ? 3 : 2;
    if (split.size() != parts) {
      throw ParameterError("split: expected " + std::to_string(parts) +
                           " fractions (train, validation" +
                           (parts == 3 ? ", test)" : ") with test_dataset"));
    }
  }
  if (eval_k.empty()) {
    throw ParameterError("eval_k: at least one k is required");
  }
  // Loss / task / aggregate combinations.
  switch (task) {
    case Task::binary:
      if (!is_margin_loss(loss)) {
        throw ParameterError("loss: binary tasks use logistic or hinge");
      }
      if (aggregate == Aggregate::tkml || aggregate == Aggregate::tkml_aorr) {
        throw ParameterError("aggregate: " + to_string(aggregate) +
                             " needs a multi-label or multi-class task");
      }
      break;
    case Task::multiclass:
      if (loss != LossKind::softmax && loss != LossKind::tkml) {
        throw ParameterError("loss: multi-class tasks use softmax or tkml");
      }
      break;
    case Task::multilabel:
      if (!is_multilabel_loss(loss)) {
        throw ParameterError("loss: multi-label tasks use tkml or multilabel_logistic");
      }
      break;
  }
  const bool ml_loss = is_multilabel_loss(loss);
  if ((aggregate == Aggregate::tkml || aggregate == Aggregate::tkml_aorr) &&
      loss != LossKind::tkml) {
    throw ParameterError("aggregate: " + to_string(aggregate) + " requires loss = tkml");
  }
  if (ml_loss && aggregate != Aggregate::average && aggregate != Aggregate::tkml &&
      aggregate != Aggregate::tkml_aorr) {
    throw ParameterError("aggregate: " + to_string(aggregate) +
                         " is not defined for loss " + to_string(loss));
  }
  if (loss == LossKind::multilabel_logistic && aggregate != Aggregate::average) {
    throw ParameterError("aggregate: multilabel_logistic only supports average");
  }
  if (noise != "none") {
    const NoiseMode mode = noise_mode_from_string(noise);
    if ((mode == NoiseMode::multilabel_symmetric) != (task == Task::multilabel)) {
      throw ParameterError("noise: " + noise + " does not match task " + to_string(task));
    }
    if (mode == NoiseMode::asymmetric_map && flip_map.empty()) {
      throw ParameterError("flip_map: required for asymmetric_map noise");
    }
    if (!(noise_p >= 0.0 && noise_p <= 1.0)) {
      throw ParameterError("noise_p: must lie in [0, 1]");
    }
  }
  train.validate();
}

// ---------------------------------------------------------------------------
// Data.

const Dataset& cached_dataset(const std::filesystem::path& path, DataFormat format,
                              int num_labels, int num_features) {
  static std::mutex mutex;
  static std::map<std::string, Dataset> cache;
  std::lock_guard<std::mutex> lock(mutex);
  const std::string key = path.string() + "|" + to_string(format) + "|" +
                          std::to_string(num_labels) + "|" + std::to_string(num_features);
  auto it = cache.find(key);
  if (it == cache.end()) {
    LoadOptions opts;
    opts.num_labels = num_labels;
    opts.num_features = num_features;
    it = cache.emplace(key, load_dataset(path, format, opts)).first;
  }
  return it->second;
}

Dataset as_singleton_sets(const Dataset& data) {
  if (data.multilabel()) {
    return data;
  }
  Dataset out = data;
  out.label_sets.clear();
  for (int y : data.labels) {
    out.label_sets.emplace_back(std::vector<int>{y});
  }
  out.labels.clear();
  return out;
}

namespace {

std::vector<int> classLabels(const Dataset& d) {
  if (!d.multilabel()) {
    return d.labels;
  }
  std::vector<int> out;
  for (const LabelSet& Y : d.label_sets) {
    out.push_back(Y.labels().front());
  }
  return out;
}

std::string pct(const std::string& name) { return name + "_pct"; }

}  // namespace

RunRecord run_once(const ExperimentConfig& config, const Dataset& train,
                   const Dataset& validation, const Dataset& test,
                   std::uint64_t seed) {
  RunRecord rec;
  rec.seed = seed;
  const std::size_t n = train.size();
  rec.n_train = n;
  TrainConfig tc = config.train;
  tc.seed = seed;
  tc.kprime = config.kprime;
  const LossSpec loss{config.loss, config.kprime};
  std::size_t k = std::min(config.k.resolve(n), n);
  std::size_t m = config.m.resolve(n);
  switch (config.aggregate) {
    case Aggregate::average:
    case Aggregate::tkml:
      k = n;
      m = 0;
      break;
    case Aggregate::max:
      k = 1;
      m = 0;
      break;
    case Aggregate::median: {
      const RankedRange r = median_range(n);
      k = r.k;
      m = r.m;
      break;
    }
    case Aggregate::atk:
      m = 0;
      break;
    case Aggregate::topk:
      m = k >= 1 ? k - 1 : 0;
      break;
    default:
      break;
  }
  tc.r = RankedRange{m, std::max<std::size_t>(k, m + 1)};
  rec.k = tc.r.k;
  rec.m = tc.r.m;

  switch (config.aggregate) {
    case Aggregate::average:
      rec.report = loss.kind == LossKind::tkml ? dca_train(train, loss, tc)
                                               : sgd_average_train(train, loss, tc);
      break;
    case Aggregate::tkml:
    case Aggregate::max:
    case Aggregate::median:
    case Aggregate::atk:
    case Aggregate::aorr:
    case Aggregate::topk:
      rec.report = dca_train(train, loss, tc);
      break;
    case Aggregate::tkml_aorr:
      rec.report = tkml_aorr_train(train, tc);
      break;
    case Aggregate::auto_aorr: {
      rec.report = auto_train(train, validation, loss, tc);
      const SampleLosses s = evaluate_losses(rec.report.model, train, loss, false);
      const double lambda_hat = rec.report.lambdas.back().lambda_hat;
      rec.metrics["estimated_noise"] =
          static_cast<double>(estimate_noise_count(to_value_set(s.values), lambda_hat));
      rec.metrics["warmup_epochs"] = rec.report.warmup_epochs_run;
      break;
    }
  }
  rec.metrics["true_flips"] = static_cast<double>(train.flip_count);

  const Eigen::MatrixXd scores = predict_scores_batch(rec.report.model, test.features);
  switch (config.task) {
    case Task::binary:
      rec.metrics[pct("test_error")] = 100.0 * error_rate(scores, test.labels);
      break;
    case Task::multiclass: {
      const std::vector<int> truth = classLabels(test);
      rec.metrics[pct("test_accuracy")] = 100.0 * (1.0 - error_rate(scores, truth));
      for (int kk : config.eval_k) {
        rec.metrics[pct("top" + std::to_string(kk) + "_accuracy")] =
            100.0 * topk_accuracy(scores, truth, kk);
      }
      break;
    }
    case Task::multilabel:
      for (int kk : config.eval_k) {
        rec.metrics[pct("top" + std::to_string(kk) + "_ml_accuracy")] =
            100.0 * topk_multilabel_accuracy(scores, test.label_sets, kk);
      }
      rec.metrics[pct("average_precision")] =
          100.0 * average_precision(scores, test.label_sets);
      break;
  }
  return rec;
}

RunData prepare_run_data(const ExperimentConfig& config, int r) {
  const bool synth = config.synthetic != "none";
  const std::uint64_t seed = config.train.seed + static_cast<std::uint64_t>(r);
  Dataset train;
  Dataset validation;
  Dataset test;
  if (synth) {
    const bool balanced = config.synthetic == "balanced";
    train = gen_synthetic({balanced, config.n_outliers, seed});
    // Clean evaluation sets from independent draws of the generator.
    validation = gen_synthetic({balanced, 0, seed + 0x5bd1e995ULL});
    test = gen_synthetic({balanced, 0, seed + 0x9e3779b9ULL});
  } else {
    const Dataset& full = cached_dataset(config.dataset, config.format, config.num_labels,
                                         config.num_features);
    std::mt19937_64 pick_rng(seed ^ 0xa0761d6478bd642fULL);
    Dataset pool;
    if (config.subsample > 0 && config.subsample < full.size()) {
      std::vector<std::size_t> idx(full.size());
      std::iota(idx.begin(), idx.end(), std::size_t{0});
      std::shuffle(idx.begin(), idx.end(), pick_rng);
      idx.resize(config.subsample);
      std::sort(idx.begin(), idx.end());
      pool = full.subset(idx);
    } else {
      pool = full;
    }
    std::vector<Dataset> parts = split_dataset(pool, config.split, seed);
    train = std::move(parts[0]);
    validation = std::move(parts[1]);
    if (config.test_dataset.empty()) {
      test = std::move(parts[2]);
    } else {
      const Dataset& fixed =
          cached_dataset(config.test_dataset, config.format, pool.l, pool.dim());
      if (config.test_subsample > 0 && config.test_subsample < fixed.size()) {
        std::vector<std::size_t> idx(config.test_subsample);
        std::iota(idx.begin(), idx.end(), std::size_t{0});
        test = fixed.subset(idx);
      } else {
        test = fixed;
      }
    }
  }
  if (test.size() == 0) {
    throw ParameterError("split: the test part is empty");
  }
  if (config.standardize) {
    std::vector<Dataset*> others{&test};
    if (validation.size() > 0) {
      others.push_back(&validation);
    }
    standardize(train, others);
  }
  if (config.noise != "none") {
    NoiseSpec spec;
    spec.mode = noise_mode_from_string(config.noise);
    spec.p = config.noise_p;
    spec.flip_map = parse_flip_map(config.flip_map);
    spec.seed = seed;
    train = inject_noise(train, spec);
  }
  if (config.task == Task::multiclass && config.loss == LossKind::tkml) {
    train = as_singleton_sets(train);
    validation = as_singleton_sets(validation);
    test = as_singleton_sets(test);
  }
  return RunData{std::move(train), std::move(validation), std::move(test), seed};
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
  config.validate();
  const auto start = std::chrono::steady_clock::now();
  ExperimentResult result;
  result.config = config;
  for (int r = 0; r < config.repeats; ++r) {
    RunData data = prepare_run_data(config, r);
    RunRecord rec = run_once(config, data.train, data.validation, data.test, data.seed);
    rec.run = r;
    result.runs.push_back(std::move(rec));
  }
  // Aggregates over runs.
  for (const auto& [name, v0] : result.runs.front().metrics) {
    (void)v0;
    std::vector<double> vals;
    for (const RunRecord& rec : result.runs) {
      vals.push_back(rec.metrics.at(name));
    }
    MetricSummary s;
    s.mean = std::accumulate(vals.begin(), vals.end(), 0.0) / static_cast<double>(vals.size());
    if (vals.size() > 1) {
      double sq = 0.0;
      for (double v : vals) {
        sq += (v - s.mean) * (v - s.mean);
      }
      s.std = std::sqrt(sq / static_cast<double>(vals.size() - 1));
    }
    result.summary[name] = s;
  }
  result.wall_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                       std::chrono::steady_clock::now() - start)
                       .count();
  return result;
}

// ---------------------------------------------------------------------------
// Reports.

namespace {

Json metricsSection(const ExperimentResult& result) {
  Json cfg = Json::object();
  const KeyValueDoc doc = result.config.to_doc();
  for (const std::string& key : doc.keys()) {
    cfg[key] = doc.get(key);
  }
  Json runs = Json::array();
  for (const RunRecord& rec : result.runs) {
    Json r;
    r["run"] = rec.run;
    r["seed"] = rec.seed;
    r["n_train"] = rec.n_train;
    r["k"] = rec.k;
    r["m"] = rec.m;
    Json metrics = Json::object();
    for (const auto& [name, v] : rec.metrics) {
      metrics[name] = v;
    }
    r["metrics"] = metrics;
    r["initial_objective"] = rec.report.initial_objective;
    r["objective_trace"] = rec.report.objective_trace;
    Json lambdas = Json::array();
    for (const LambdaPair& lp : rec.report.lambdas) {
      Json pair = Json::array();
      pair.push_back(std::isfinite(lp.lambda) ? Json(lp.lambda) : Json(nullptr));
      pair.push_back(std::isfinite(lp.lambda_hat) ? Json(lp.lambda_hat) : Json(nullptr));
      lambdas.push_back(pair);
    }
    r["lambda_trace"] = lambdas;
    runs.push_back(r);
  }
  Json summary = Json::object();
  for (const auto& [name, s] : result.summary) {
    summary[name] = {{"mean", s.mean}, {"std", s.std}};
  }
  Json out;
  out["config"] = cfg;
  out["runs"] = runs;
  out["summary"] = summary;
  return out;
}

}  // namespace

std::string metrics_json(const ExperimentResult& result) {
  return metricsSection(result).dump(2);
}

std::string report_json(const ExperimentResult& result) {
  Json out = metricsSection(result);
  Json timing;
  timing["total_wall_ms"] = result.wall_ms;
  Json per_run = Json::array();
  for (const RunRecord& rec : result.runs) {
    per_run.push_back(rec.report.wall_ms);
  }
  timing["run_wall_ms"] = per_run;
  out["timing"] = timing;
  return out.dump(2);
}

std::string report_csv(const ExperimentResult& result) {
  std::ostringstream out;
  out << std::setprecision(10);
  std::vector<std::string> names;
  for (const auto& [name, s] : result.summary) {
    (void)s;
    names.push_back(name);
  }
  out << "run,seed,n_train,k,m";
  for (const std::string& name : names) {
    out << ',' << name;
  }
  out << '\n';
  for (const RunRecord& rec : result.runs) {
    out << rec.run << ',' << rec.seed << ',' << rec.n_train << ',' << rec.k << ','
        << rec.m;
    for (const std::string& name : names) {
      out << ',' << rec.metrics.at(name);
    }
    out << '\n';
  }
  out << "mean,,,,";
  for (const std::string& name : names) {
    out << ',' << result.summary.at(name).mean;
  }
  out << "\nstd,,,,";
  for (const std::string& name : names) {
    out << ',' << result.summary.at(name).std;
  }
  out << '\n';
  return out.str();
}

void write_report(const ExperimentResult& result, const std::filesystem::path& base) {
  if (base.has_parent_path()) {
    std::filesystem::create_directories(base.parent_path());
  }
  std::ofstream json(base.string() + ".json");
  std::ofstream csv(base.string() + ".csv");
  if (!json || !csv) {
    throw ParameterError("cannot write report files at '" + base.string() + "'");
  }
  json << report_json(result) << '\n';
  csv << report_csv(result);
}

}  // namespace sorr
