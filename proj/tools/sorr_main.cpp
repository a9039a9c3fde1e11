// Command-line front end: train / repro / sweep / gen-synth / noise / eval.
// Exit codes: 0 ok, 1 usage or configuration error, 2 data error, 3 numeric failure.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "sorr/data_ops.hpp"
#include "sorr/dataset.hpp"
#include "sorr/errors.hpp"
#include "sorr/experiment.hpp"
#include "sorr/metrics.hpp"
#include "sorr/model.hpp"
#include "sorr/objective.hpp"
#include "sorr/repro.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitNumeric = 3;

void writeText(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) {
    fs::create_directories(path.parent_path());
  }
  std::ofstream out(path);
  if (!out) {
    throw sorr::DataError("cannot write '" + path.string() + "'");
  }
  out << text;
}

void printSummary(const sorr::ExperimentResult& result) {
  std::cout << result.config.name << " (" << result.runs.size() << " runs)\n";
  for (const auto& [name, s] : result.summary) {
    std::cout << "  " << std::left << std::setw(28) << name << std::right << std::fixed
              << std::setprecision(4) << s.mean << "  +- " << s.std << '\n';
  }
  std::cout.unsetf(std::ios::fixed);
}

// "a:b" or "a:b:step" -> values.
std::vector<double> parseRange(const std::string& text) {
  std::vector<double> parts;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ':')) {
    parts.push_back(std::stod(tok));
  }
  if (parts.size() < 2 || parts.size() > 3) {
    throw sorr::UsageError("--range expects a:b or a:b:step, got '" + text + "'");
  }
  const double step = parts.size() == 3 ? parts[2] : 1.0;
  if (!(step > 0.0) || parts[1] < parts[0]) {
    throw sorr::UsageError("--range needs a <= b and a positive step");
  }
  std::vector<double> values;
  for (double v = parts[0]; v <= parts[1] + 1e-9 * step; v += step) {
    values.push_back(v);
  }
  return values;
}

// Problems in the config file itself are usage errors, not data errors.
template <typename F>
auto loadConfig(F&& load) {
  try {
    return load();
  } catch (const sorr::DataError& e) {
    throw sorr::UsageError(std::string("config: ") + e.what());
  }
}

std::string numberText(double v) {
  std::ostringstream out;
  out << std::setprecision(12) << v;
  return out.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ranked-range aggregate losses: training, evaluation and table reproduction"};
  app.require_subcommand(1);

  // train
  auto* train = app.add_subcommand("train", "run a configured experiment");
  std::string config_path;
  std::uint64_t seed_override = 0;
  std::string out_dir = ".";
  train->add_option("--config", config_path, "key = value experiment file")->required();
  auto* seed_opt = train->add_option("--seed", seed_override, "base seed (overrides the file)");
  train->add_option("--out", out_dir, "directory for <name>.json/.csv/.model");

  // repro
  auto* repro = app.add_subcommand("repro", "reproduce a published table or figure");
  std::string repro_name;
  sorr::ReproOptions ropt;
  std::string data_dir = ropt.data_dir.string();
  std::string repro_out = ropt.out_dir.string();
  repro->add_option("name", repro_name, "experiment id")->required();
  repro->add_option("--data-dir", data_dir, "directory holding the bundled data files");
  repro->add_option("--out", repro_out, "output directory");
  repro->add_option("--subsample", ropt.subsample, "MNIST training points at desk scale");
  repro->add_flag("--full", ropt.full, "published scale (whole bundled files, paper epochs)");
  repro->add_option("--repeats", ropt.repeats, "override the number of repeats");
  repro->add_option("--seed", ropt.seed, "base seed");

  // sweep
  auto* sweep = app.add_subcommand("sweep", "grid over one config key");
  std::string sweep_config;
  std::string sweep_param;
  std::string sweep_range;
  std::string sweep_out = "sweep.csv";
  sweep->add_option("--config", sweep_config, "base experiment file")->required();
  sweep->add_option("--param", sweep_param, "config key to vary (e.g. m)")->required();
  sweep->add_option("--range", sweep_range, "a:b[:step]")->required();
  sweep->add_option("--out", sweep_out, "CSV with one row per value");

  // gen-synth
  auto* gen = app.add_subcommand("gen-synth", "write the 2-D synthetic set as CSV");
  bool imbalanced = false;
  int outliers = 0;
  std::uint64_t gen_seed = 0;
  std::string gen_out;
  gen->add_flag("--imbalanced", imbalanced, "9:1 class ratio instead of balanced");
  gen->add_option("--outliers", outliers, "planted outliers");
  gen->add_option("--seed", gen_seed, "seed");
  gen->add_option("--out", gen_out, "CSV path")->required();

  // noise
  auto* noise = app.add_subcommand("noise", "corrupt the labels of a data file");
  std::string noise_in;
  std::string noise_format = "csv";
  std::string noise_mode = "symmetric";
  double noise_p = 0.2;
  std::string noise_map;
  std::uint64_t noise_seed = 0;
  int noise_labels = 0;
  std::string noise_out;
  noise->add_option("--data", noise_in, "input file")->required();
  noise->add_option("--format", noise_format, "csv or libsvm");
  noise->add_option("--num-labels", noise_labels, "label count (0 = infer)");
  noise->add_option("--mode", noise_mode, "symmetric, asymmetric_map or multilabel_symmetric");
  noise->add_option("--p", noise_p, "corruption probability");
  noise->add_option("--flip-map", noise_map, "1-based pairs, e.g. 3:8,4:9");
  noise->add_option("--seed", noise_seed, "seed");
  noise->add_option("--out", noise_out, "CSV path")->required();

  // eval
  auto* eval = app.add_subcommand("eval", "score a saved model on a data file");
  std::string eval_model;
  std::string eval_data;
  std::string eval_format = "csv";
  std::vector<int> eval_k{1};
  eval->add_option("--model", eval_model, "model file written by train")->required();
  eval->add_option("--data", eval_data, "data file")->required();
  eval->add_option("--format", eval_format, "csv or libsvm");
  eval->add_option("--k", eval_k, "top-k values (multi-class / multi-label)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*train) {
      sorr::ExperimentConfig config =
          loadConfig([&] { return sorr::ExperimentConfig::load(config_path); });
      if (*seed_opt) {
        config.train.seed = seed_override;
      }
      const sorr::ExperimentResult result = sorr::run_experiment(config);
      const fs::path base = fs::path(out_dir) / config.output;
      sorr::write_report(result, base);
      sorr::save_model(result.runs.back().report.model, base.string() + ".model");
      printSummary(result);
      std::cout << "report: " << base.string() << ".json\n";
    } else if (*repro) {
      ropt.data_dir = data_dir;
      ropt.out_dir = repro_out;
      const sorr::ReproReport report = sorr::run_repro(repro_name, ropt);
      sorr::write_repro(report, ropt.out_dir);
      std::cout << sorr::repro_csv(report);
      for (const std::string& note : report.notes) {
        std::cout << "note: " << note << '\n';
      }
    } else if (*sweep) {
      sorr::KeyValueDoc doc = loadConfig([&] { return sorr::KeyValueDoc::load(sweep_config); });
      std::ostringstream csv;
      bool header = false;
      for (double v : parseRange(sweep_range)) {
        doc.set(sweep_param, numberText(v));
        const sorr::ExperimentConfig config =
            loadConfig([&] { return sorr::ExperimentConfig::from_doc(doc); });
        const sorr::ExperimentResult result = sorr::run_experiment(config);
        if (!header) {
          csv << sweep_param;
          for (const auto& [name, s] : result.summary) {
            (void)s;
            csv << ',' << name << "_mean," << name << "_std";
          }
          csv << '\n';
          header = true;
        }
        csv << numberText(v);
        for (const auto& [name, s] : result.summary) {
          (void)name;
          csv << ',' << s.mean << ',' << s.std;
        }
        csv << '\n';
        std::cerr << sweep_param << " = " << numberText(v) << " done\n";
      }
      writeText(sweep_out, csv.str());
      std::cout << csv.str();
    } else if (*gen) {
      const sorr::Dataset data = sorr::gen_synthetic({!imbalanced, outliers, gen_seed});
      writeText(gen_out, sorr::to_csv(data));
    } else if (*noise) {
      sorr::LoadOptions lopt;
      lopt.num_labels = noise_labels;
      const sorr::Dataset data =
          sorr::load_dataset(noise_in, sorr::data_format_from_string(noise_format), lopt);
      sorr::NoiseSpec spec;
      spec.mode = sorr::noise_mode_from_string(noise_mode);
      spec.p = noise_p;
      spec.flip_map = sorr::parse_flip_map(noise_map);
      spec.seed = noise_seed;
      const sorr::Dataset noisy = sorr::inject_noise(data, spec);
      writeText(noise_out, sorr::to_csv(noisy));
      std::cout << "flipped " << noisy.flip_count << " of " << noisy.size() << " samples\n";
    } else if (*eval) {
      const sorr::LinearModel model = sorr::load_model(eval_model);
      sorr::LoadOptions lopt;
      lopt.num_labels = model.weights.rows() == 1 ? 2 : static_cast<int>(model.weights.rows());
      const sorr::Dataset data =
          sorr::load_dataset(eval_data, sorr::data_format_from_string(eval_format), lopt);
      const Eigen::MatrixXd scores = sorr::predict_scores_batch(model, data.features);
      std::cout << std::fixed << std::setprecision(4);
      if (data.multilabel()) {
        for (int k : eval_k) {
          std::cout << "top" << k << "_ml_accuracy_pct "
                    << 100.0 * sorr::topk_multilabel_accuracy(scores, data.label_sets, k) << '\n';
        }
        std::cout << "average_precision_pct "
                  << 100.0 * sorr::average_precision(scores, data.label_sets) << '\n';
      } else if (scores.cols() == 1) {
        std::cout << "error_pct " << 100.0 * sorr::error_rate(scores, data.labels) << '\n';
      } else {
        for (int k : eval_k) {
          std::cout << "top" << k << "_accuracy_pct "
                    << 100.0 * sorr::topk_accuracy(scores, data.labels, k) << '\n';
        }
      }
    }
  } catch (const sorr::NumericError& e) {
    std::cerr << "numeric failure: " << e.what() << '\n';
    return kExitNumeric;
  } catch (const sorr::DataError& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return kExitData;
  } catch (const sorr::ShapeError& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return kExitData;
  } catch (const std::invalid_argument& e) {
    // UsageError, ParameterError and config validation.
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitData;
  }
  return kExitOk;
}
