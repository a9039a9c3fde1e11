#include "sorr/model.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include "sorr/errors.hpp"

namespace sorr {

LinearModel::LinearModel(int l, int d, bool with_bias)
    : weights(Eigen::MatrixXd::Zero(l, d)) {
  if (l < 1 || d < 1) {
    throw ShapeError("model needs l >= 1 and d >= 1");
  }
  if (with_bias) {
    bias = Eigen::VectorXd::Zero(l);
  }
}

void LinearModel::validate() const {
  if (weights.rows() < 1 || weights.cols() < 1) {
    throw ShapeError("model needs l >= 1 and d >= 1");
  }
  if (!weights.allFinite()) {
    throw ParameterError("model weights must be finite");
  }
  if (bias) {
    if (bias->size() != weights.rows()) {
      throw ShapeError("bias length differs from the label count");
    }
    if (!bias->allFinite()) {
      throw ParameterError("model bias must be finite");
    }
  }
}

bool LinearModel::operator==(const LinearModel& other) const {
  if (weights.rows() != other.weights.rows() ||
      weights.cols() != other.weights.cols() || weights != other.weights) {
    return false;
  }
  if (bias.has_value() != other.bias.has_value()) {
    return false;
  }
  if (bias && *bias != *other.bias) {
    return false;
  }
  return meta.loss_kind == other.meta.loss_kind && meta.k == other.meta.k &&
         meta.m == other.meta.m && meta.kprime == other.meta.kprime;
}

ModelGradient ModelGradient::zeros_like(const LinearModel& model) {
  ModelGradient g;
  g.weights = Eigen::MatrixXd::Zero(model.weights.rows(), model.weights.cols());
  g.bias = Eigen::VectorXd::Zero(model.has_bias() ? model.weights.rows() : 0);
  return g;
}

Eigen::VectorXd predict_scores(const LinearModel& model,
                               const Eigen::Ref<const Eigen::VectorXd>& x) {
  if (x.size() != model.weights.cols()) {
    throw ShapeError("feature vector has length " + std::to_string(x.size()) +
                     ", model expects " + std::to_string(model.weights.cols()));
  }
  Eigen::VectorXd out = model.weights * x;
  if (model.bias) {
    out += *model.bias;
  }
  return out;
}

Eigen::MatrixXd predict_scores_batch(
    const LinearModel& model, const Eigen::Ref<const Eigen::MatrixXd>& X) {
  if (X.cols() != model.weights.cols()) {
    throw ShapeError("feature matrix has " + std::to_string(X.cols()) +
                     " columns, model expects " +
                     std::to_string(model.weights.cols()));
  }
  Eigen::MatrixXd out = X * model.weights.transpose();
  if (model.bias) {
    out.rowwise() += model.bias->transpose();
  }
  return out;
}

double l2_penalty(const LinearModel& model, double C) {
  if (!(C > 0.0)) {
    throw ParameterError("C must be positive");
  }
  return model.weights.squaredNorm() / (2.0 * C);
}

RegularizedValue regularized_objective_grad(const LinearModel& model,
                                            double base_value,
                                            const ModelGradient& base_grad,
                                            double C) {
  if (base_grad.weights.rows() != model.weights.rows() ||
      base_grad.weights.cols() != model.weights.cols()) {
    throw ShapeError("gradient shape differs from the model");
  }
  RegularizedValue out;
  out.value = base_value + l2_penalty(model, C);
  out.grad.weights = base_grad.weights + model.weights / C;
  out.grad.bias = base_grad.bias;
  return out;
}

// ---------------------------------------------------------------------------
// Serialization.

namespace {

std::string formatReal(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::vector<double> parseReals(const std::string& text, std::size_t line) {
  std::vector<double> out;
  std::istringstream in(text);
  std::string tok;
  while (in >> tok) {
    char* end = nullptr;
    const double v = std::strtod(tok.c_str(), &end);
    if (end == tok.c_str() || *end != '\0') {
      throw ParseError("'" + tok + "' is not a number", line);
    }
    out.push_back(v);
  }
  return out;
}

long parseInt(const std::string& text, std::size_t line) {
  char* end = nullptr;
  const long v = std::strtol(text.c_str(), &end, 10);
  if (text.empty() || *end != '\0') {
    throw ParseError("'" + text + "' is not an integer", line);
  }
  return v;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) {
    return "";
  }
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

void write_model(const LinearModel& model, std::ostream& out) {
  model.validate();
  out << "format_version = " << kModelFormatVersion << '\n';
  out << "l = " << model.weights.rows() << '\n';
  out << "d = " << model.weights.cols() << '\n';
  out << "loss_kind = " << model.meta.loss_kind << '\n';
  out << "k = " << model.meta.k << '\n';
  out << "m = " << model.meta.m << '\n';
  out << "kprime = " << model.meta.kprime << '\n';
  out << "weights =";
  for (Eigen::Index r = 0; r < model.weights.rows(); ++r) {
    for (Eigen::Index c = 0; c < model.weights.cols(); ++c) {
      out << ' ' << formatReal(model.weights(r, c));
    }
  }
  out << '\n';
  out << "bias =";
  if (model.bias) {
    for (Eigen::Index r = 0; r < model.bias->size(); ++r) {
      out << ' ' << formatReal((*model.bias)[r]);
    }
  } else {
    out << " none";
  }
  out << '\n';
}

LinearModel read_model(std::istream& in) {
  std::map<std::string, std::pair<std::string, std::size_t>> fields;
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const std::string text = trim(raw);
    if (text.empty() || text[0] == '#') {
      continue;
    }
    const auto eq = text.find('=');
    if (eq == std::string::npos) {
      throw ParseError("expected 'key = value'", line);
    }
    const std::string key = trim(text.substr(0, eq));
    if (fields.count(key) != 0) {
      throw ParseError("duplicate key '" + key + "'", line);
    }
    fields[key] = {trim(text.substr(eq + 1)), line};
  }
  auto need = [&](const std::string& key) -> const std::pair<std::string, std::size_t>& {
    auto it = fields.find(key);
    if (it == fields.end()) {
      throw ParseError("missing key '" + key + "'", line);
    }
    return it->second;
  };
  const auto& ver = need("format_version");
  if (parseInt(ver.first, ver.second) != kModelFormatVersion) {
    throw ParseError("unsupported format_version " + ver.first, ver.second);
  }
  const auto& lf = need("l");
  const auto& df = need("d");
  const long l = parseInt(lf.first, lf.second);
  const long d = parseInt(df.first, df.second);
  if (l < 1) {
    throw ParseError("l must be >= 1", lf.second);
  }
  if (d < 1) {
    throw ParseError("d must be >= 1", df.second);
  }
  LinearModel model(static_cast<int>(l), static_cast<int>(d), false);
  if (auto it = fields.find("loss_kind"); it != fields.end()) {
    model.meta.loss_kind = it->second.first;
  }
  if (auto it = fields.find("k"); it != fields.end()) {
    model.meta.k = static_cast<std::size_t>(parseInt(it->second.first, it->second.second));
  }
  if (auto it = fields.find("m"); it != fields.end()) {
    model.meta.m = static_cast<std::size_t>(parseInt(it->second.first, it->second.second));
  }
  if (auto it = fields.find("kprime"); it != fields.end()) {
    model.meta.kprime = static_cast<int>(parseInt(it->second.first, it->second.second));
  }
  const auto& wf = need("weights");
  const std::vector<double> w = parseReals(wf.first, wf.second);
  if (static_cast<long>(w.size()) != l * d) {
    throw ParseError("weights hold " + std::to_string(w.size()) +
                         " values, expected l*d = " + std::to_string(l * d),
                     wf.second);
  }
  for (long r = 0; r < l; ++r) {
    for (long c = 0; c < d; ++c) {
      model.weights(r, c) = w[static_cast<std::size_t>(r * d + c)];
    }
  }
  if (auto it = fields.find("bias"); it != fields.end() && it->second.first != "none") {
    const std::vector<double> b = parseReals(it->second.first, it->second.second);
    if (static_cast<long>(b.size()) != l) {
      throw ParseError("bias holds " + std::to_string(b.size()) +
                           " values, expected l = " + std::to_string(l),
                       it->second.second);
    }
    model.bias = Eigen::Map<const Eigen::VectorXd>(b.data(), l);
  }
  model.validate();
  return model;
}

void save_model(const LinearModel& model, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) {
    throw ParameterError("cannot open '" + path.string() + "' for writing");
  }
  write_model(model, out);
}

LinearModel load_model(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ParameterError("cannot open '" + path.string() + "'");
  }
  return read_model(in);
}

}  // namespace sorr
