#include <zlib.h>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <iomanip>
#include <set>
#include <sstream>

#include "sorr/dataset.hpp"
#include "sorr/errors.hpp"

namespace sorr {

namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) {
    ++b;
  }
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) {
    --e;
  }
  return std::string(s.substr(b, e - b));
}

std::vector<std::string> splitOn(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos == std::string_view::npos
                                           ? std::string_view::npos
                                           : pos - start)));
    if (pos == std::string_view::npos) {
      break;
    }
    start = pos + 1;
  }
  return out;
}

double parseReal(const std::string& tok, std::size_t line) {
  if (tok.empty()) {
    throw ParseError("empty numeric field", line);
  }
  char* end = nullptr;
  const double v = std::strtod(tok.c_str(), &end);
  if (*end != '\0' || !std::isfinite(v)) {
    throw ParseError("'" + tok + "' is not a finite number", line);
  }
  return v;
}

long parseLabel(const std::string& tok, std::size_t line) {
  long v = 0;
  const char* first = tok.data();
  const char* last = tok.data() + tok.size();
  if (!tok.empty() && tok[0] == '+') {
    ++first;
  }
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || first == last) {
    // Accept integral reals such as "1.0".
    char* end = nullptr;
    const double d = std::strtod(tok.c_str(), &end);
    if (tok.empty() || *end != '\0' || d != std::floor(d)) {
      throw ParseError("'" + tok + "' is not an integer label", line);
    }
    v = static_cast<long>(d);
  }
  return v;
}

// Maps raw single labels to 0-based classes and returns l.
int encodeSingleLabels(const std::vector<long>& raw, std::vector<int>& out,
                       const LoadOptions& options) {
  std::set<long> distinct(raw.begin(), raw.end());
  const bool pm1 = *distinct.begin() == -1 &&
                   std::all_of(distinct.begin(), distinct.end(),
                               [](long v) { return v == -1 || v == 1; });
  const bool zero_one =
      std::all_of(distinct.begin(), distinct.end(),
                  [](long v) { return v == 0 || v == 1; }) &&
      *distinct.begin() == 0;
  out.resize(raw.size());
  if (pm1 || zero_one) {
    if (options.num_labels != 0 && options.num_labels != 2) {
      throw ParameterError("binary labels found but num_labels=" +
                           std::to_string(options.num_labels));
    }
    for (std::size_t i = 0; i < raw.size(); ++i) {
      out[i] = raw[i] == 1 ? 1 : 0;
    }
    return 2;
  }
  if (*distinct.begin() < 1) {
    throw ParseError("class labels must be 1-based (found " +
                         std::to_string(*distinct.begin()) + ")",
                     0);
  }
  const long top = *distinct.rbegin();
  const int l = options.num_labels > 0 ? options.num_labels : static_cast<int>(top);
  if (top > l) {
    throw RangeError("label " + std::to_string(top) + " exceeds num_labels=" +
                     std::to_string(l));
  }
  for (std::size_t i = 0; i < raw.size(); ++i) {
    out[i] = static_cast<int>(raw[i] - 1);
  }
  return std::max(l, 2);
}

int encodeLabelSets(const std::vector<std::vector<long>>& raw,
                    std::vector<LabelSet>& out, const LoadOptions& options) {
  long top = 0;
  for (const auto& row : raw) {
    for (long v : row) {
      if (v < 1) {
        throw ParseError("multi-label entries must be 1-based", 0);
      }
      top = std::max(top, v);
    }
  }
  const int l = options.num_labels > 0 ? options.num_labels : static_cast<int>(top);
  if (top > l) {
    throw RangeError("label " + std::to_string(top) + " exceeds num_labels=" +
                     std::to_string(l));
  }
  out.clear();
  for (const auto& row : raw) {
    std::vector<int> s;
    for (long v : row) {
      s.push_back(static_cast<int>(v - 1));
    }
    out.emplace_back(std::move(s));
  }
  return l;
}


}  // namespace

DataFormat data_format_from_string(const std::string& name) {
  if (name == "csv") {
    return DataFormat::csv;
  }
  if (name == "libsvm") {
    return DataFormat::libsvm;
  }
  throw ParameterError("unknown data format '" + name + "' (csv, libsvm)");
}

std::string to_string(DataFormat format) {
  return format == DataFormat::csv ? "csv" : "libsvm";
}

std::string read_text_file(const std::filesystem::path& path) {
  if (!std::filesystem::exists(path)) {
    throw DataError("data file '" + path.string() + "' does not exist");
  }
  // gzread passes uncompressed files through unchanged.
  gzFile f = gzopen(path.c_str(), "rb");
  if (f == nullptr) {
    throw DataError("cannot open '" + path.string() + "'");
  }
  std::string text;
  std::vector<char> buf(1 << 16);
  int got = 0;
  while ((got = gzread(f, buf.data(), static_cast<unsigned>(buf.size()))) > 0) {
    text.append(buf.data(), static_cast<std::size_t>(got));
  }
  const bool failed = got < 0;
  gzclose(f);
  if (failed) {
    throw ParseError("failed to decompress '" + path.string() + "'", 0);
  }
  return text;
}

Dataset parse_csv(const std::string& text, const LoadOptions& options) {
  std::istringstream in(text);
  std::string raw;
  std::size_t line = 0;
  std::vector<std::string> header;
  while (std::getline(in, raw)) {
    ++line;
    if (!trim(raw).empty()) {
      header = splitOn(trim(raw), ',');
      break;
    }
  }
  if (header.empty()) {
    throw DataError("CSV input is empty");
  }
  int label_col = -1;
  bool multi = false;
  for (std::size_t c = 0; c < header.size(); ++c) {
    if (header[c] == "label" || header[c] == "labels") {
      if (label_col >= 0) {
        throw ParseError("header names more than one label column", line);
      }
      label_col = static_cast<int>(c);
      multi = header[c] == "labels";
    }
  }
  if (label_col < 0) {
    throw ParseError("header lacks a 'label' or 'labels' column", line);
  }
  const std::size_t width = header.size();
  const std::size_t d = width - 1;
  if (d == 0) {
    throw ParseError("CSV has no feature columns", line);
  }
  std::vector<double> values;
  std::vector<long> single;
  std::vector<std::vector<long>> sets;
  while (std::getline(in, raw)) {
    ++line;
    const std::string row = trim(raw);
    if (row.empty()) {
      continue;
    }
    const std::vector<std::string> cells = splitOn(row, ',');
    if (cells.size() != width) {
      throw ParseError("expected " + std::to_string(width) + " fields, found " +
                           std::to_string(cells.size()),
                       line);
    }
    for (std::size_t c = 0; c < width; ++c) {
      if (static_cast<int>(c) == label_col) {
        if (multi) {
          std::vector<long> s;
          for (const std::string& tok : splitOn(cells[c], ';')) {
            s.push_back(parseLabel(tok, line));
          }
          sets.push_back(std::move(s));
        } else {
          single.push_back(parseLabel(cells[c], line));
        }
      } else {
        values.push_back(parseReal(cells[c], line));
      }
    }
  }
  const std::size_t n = multi ? sets.size() : single.size();
  if (n == 0) {
    throw DataError("CSV input holds no data rows");
  }
  Dataset ds;
  ds.features.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(d));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      ds.features(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          values[i * d + j];
    }
  }
  ds.l = multi ? encodeLabelSets(sets, ds.label_sets, options)
               : encodeSingleLabels(single, ds.labels, options);
  ds.validate();
  return ds;
}

Dataset parse_libsvm(const std::string& text, const LoadOptions& options) {
  std::istringstream in(text);
  std::string raw;
  std::size_t line = 0;
  std::vector<std::vector<std::pair<int, double>>> rows;
  std::vector<long> single;
  std::vector<std::vector<long>> sets;
  bool multi = false;
  int max_index = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::string row = trim(raw);
    if (const auto hash = row.find('#'); hash != std::string::npos) {
      row = trim(row.substr(0, hash));
    }
    if (row.empty()) {
      continue;
    }
    std::istringstream tokens(row);
    std::string head;
    tokens >> head;
    if (head.find(':') != std::string::npos) {
      throw ParseError("line starts with a feature, expected a label", line);
    }
    std::vector<long> labs;
    for (const std::string& tok : splitOn(head, ',')) {
      labs.push_back(parseLabel(tok, line));
    }
    if (labs.size() > 1) {
      multi = true;
    }
    sets.push_back(labs);
    single.push_back(labs.front());
    std::vector<std::pair<int, double>> entries;
    std::string tok;
    int last = 0;
    while (tokens >> tok) {
      const auto colon = tok.find(':');
      if (colon == std::string::npos) {
        throw ParseError("feature '" + tok + "' lacks ':'", line);
      }
      const long idx = parseLabel(tok.substr(0, colon), line);
      if (idx < 1) {
        throw ParseError("feature indices are 1-based", line);
      }
      if (idx <= last) {
        throw ParseError("feature indices must increase", line);
      }
      last = static_cast<int>(idx);
      entries.emplace_back(static_cast<int>(idx), parseReal(tok.substr(colon + 1), line));
    }
    max_index = std::max(max_index, last);
    rows.push_back(std::move(entries));
  }
  if (rows.empty()) {
    throw DataError("LIBSVM input holds no data rows");
  }
  int d = max_index;
  if (options.num_features > 0) {
    if (options.num_features < max_index) {
      throw ShapeError("feature index " + std::to_string(max_index) +
                       " exceeds num_features=" +
                       std::to_string(options.num_features));
    }
    d = options.num_features;
  }
  if (d < 1) {
    throw ParseError("LIBSVM input has no features", line);
  }
  Dataset ds;
  ds.features = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(rows.size()), d);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (const auto& [idx, v] : rows[i]) {
      ds.features(static_cast<Eigen::Index>(i), idx - 1) = v;
    }
  }
  ds.l = multi ? encodeLabelSets(sets, ds.label_sets, options)
               : encodeSingleLabels(single, ds.labels, options);
  ds.validate();
  return ds;
}

std::string to_csv(const Dataset& data) {
  data.validate();
  std::ostringstream out;
  out << std::setprecision(17);
  out << (data.multilabel() ? "labels" : "label");
  for (int j = 0; j < data.dim(); ++j) {
    out << ",x" << j + 1;
  }
  out << '\n';
  for (std::size_t i = 0; i < data.size(); ++i) {
    if (data.multilabel()) {
      const std::vector<int>& ls = data.label_sets[i].labels();
      for (std::size_t t = 0; t < ls.size(); ++t) {
        out << (t ? ";" : "") << ls[t] + 1;
      }
    } else if (data.binary()) {
      out << (data.labels[i] == 1 ? "1" : "-1");
    } else {
      out << data.labels[i] + 1;
    }
    for (int j = 0; j < data.dim(); ++j) {
      out << ',' << data.features(static_cast<Eigen::Index>(i), j);
    }
    out << '\n';
  }
  return out.str();
}

Dataset load_dataset(const std::filesystem::path& path, DataFormat format,
                     const LoadOptions& options) {
  const std::string text = read_text_file(path);
  Dataset ds = format == DataFormat::csv ? parse_csv(text, options)
                                         : parse_libsvm(text, options);
  ds.provenance = "source=" + path.filename().string();
  return ds;
}

}  // namespace sorr
