#include "sorr/kv_config.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "sorr/errors.hpp"

namespace sorr {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) {
    return "";
  }
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

KeyValueDoc KeyValueDoc::parse(const std::string& text) {
  KeyValueDoc doc;
  std::istringstream in(text);
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const std::string row = trim(raw);
    if (row.empty() || row[0] == '#') {
      continue;
    }
    const auto eq = row.find('=');
    if (eq == std::string::npos) {
      throw ParseError("expected 'key = value'", line);
    }
    const std::string key = trim(row.substr(0, eq));
    if (key.empty()) {
      throw ParseError("empty key", line);
    }
    if (doc.has(key)) {
      throw ParseError("duplicate key '" + key + "'", line);
    }
    doc.entries_[key] = {trim(row.substr(eq + 1)), line};
  }
  return doc;
}

KeyValueDoc KeyValueDoc::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ParameterError("cannot open config '" + path.string() + "'");
  }
  std::stringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

void KeyValueDoc::set(const std::string& key, const std::string& value) {
  auto& e = entries_[key];
  e.value = value;
}

const std::string& KeyValueDoc::get(const std::string& key) const {
  auto it = entries_.find(key);
  if (it == entries_.end()) {
    throw ParameterError("missing config key '" + key + "'");
  }
  return it->second.value;
}

std::size_t KeyValueDoc::line_of(const std::string& key) const {
  auto it = entries_.find(key);
  return it == entries_.end() ? 0 : it->second.line;
}

std::string KeyValueDoc::get_string(const std::string& key,
                                    const std::string& fallback) const {
  return has(key) ? get(key) : fallback;
}

double KeyValueDoc::get_real(const std::string& key, double fallback) const {
  if (!has(key)) {
    return fallback;
  }
  const std::string& v = get(key);
  char* end = nullptr;
  const double d = std::strtod(v.c_str(), &end);
  if (v.empty() || *end != '\0') {
    throw ParseError("config key '" + key + "' expects a number, got '" + v + "'",
                     line_of(key));
  }
  return d;
}

long long KeyValueDoc::get_int(const std::string& key, long long fallback) const {
  if (!has(key)) {
    return fallback;
  }
  const std::string& v = get(key);
  char* end = nullptr;
  const long long d = std::strtoll(v.c_str(), &end, 10);
  if (v.empty() || *end != '\0') {
    throw ParseError("config key '" + key + "' expects an integer, got '" + v + "'",
                     line_of(key));
  }
  return d;
}

bool KeyValueDoc::get_bool(const std::string& key, bool fallback) const {
  if (!has(key)) {
    return fallback;
  }
  const std::string& v = get(key);
  if (v == "true" || v == "1" || v == "yes" || v == "on") {
    return true;
  }
  if (v == "false" || v == "0" || v == "no" || v == "off") {
    return false;
  }
  throw ParseError("config key '" + key + "' expects true/false, got '" + v + "'",
                   line_of(key));
}

std::vector<double> KeyValueDoc::get_reals(const std::string& key,
                                           const std::vector<double>& fallback) const {
  if (!has(key)) {
    return fallback;
  }
  std::vector<double> out;
  std::stringstream ss(get(key));
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    tok = trim(tok);
    char* end = nullptr;
    const double d = std::strtod(tok.c_str(), &end);
    if (tok.empty() || *end != '\0') {
      throw ParseError("config key '" + key + "' expects a comma-separated list "
                       "of numbers", line_of(key));
    }
    out.push_back(d);
  }
  return out;
}

std::vector<std::string> KeyValueDoc::keys() const {
  std::vector<std::string> out;
  for (const auto& [k, v] : entries_) {
    out.push_back(k);
  }
  return out;
}

std::string KeyValueDoc::to_string() const {
  std::string out;
  for (const auto& [k, v] : entries_) {
    out += k + " = " + v.value + "\n";
  }
  return out;
}

}  // namespace sorr
