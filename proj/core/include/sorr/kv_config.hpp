#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace sorr {

// Plain-text `key = value` document; `#` starts a comment line.  Keys keep
// the line they were read from so errors can point at it.
class KeyValueDoc {
 public:
  static KeyValueDoc parse(const std::string& text);
  static KeyValueDoc load(const std::filesystem::path& path);

  bool has(const std::string& key) const { return entries_.count(key) != 0; }
  void set(const std::string& key, const std::string& value);
  const std::string& get(const std::string& key) const;
  std::size_t line_of(const std::string& key) const;

  std::string get_string(const std::string& key, const std::string& fallback) const;
  double get_real(const std::string& key, double fallback) const;
  long long get_int(const std::string& key, long long fallback) const;
  bool get_bool(const std::string& key, bool fallback) const;
  std::vector<double> get_reals(const std::string& key,
                                const std::vector<double>& fallback) const;

  std::vector<std::string> keys() const;
  std::string to_string() const;

 private:
  struct Entry {
    std::string value;
    std::size_t line = 0;
  };
  std::map<std::string, Entry> entries_;
};

}  // namespace sorr
