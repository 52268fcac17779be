#pragma once

// Flat `key = value` configuration shared by every subcommand.
//
//   # comment
//   M0 = 1
//   p  = 3, 0, 0
//
// Every lookup is recorded so that the fully resolved parameter set
// (explicit values and defaults alike) can be echoed back, and keys that
// nothing consumed are reported as errors.

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace inerton {

class KeyValueConfig {
 public:
  KeyValueConfig() = default;

  static KeyValueConfig parse(std::string_view text, const std::string& source = "<string>");
  static KeyValueConfig from_file(const std::filesystem::path& path);

  bool contains(const std::string& key) const { return values_.count(key) != 0; }
  void set(const std::string& key, std::string value);
  void erase(const std::string& key) { values_.erase(key); }

  double get_double(const std::string& key);
  double get_double(const std::string& key, double fallback);
  std::int64_t get_int(const std::string& key);
  std::int64_t get_int(const std::string& key, std::int64_t fallback);
  std::string get_string(const std::string& key);
  std::string get_string(const std::string& key, const std::string& fallback);
  std::vector<double> get_double_list(const std::string& key);
  std::vector<double> get_double_list(const std::string& key,
                                      const std::vector<double>& fallback);
  bool get_bool(const std::string& key, bool fallback);

  /// Marks a key as consumed without interpreting it.
  std::optional<std::string> take_raw(const std::string& key);

  /// Throws ConfigError naming every key that was present but never read.
  void require_all_consumed(const std::string& module) const;

  /// Resolved `key = value` lines in lookup order.
  const std::vector<std::pair<std::string, std::string>>& resolved() const {
    return resolved_;
  }
  std::string resolved_text() const;

  const std::map<std::string, std::string>& raw() const { return values_; }

 private:
  const std::string* lookup(const std::string& key);
  void record(const std::string& key, std::string value);

  std::string source_;
  std::map<std::string, std::string> values_;
  std::map<std::string, bool> consumed_;
  std::vector<std::pair<std::string, std::string>> resolved_;
};

/// Ten significant digits, `.` decimal separator, locale independent.
std::string format_number(double value);

/// Round-trip precision, used when echoing resolved parameters.
std::string format_exact(double value);

}  // namespace inerton
