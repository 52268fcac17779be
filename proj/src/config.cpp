#include "inerton/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "inerton/errors.hpp"

namespace inerton {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

ConfigError config_error(const std::string& message) {
  return ConfigError("config", "parse", message);
}

double parse_double(std::string_view text, const std::string& key) {
  text = trim(text);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double value = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end || text.empty() || !std::isfinite(value)) {
    throw config_error("key '" + key + "': '" + std::string(text) +
                       "' is not a finite number");
  }
  return value;
}

}  // namespace

KeyValueConfig KeyValueConfig::parse(std::string_view text, const std::string& source) {
  KeyValueConfig cfg;
  cfg.source_ = source;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;

    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw config_error(source + ":" + std::to_string(line_no) +
                         ": expected 'key = value'");
    }
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    if (key.empty()) {
      throw config_error(source + ":" + std::to_string(line_no) + ": empty key");
    }
    if (cfg.values_.count(key)) {
      throw config_error(source + ":" + std::to_string(line_no) + ": duplicate key '" +
                         key + "'");
    }
    cfg.values_.emplace(key, value);
  }
  return cfg;
}

KeyValueConfig KeyValueConfig::from_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw config_error("cannot read config file '" + path.string() + "'");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str(), path.string());
}

void KeyValueConfig::set(const std::string& key, std::string value) {
  values_[key] = std::move(value);
  consumed_.erase(key);
}

const std::string* KeyValueConfig::lookup(const std::string& key) {
  const auto it = values_.find(key);
  if (it == values_.end()) return nullptr;
  consumed_[key] = true;
  return &it->second;
}

void KeyValueConfig::record(const std::string& key, std::string value) {
  for (auto& entry : resolved_) {
    if (entry.first == key) {
      entry.second = std::move(value);
      return;
    }
  }
  resolved_.emplace_back(key, std::move(value));
}

double KeyValueConfig::get_double(const std::string& key) {
  const auto* raw = lookup(key);
  if (!raw) throw config_error("missing required key '" + key + "'");
  const double v = parse_double(*raw, key);
  record(key, format_exact(v));
  return v;
}

double KeyValueConfig::get_double(const std::string& key, double fallback) {
  if (!contains(key)) {
    record(key, format_exact(fallback));
    return fallback;
  }
  return get_double(key);
}

std::int64_t KeyValueConfig::get_int(const std::string& key) {
  const auto* raw = lookup(key);
  if (!raw) throw config_error("missing required key '" + key + "'");
  const std::string_view text = trim(*raw);
  std::int64_t v = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end || text.empty()) {
    throw config_error("key '" + key + "': '" + std::string(text) + "' is not an integer");
  }
  record(key, std::to_string(v));
  return v;
}

std::int64_t KeyValueConfig::get_int(const std::string& key, std::int64_t fallback) {
  if (!contains(key)) {
    record(key, std::to_string(fallback));
    return fallback;
  }
  return get_int(key);
}

std::string KeyValueConfig::get_string(const std::string& key) {
  const auto* raw = lookup(key);
  if (!raw) throw config_error("missing required key '" + key + "'");
  record(key, *raw);
  return *raw;
}

std::string KeyValueConfig::get_string(const std::string& key, const std::string& fallback) {
  if (!contains(key)) {
    record(key, fallback);
    return fallback;
  }
  return get_string(key);
}

std::vector<double> KeyValueConfig::get_double_list(const std::string& key) {
  const auto* raw = lookup(key);
  if (!raw) throw config_error("missing required key '" + key + "'");
  std::vector<double> out;
  std::string_view rest = *raw;
  while (true) {
    const auto comma = rest.find(',');
    out.push_back(parse_double(rest.substr(0, comma), key));
    if (comma == std::string_view::npos) break;
    rest = rest.substr(comma + 1);
  }
  std::string echoed;
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (i) echoed += ", ";
    echoed += format_exact(out[i]);
  }
  record(key, echoed);
  return out;
}

std::vector<double> KeyValueConfig::get_double_list(const std::string& key,
                                                    const std::vector<double>& fallback) {
  if (!contains(key)) {
    std::string echoed;
    for (std::size_t i = 0; i < fallback.size(); ++i) {
      if (i) echoed += ", ";
      echoed += format_exact(fallback[i]);
    }
    record(key, echoed);
    return fallback;
  }
  return get_double_list(key);
}

bool KeyValueConfig::get_bool(const std::string& key, bool fallback) {
  if (!contains(key)) {
    record(key, fallback ? "true" : "false");
    return fallback;
  }
  const std::string v = get_string(key);
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw config_error("key '" + key + "': '" + v + "' is not a boolean");
}

std::optional<std::string> KeyValueConfig::take_raw(const std::string& key) {
  const auto* raw = lookup(key);
  if (!raw) return std::nullopt;
  record(key, *raw);
  return *raw;
}

void KeyValueConfig::require_all_consumed(const std::string& module) const {
  std::string unknown;
  for (const auto& [key, value] : values_) {
    if (!consumed_.count(key)) {
      if (!unknown.empty()) unknown += ", ";
      unknown += key;
    }
  }
  if (!unknown.empty()) {
    throw ConfigError("config", "parse", "unknown key(s) for " + module + ": " + unknown);
  }
}

std::string KeyValueConfig::resolved_text() const {
  std::string out;
  for (const auto& [key, value] : resolved_) {
    out += key;
    out += " = ";
    out += value;
    out += '\n';
  }
  return out;
}

std::string format_number(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", value);
  return buf;
}

std::string format_exact(double value) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, ptr);
}

}  // namespace inerton
