#pragma once

#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "xlayer/params.hpp"

namespace xlayer::cli {

/// Unknown key, malformed value or unreadable config file.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class ValueKind { Real, Integer, Text, RealList, IntegerList };

struct KeySpec {
  std::string name;
  ValueKind kind;
  std::string fallback;
  std::string description;
  std::vector<std::string> choices;  // Text keys only; empty means free text
};

/// Every key the experiments understand, with its built-in default.
const std::vector<KeySpec>& registered_keys();
const KeySpec* find_key(std::string_view name);

/// Layered key-value configuration. Values are kept as text in the form they
/// were given and parsed on access; every key is checked when it is set.
class Config {
 public:
  Config();

  void set(std::string_view key, std::string value);
  /// "key=value".
  void assign(std::string_view assignment);
  /// Nested objects are flattened with dots; arrays become comma-separated lists.
  void merge(const nlohmann::json& tree);
  void load(const std::filesystem::path& path);

  double real(std::string_view key) const;
  int integer(std::string_view key) const;
  const std::string& text(std::string_view key) const;
  std::vector<double> reals(std::string_view key) const;
  std::vector<int> integers(std::string_view key) const;

  /// Model parameters in linear units; the threshold key is in dB.
  ParameterBundle bundle() const;

  /// All keys in sorted order as "key=value".
  std::vector<std::string> resolved() const;

 private:
  const std::string& raw(std::string_view key) const;

  std::map<std::string, std::string, std::less<>> values_;
};

}  // namespace xlayer::cli
