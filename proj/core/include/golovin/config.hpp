#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace golovin {

// Flat `key = value` settings with `#` comments. Keys are case-sensitive.
class KeyValueFile {
 public:
  KeyValueFile() = default;

  static KeyValueFile load(const std::filesystem::path& path);
  static KeyValueFile parse(const std::string& contents, const std::string& source = "<string>");

  bool has(const std::string& key) const { return values_.count(key) != 0; }
  std::optional<std::string> get(const std::string& key) const;
  void set(const std::string& key, std::string value) { values_[key] = std::move(value); }

  // Typed accessors throw FormatError naming the key's line when conversion fails.
  std::optional<long long> get_int(const std::string& key) const;
  std::optional<double> get_double(const std::string& key) const;
  std::optional<bool> get_bool(const std::string& key) const;
  std::optional<std::vector<std::string>> get_list(const std::string& key) const;

  const std::map<std::string, std::string>& values() const { return values_; }

 private:
  std::string source_ = "<string>";
  std::map<std::string, std::string> values_;
  std::map<std::string, std::size_t> lines_;
};

}  // namespace golovin
