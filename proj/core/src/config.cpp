#include "golovin/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "golovin/errors.hpp"
#include "golovin/text.hpp"

namespace golovin {

KeyValueFile KeyValueFile::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError(path.string(), 0, "cannot open config file");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str(), path.string());
}

KeyValueFile KeyValueFile::parse(const std::string& contents, const std::string& source) {
  KeyValueFile kv;
  kv.source_ = source;
  std::istringstream in(contents);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::string t = text::trim(line);
    if (t.empty()) continue;
    auto eq = t.find('=');
    if (eq == std::string::npos) throw FormatError(source, lineno, "expected 'key = value'");
    std::string key = text::trim(t.substr(0, eq));
    if (key.empty()) throw FormatError(source, lineno, "empty key");
    kv.values_[key] = text::trim(t.substr(eq + 1));
    kv.lines_[key] = lineno;
  }
  return kv;
}

std::optional<std::string> KeyValueFile::get(const std::string& key) const {
  auto it = values_.find(key);
  if (it == values_.end()) return std::nullopt;
  return it->second;
}

std::optional<long long> KeyValueFile::get_int(const std::string& key) const {
  auto v = get(key);
  if (!v) return std::nullopt;
  long long out = 0;
  auto [ptr, ec] = std::from_chars(v->data(), v->data() + v->size(), out);
  if (ec != std::errc() || ptr != v->data() + v->size()) {
    auto line = lines_.count(key) ? lines_.at(key) : 0;
    throw FormatError(source_, line, "'" + key + "' is not an integer: " + *v);
  }
  return out;
}

std::optional<double> KeyValueFile::get_double(const std::string& key) const {
  auto v = get(key);
  if (!v) return std::nullopt;
  try {
    std::size_t used = 0;
    double out = std::stod(*v, &used);
    if (used == v->size()) return out;
  } catch (const std::exception&) {
  }
  auto line = lines_.count(key) ? lines_.at(key) : 0;
  throw FormatError(source_, line, "'" + key + "' is not a number: " + *v);
}

std::optional<bool> KeyValueFile::get_bool(const std::string& key) const {
  auto v = get(key);
  if (!v) return std::nullopt;
  std::string s = text::to_lower(*v);
  if (s == "1" || s == "true" || s == "on" || s == "yes") return true;
  if (s == "0" || s == "false" || s == "off" || s == "no") return false;
  auto line = lines_.count(key) ? lines_.at(key) : 0;
  throw FormatError(source_, line, "'" + key + "' is not a boolean: " + *v);
}

std::optional<std::vector<std::string>> KeyValueFile::get_list(const std::string& key) const {
  auto v = get(key);
  if (!v) return std::nullopt;
  std::vector<std::string> out;
  for (auto& part : text::split(*v, ',')) {
    auto t = text::trim(part);
    if (!t.empty()) out.push_back(t);
  }
  return out;
}

}  // namespace golovin
