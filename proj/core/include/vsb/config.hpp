#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace vsb {

// Nested key-value configuration (TOML-flavored subset): [section.sub]
// headers, `key = value` pairs, '#' comments. Values: quoted strings, bare
// words, integers, floats, booleans, and flat arrays [a, b, c]. Keys are
// flattened to dotted paths ("curate.steps").
class Config {
 public:
  static Config parse(const std::string& text);
  static Config parse_file(const std::string& path);

  bool has(const std::string& key) const;
  std::string get_string(const std::string& key) const;
  std::string get_string(const std::string& key, const std::string& dflt) const;
  long long get_int(const std::string& key) const;
  long long get_int(const std::string& key, long long dflt) const;
  double get_double(const std::string& key) const;
  double get_double(const std::string& key, double dflt) const;
  bool get_bool(const std::string& key) const;
  bool get_bool(const std::string& key, bool dflt) const;
  std::vector<std::string> get_list(const std::string& key) const;
  std::vector<std::string> get_list(const std::string& key,
                                    const std::vector<std::string>& dflt) const;

  void set(const std::string& key, const std::string& value);
  void set_list(const std::string& key, const std::vector<std::string>& items);

  // All keys, sorted; used for unknown-key validation and snapshots.
  std::vector<std::string> keys() const;
  // Keys under "prefix." (prefix not included in result).
  std::vector<std::string> keys_under(const std::string& prefix) const;

  // Throws DataError naming the first key not in `known` (prefix match via
  // trailing '*': "screen.*" admits the whole subtree).
  void require_known(const std::vector<std::string>& known) const;

  // Round-trippable snapshot of the resolved configuration.
  std::string serialize() const;

 private:
  struct Entry {
    std::string raw;                       // scalar form
    std::optional<std::vector<std::string>> list;
  };
  std::map<std::string, Entry> entries_;
};

}  // namespace vsb
