#include "vsb/config.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "vsb/errors.hpp"

namespace vsb {
namespace {

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

// Strips a trailing comment that is not inside quotes.
std::string strip_comment(const std::string& s) {
  bool in_q = false;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '"') in_q = !in_q;
    else if (s[i] == '#' && !in_q) return s.substr(0, i);
  }
  return s;
}

std::string unquote(const std::string& s) {
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"') {
    std::string out;
    for (std::size_t i = 1; i + 1 < s.size(); ++i) {
      if (s[i] == '\\' && i + 2 < s.size() + 1) {
        ++i;
        switch (s[i]) {
          case 'n': out += '\n'; break;
          case 't': out += '\t'; break;
          default: out += s[i];
        }
      } else {
        out += s[i];
      }
    }
    return out;
  }
  return s;
}

std::vector<std::string> parse_array(const std::string& body) {
  std::vector<std::string> items;
  std::string cur;
  bool in_q = false;
  for (char c : body) {
    if (c == '"') {
      in_q = !in_q;
      cur += c;
    } else if (c == ',' && !in_q) {
      std::string t = trim(cur);
      if (!t.empty()) items.push_back(unquote(t));
      cur.clear();
    } else {
      cur += c;
    }
  }
  std::string t = trim(cur);
  if (!t.empty()) items.push_back(unquote(t));
  return items;
}

}  // namespace

Config Config::parse(const std::string& text) {
  Config cfg;
  std::istringstream in(text);
  std::string line, section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(strip_comment(line));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw DataError("config line " + std::to_string(lineno) +
                        ": unterminated section header");
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw DataError("config line " + std::to_string(lineno) +
                      ": expected key = value");
    std::string key = trim(line.substr(0, eq));
    std::string val = trim(line.substr(eq + 1));
    if (key.empty())
      throw DataError("config line " + std::to_string(lineno) + ": empty key");
    std::string full = section.empty() ? key : section + "." + key;
    Entry e;
    if (!val.empty() && val.front() == '[') {
      if (val.back() != ']')
        throw DataError("config line " + std::to_string(lineno) +
                        ": unterminated array");
      e.list = parse_array(val.substr(1, val.size() - 2));
      e.raw = val;
    } else {
      e.raw = unquote(val);
    }
    cfg.entries_[full] = std::move(e);
  }
  return cfg;
}

Config Config::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

bool Config::has(const std::string& key) const {
  return entries_.count(key) != 0;
}

std::string Config::get_string(const std::string& key) const {
  auto it = entries_.find(key);
  if (it == entries_.end()) throw DataError("missing config key: " + key);
  return it->second.raw;
}

std::string Config::get_string(const std::string& key,
                               const std::string& dflt) const {
  return has(key) ? get_string(key) : dflt;
}

long long Config::get_int(const std::string& key) const {
  std::string s = get_string(key);
  char* end = nullptr;
  long long v = std::strtoll(s.c_str(), &end, 10);
  if (end == s.c_str() || *end != '\0')
    throw DataError("config key " + key + ": not an integer: " + s);
  return v;
}

long long Config::get_int(const std::string& key, long long dflt) const {
  return has(key) ? get_int(key) : dflt;
}

double Config::get_double(const std::string& key) const {
  std::string s = get_string(key);
  char* end = nullptr;
  double v = std::strtod(s.c_str(), &end);
  if (end == s.c_str() || *end != '\0')
    throw DataError("config key " + key + ": not a number: " + s);
  return v;
}

double Config::get_double(const std::string& key, double dflt) const {
  return has(key) ? get_double(key) : dflt;
}

bool Config::get_bool(const std::string& key) const {
  std::string s = get_string(key);
  if (s == "true" || s == "1" || s == "yes") return true;
  if (s == "false" || s == "0" || s == "no") return false;
  throw DataError("config key " + key + ": not a boolean: " + s);
}

bool Config::get_bool(const std::string& key, bool dflt) const {
  return has(key) ? get_bool(key) : dflt;
}

std::vector<std::string> Config::get_list(const std::string& key) const {
  auto it = entries_.find(key);
  if (it == entries_.end()) throw DataError("missing config key: " + key);
  if (it->second.list) return *it->second.list;
  return {it->second.raw};
}

std::vector<std::string> Config::get_list(
    const std::string& key, const std::vector<std::string>& dflt) const {
  return has(key) ? get_list(key) : dflt;
}

void Config::set(const std::string& key, const std::string& value) {
  entries_[key] = Entry{value, std::nullopt};
}

void Config::set_list(const std::string& key,
                      const std::vector<std::string>& items) {
  Entry e;
  e.list = items;
  std::string raw = "[";
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) raw += ", ";
    raw += "\"" + items[i] + "\"";
  }
  raw += "]";
  e.raw = raw;
  entries_[key] = std::move(e);
}

std::vector<std::string> Config::keys() const {
  std::vector<std::string> out;
  out.reserve(entries_.size());
  for (const auto& [k, v] : entries_) out.push_back(k);
  return out;
}

std::vector<std::string> Config::keys_under(const std::string& prefix) const {
  std::vector<std::string> out;
  std::string p = prefix + ".";
  for (const auto& [k, v] : entries_)
    if (k.rfind(p, 0) == 0) out.push_back(k.substr(p.size()));
  return out;
}

void Config::require_known(const std::vector<std::string>& known) const {
  for (const auto& [k, v] : entries_) {
    bool ok = false;
    for (const auto& pat : known) {
      if (!pat.empty() && pat.back() == '*') {
        if (k.rfind(pat.substr(0, pat.size() - 1), 0) == 0) {
          ok = true;
          break;
        }
      } else if (k == pat) {
        ok = true;
        break;
      }
    }
    if (!ok) throw DataError("unknown config key: " + k);
  }
}

std::string Config::serialize() const {
  std::ostringstream out;
  for (const auto& [k, e] : entries_) {
    if (e.list) {
      out << k << " = [";
      for (std::size_t i = 0; i < e.list->size(); ++i) {
        if (i) out << ", ";
        out << '"' << (*e.list)[i] << '"';
      }
      out << "]\n";
    } else {
      out << k << " = \"" << e.raw << "\"\n";
    }
  }
  return out.str();
}

}  // namespace vsb
