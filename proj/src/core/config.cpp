#include "iet/config.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "iet/error.hpp"

namespace iet {
namespace {

using json = nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& what) { throw Error(ErrorCode::kConfig, what); }

// Reader for the small TOML subset the config files need.
class TomlReader {
 public:
  explicit TomlReader(std::string_view text) : text_(text) {}

  json run() {
    json root = json::object();
    json* table = &root;
    while (skip_blank_lines(), pos_ < text_.size()) {
      if (text_[pos_] == '[') {
        ++pos_;
        skip_spaces();
        std::string name = key();
        skip_spaces();
        expect(']');
        end_of_line();
        if (root.contains(name)) fail("line " + std::to_string(line_) + ": table [" + name + "] repeated");
        root[name] = json::object();
        table = &root[name];
        continue;
      }
      std::string k = key();
      skip_spaces();
      expect('=');
      skip_spaces();
      json v = value();
      end_of_line();
      if (table->contains(k)) fail("line " + std::to_string(line_) + ": key '" + k + "' repeated");
      (*table)[k] = std::move(v);
    }
    return root;
  }

 private:
  [[noreturn]] void error(const std::string& why) const {
    fail("config line " + std::to_string(line_) + ": " + why);
  }

  bool at(char c) const { return pos_ < text_.size() && text_[pos_] == c; }

  void expect(char c) {
    if (!at(c)) error(std::string("expected '") + c + "'");
    ++pos_;
  }

  void skip_spaces() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t')) ++pos_;
  }

  void skip_comment() {
    if (at('#')) {
      while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
    }
  }

  // whitespace, newlines and comments (used between array elements too)
  void skip_blank_lines() {
    for (;;) {
      skip_spaces();
      skip_comment();
      if (at('\r')) ++pos_;
      if (!at('\n')) return;
      ++pos_;
      ++line_;
    }
  }

  void end_of_line() {
    skip_spaces();
    skip_comment();
    if (at('\r')) ++pos_;
    if (pos_ == text_.size()) return;
    if (!at('\n')) error("trailing characters");
    ++pos_;
    ++line_;
  }

  std::string key() {
    if (at('"')) return quoted('"');
    std::size_t start = pos_;
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-')) break;
      ++pos_;
    }
    if (start == pos_) error("expected a key");
    return std::string(text_.substr(start, pos_ - start));
  }

  std::string quoted(char q) {
    ++pos_;
    std::string out;
    while (pos_ < text_.size() && text_[pos_] != q) {
      char c = text_[pos_++];
      if (c == '\n') error("unterminated string");
      if (q == '"' && c == '\\' && pos_ < text_.size()) {
        char e = text_[pos_++];
        switch (e) {
          case 'n': out += '\n'; break;
          case 't': out += '\t'; break;
          case '"': out += '"'; break;
          case '\\': out += '\\'; break;
          default: error(std::string("unsupported escape \\") + e);
        }
        continue;
      }
      out += c;
    }
    if (!at(q)) error("unterminated string");
    ++pos_;
    return out;
  }

  json value() {
    if (at('"') || at('\'')) return quoted(text_[pos_]);
    if (at('[')) {
      ++pos_;
      json arr = json::array();
      for (;;) {
        skip_blank_lines();
        if (at(']')) break;
        arr.push_back(value());
        skip_blank_lines();
        if (at(',')) {
          ++pos_;
          continue;
        }
        if (!at(']')) error("expected ',' or ']' in array");
      }
      ++pos_;
      return arr;
    }
    std::size_t start = pos_;
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '.' || c == '+' || c == '-' || c == '_')) break;
      ++pos_;
    }
    std::string token(text_.substr(start, pos_ - start));
    if (token == "true") return true;
    if (token == "false") return false;
    if (token.empty()) error("expected a value");
    json number = json::parse(token, nullptr, false);
    if (number.is_discarded() || !number.is_number()) error("cannot read value '" + token + "'");
    return number;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
};

std::string param_text(const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

RunConfig from_json(const json& doc) {
  if (!doc.is_object()) fail("config must be an object");
  RunConfig cfg;
  for (const auto& [key, v] : doc.items()) {
    if (key == "lengths") {
      if (!v.is_array()) fail("field 'lengths' must be an array");
      for (const auto& item : v) {
        if (item.is_string()) {
          cfg.lengths.push_back(item.get<std::string>());
        } else if (item.is_number_integer()) {
          cfg.lengths.push_back(item.dump());
        } else {
          fail("field 'lengths' entries must be scalar strings such as \"3/5\"");
        }
      }
    } else if (key == "perm") {
      if (!v.is_array()) fail("field 'perm' must be an array of integers");
      for (const auto& item : v) {
        if (!item.is_number_integer()) fail("field 'perm' must be an array of integers");
        cfg.perm.push_back(item.get<int>());
      }
    } else if (key == "params") {
      if (!v.is_object()) fail("field 'params' must be a table");
      for (const auto& [pk, pv] : v.items()) {
        if (pv.is_object() || pv.is_array() || pv.is_null()) fail("params." + pk + " must be a single value");
        cfg.params[pk] = param_text(pv);
      }
    } else {
      fail("unknown field '" + key + "'");
    }
  }
  if (cfg.lengths.empty()) fail("missing field 'lengths'");
  if (cfg.perm.empty()) fail("missing field 'perm'");
  return cfg;
}

std::vector<std::string> split_list(std::string_view text) {
  std::vector<std::string> out;
  std::string current;
  for (char c : text) {
    if (c == ',') {
      out.push_back(current);
      current.clear();
    } else {
      current += c;
    }
  }
  out.push_back(current);
  return out;
}

}  // namespace

IntervalExchange RunConfig::build() const {
  std::vector<Scalar> ls;
  ls.reserve(lengths.size());
  for (std::size_t k = 0; k < lengths.size(); ++k) {
    try {
      ls.push_back(Scalar::parse(lengths[k]));
    } catch (const Error& e) {
      fail("field 'lengths'[" + std::to_string(k) + "]: " + e.what());
    }
  }
  std::optional<Permutation> p;
  try {
    p.emplace(perm);
  } catch (const Error& e) {
    fail(std::string("field 'perm': ") + e.what());
  }
  try {
    return IntervalExchange(std::move(ls), std::move(*p));
  } catch (const Error& e) {
    fail(std::string("field 'lengths': ") + e.what());
  }
}

std::optional<std::string> RunConfig::param(const std::string& key) const {
  auto it = params.find(key);
  if (it == params.end()) return std::nullopt;
  return it->second;
}

RunConfig parse_config(std::string_view text) {
  std::size_t first = text.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos && text[first] == '{') {
    json doc = json::parse(text, nullptr, false);
    if (doc.is_discarded()) fail("config is not valid JSON");
    return from_json(doc);
  }
  return from_json(TomlReader(text).run());
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail("cannot read config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

IntervalExchange golden_rotation() {
  return IntervalExchange({Scalar::parse("-1/2+1/2*sqrt(5)"), Scalar::parse("3/2-1/2*sqrt(5)")},
                          Permutation({2, 1}));
}

IntervalExchange iet_from_text(std::string_view lengths, std::string_view perm) {
  RunConfig cfg;
  cfg.lengths = split_list(lengths);
  std::string p(perm);
  for (char& c : p) {
    if (c == ',' || c == '(' || c == ')') c = ' ';
  }
  std::istringstream in(p);
  std::string tok;
  while (in >> tok) {
    try {
      std::size_t used = 0;
      int v = std::stoi(tok, &used);
      if (used != tok.size()) throw std::invalid_argument(tok);
      cfg.perm.push_back(v);
    } catch (const std::exception&) {
      fail("field 'perm': '" + tok + "' is not an integer");
    }
  }
  if (cfg.perm.empty()) fail("field 'perm' is empty");
  return cfg.build();
}

std::vector<Scalar> parse_grid(std::string_view text) {
  auto parts = [&] {
    std::vector<std::string> out;
    std::string current;
    for (char c : text) {
      if (c == ':') {
        out.push_back(current);
        current.clear();
      } else {
        current += c;
      }
    }
    out.push_back(current);
    return out;
  }();
  if (parts.size() != 3) fail("grid '" + std::string(text) + "' is not lo:hi:count");
  Scalar lo;
  Scalar hi;
  try {
    lo = Scalar::parse(parts[0]);
    hi = Scalar::parse(parts[1]);
  } catch (const Error& e) {
    fail(std::string("grid: ") + e.what());
  }
  long count = 0;
  try {
    std::size_t used = 0;
    count = std::stol(parts[2], &used);
    if (used != parts[2].size()) throw std::invalid_argument(parts[2]);
  } catch (const std::exception&) {
    fail("grid count '" + parts[2] + "' is not an integer");
  }
  if (count < 1) fail("grid count must be positive");
  if (hi < lo) fail("grid has hi < lo");
  std::vector<Scalar> out;
  out.reserve(static_cast<std::size_t>(count));
  if (count == 1) {
    out.push_back(lo);
    return out;
  }
  const Scalar step = (hi - lo) / Scalar(count - 1);
  for (long i = 0; i < count; ++i) out.push_back(lo + Scalar(i) * step);
  return out;
}

std::string render_iet(const IntervalExchange& f) {
  json doc = json::object();
  json ls = json::array();
  for (const auto& l : f.lengths()) ls.push_back(l.render());
  doc["lengths"] = std::move(ls);
  doc["perm"] = f.permutation().images();
  return doc.dump();
}

}  // namespace iet
