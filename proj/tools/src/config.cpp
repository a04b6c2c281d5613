#include "wavebreak_cli/config.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <set>
#include <sstream>

#include "wavebreak/hypotheses.hpp"
#include "wavebreak/model.hpp"
#include "wavebreak/profiles.hpp"

namespace wavebreak::cli {

ParseError::ParseError(std::size_t line, const std::string& message)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + message : message),
      line_(line) {}

namespace {

std::string join_problems(const std::vector<std::string>& problems) {
  std::string out = "invalid configuration:";
  for (const auto& p : problems) out += "\n  " + p;
  return out;
}

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

bool is_bare_key(std::string_view s) {
  if (s.empty()) return false;
  for (char ch : s) {
    if (!(std::isalnum(static_cast<unsigned char>(ch)) || ch == '_' || ch == '-')) return false;
  }
  return true;
}

// Removes a trailing comment, ignoring '#' inside strings.
std::string_view strip_comment(std::string_view line) {
  bool in_string = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (in_string) {
      if (ch == '\\') ++i;
      else if (ch == '"') in_string = false;
    } else if (ch == '"') {
      in_string = true;
    } else if (ch == '#') {
      return line.substr(0, i);
    }
  }
  return line;
}

std::optional<double> parse_double(std::string_view s) {
  double v = 0.0;
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end) return std::nullopt;
  return v;
}

// Numbers, optionally times pi: "2.5", "pi", "8*pi", "pi/2", "3*pi/4".
std::optional<Value> parse_number(std::string_view s) {
  const std::string_view body = (!s.empty() && s.front() == '+') ? s.substr(1) : s;
  if (auto pos = body.find("pi"); pos != std::string_view::npos) {
    double factor = 1.0;
    std::string_view head = body.substr(0, pos);
    std::string_view tail = body.substr(pos + 2);
    if (head == "-") {
      factor = -1.0;
    } else if (!head.empty()) {
      if (head.back() != '*') return std::nullopt;
      auto f = parse_double(head.substr(0, head.size() - 1));
      if (!f) return std::nullopt;
      factor = *f;
    }
    if (!tail.empty()) {
      if (tail.front() != '/') return std::nullopt;
      auto d = parse_double(tail.substr(1));
      if (!d || *d == 0.0) return std::nullopt;
      factor /= *d;
    }
    return Value{factor * std::numbers::pi};
  }
  const bool integral = !body.empty() && body.find_first_not_of("-0123456789") == std::string_view::npos;
  if (integral) {
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(body.data(), body.data() + body.size(), v);
    if (ec == std::errc() && ptr == body.data() + body.size()) return Value{v};
    return std::nullopt;
  }
  if (body == "inf" || body == "nan" || body == "-inf") return std::nullopt;
  if (auto d = parse_double(body)) return Value{*d};
  return std::nullopt;
}

class ValueParser {
 public:
  ValueParser(std::string_view text, std::size_t line) : s_(text), line_(line) {}

  Value parse_all() {
    Value v = parse_one(true);
    skip_space();
    if (pos_ != s_.size()) fail("unexpected text after value: '" + std::string(s_.substr(pos_)) + "'");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& message) const { throw ParseError(line_, message); }

  void skip_space() {
    while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\t')) ++pos_;
  }

  Value parse_one(bool allow_array) {
    skip_space();
    if (pos_ >= s_.size()) fail("missing value");
    const char ch = s_[pos_];
    if (ch == '"') return parse_string();
    if (ch == '[') {
      if (!allow_array) fail("nested arrays are not supported");
      return parse_array();
    }
    const std::size_t start = pos_;
    while (pos_ < s_.size() && s_[pos_] != ',' && s_[pos_] != ']' && s_[pos_] != ' ' && s_[pos_] != '\t') {
      ++pos_;
    }
    const std::string_view token = s_.substr(start, pos_ - start);
    if (token == "true") return Value{true};
    if (token == "false") return Value{false};
    if (auto num = parse_number(token)) return *num;
    fail("cannot parse value '" + std::string(token) + "' (strings need double quotes)");
  }

  Value parse_string() {
    ++pos_;
    std::string out;
    while (pos_ < s_.size()) {
      const char ch = s_[pos_++];
      if (ch == '"') return Value{out};
      if (ch == '\\') {
        if (pos_ >= s_.size()) break;
        const char esc = s_[pos_++];
        switch (esc) {
          case 'n': out += '\n'; break;
          case 't': out += '\t'; break;
          case '"': out += '"'; break;
          case '\\': out += '\\'; break;
          default: fail(std::string("unknown escape '\\") + esc + "'");
        }
      } else {
        out += ch;
      }
    }
    fail("unterminated string");
  }

  Value parse_array() {
    ++pos_;
    Array items;
    skip_space();
    if (pos_ < s_.size() && s_[pos_] == ']') {
      ++pos_;
      return Value{items};
    }
    while (true) {
      items.push_back(parse_one(false));
      skip_space();
      if (pos_ >= s_.size()) fail("unterminated array");
      if (s_[pos_] == ']') {
        ++pos_;
        return Value{items};
      }
      if (s_[pos_] != ',') fail("expected ',' or ']' in array");
      ++pos_;
    }
  }

  std::string_view s_;
  std::size_t line_;
  std::size_t pos_ = 0;
};

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  std::string s = buf;
  // Keep a float marker so the value reads back as a double.
  if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
  return s;
}

// ---- schema ----------------------------------------------------------------

std::string type_name(const Value& v) {
  switch (v.data.index()) {
    case 0: return "boolean";
    case 1: return "integer";
    case 2: return "float";
    case 3: return "string";
    default: return "array";
  }
}

template <class T>
bool convert(const Value& v, T& out);

template <>
bool convert(const Value& v, double& out) {
  if (auto d = std::get_if<double>(&v.data)) {
    out = *d;
    return true;
  }
  if (auto i = std::get_if<std::int64_t>(&v.data)) {
    out = static_cast<double>(*i);
    return true;
  }
  return false;
}

template <>
bool convert(const Value& v, std::int64_t& out) {
  if (auto i = std::get_if<std::int64_t>(&v.data)) {
    out = *i;
    return true;
  }
  return false;
}

template <>
bool convert(const Value& v, bool& out) {
  if (auto b = std::get_if<bool>(&v.data)) {
    out = *b;
    return true;
  }
  return false;
}

template <>
bool convert(const Value& v, std::string& out) {
  if (auto s = std::get_if<std::string>(&v.data)) {
    out = *s;
    return true;
  }
  return false;
}

template <>
bool convert(const Value& v, std::vector<double>& out) {
  const auto* a = std::get_if<Array>(&v.data);
  if (!a) return false;
  std::vector<double> tmp;
  for (const auto& item : *a) {
    double d = 0.0;
    if (!convert(item, d)) return false;
    tmp.push_back(d);
  }
  out = std::move(tmp);
  return true;
}

template <class T>
bool convert(const Value& v, std::optional<T>& out) {
  T tmp{};
  if (!convert(v, tmp)) return false;
  out = std::move(tmp);
  return true;
}

Value to_value(double d) { return Value{d}; }
Value to_value(std::int64_t i) { return Value{i}; }
Value to_value(bool b) { return Value{b}; }
Value to_value(const std::string& s) { return Value{s}; }
Value to_value(const std::vector<double>& xs) {
  Array a;
  for (double x : xs) a.push_back(Value{x});
  return Value{a};
}

template <class T>
std::optional<Value> to_optional_value(const T& v) {
  return to_value(v);
}
template <class T>
std::optional<Value> to_optional_value(const std::optional<T>& v) {
  if (!v) return std::nullopt;
  return to_value(*v);
}

template <class T>
const char* expected_name() {
  if constexpr (std::is_same_v<T, double> || std::is_same_v<T, std::optional<double>>) return "number";
  else if constexpr (std::is_same_v<T, std::int64_t>) return "integer";
  else if constexpr (std::is_same_v<T, bool>) return "boolean";
  else if constexpr (std::is_same_v<T, std::vector<double>>) return "array of numbers";
  else return "string";
}

struct KeySpec {
  std::string section;
  std::string key;
  std::function<bool(RunConfig&, const Value&)> set;
  std::function<std::optional<Value>(const RunConfig&)> get;
  std::string expected;
};

template <class S, class T>
KeySpec key(const char* section, const char* name, S RunConfig::*sec, T S::*member) {
  KeySpec k;
  k.section = section;
  k.key = name;
  k.set = [sec, member](RunConfig& c, const Value& v) { return convert(v, c.*sec.*member); };
  k.get = [sec, member](const RunConfig& c) { return to_optional_value(c.*sec.*member); };
  k.expected = expected_name<T>();
  return k;
}

const std::vector<KeySpec>& schema() {
  static const std::vector<KeySpec> keys = {
      key("model", "family", &RunConfig::model, &ModelConfig::family),
      key("model", "alpha", &RunConfig::model, &ModelConfig::alpha),
      key("model", "epsilon", &RunConfig::model, &ModelConfig::epsilon),
      key("grid", "n", &RunConfig::grid, &GridConfig::n),
      key("grid", "L", &RunConfig::grid, &GridConfig::half_length),
      key("initial", "profile", &RunConfig::initial, &InitialConfig::profile),
      key("initial", "amplitude", &RunConfig::initial, &InitialConfig::amplitude),
      key("initial", "wavenumber", &RunConfig::initial, &InitialConfig::wavenumber),
      key("initial", "width", &RunConfig::initial, &InitialConfig::width),
      key("initial", "lambda", &RunConfig::initial, &InitialConfig::lambda),
      key("initial", "file", &RunConfig::initial, &InitialConfig::file),
      key("time", "final", &RunConfig::time, &TimeConfig::final_time),
      key("time", "cfl", &RunConfig::time, &TimeConfig::cfl),
      key("time", "m_stop", &RunConfig::time, &TimeConfig::m_stop),
      key("time", "sup_factor", &RunConfig::time, &TimeConfig::sup_factor),
      key("time", "dt_min", &RunConfig::time, &TimeConfig::dt_min),
      key("time", "snapshot_interval", &RunConfig::time, &TimeConfig::snapshot_interval),
      key("time", "snapshot_tightening", &RunConfig::time, &TimeConfig::snapshot_tightening),
      key("time", "tail_threshold", &RunConfig::time, &TimeConfig::tail_threshold),
      key("time", "window_fraction", &RunConfig::time, &TimeConfig::window_fraction),
      key("seeds", "uniform", &RunConfig::seeds, &SeedsConfig::uniform),
      key("seeds", "cluster", &RunConfig::seeds, &SeedsConfig::cluster),
      key("seeds", "extra", &RunConfig::seeds, &SeedsConfig::extra),
      key("seeds", "delta", &RunConfig::seeds, &SeedsConfig::delta),
      key("seeds", "cutoff", &RunConfig::seeds, &SeedsConfig::cutoff),
      key("seeds", "resolution_tail", &RunConfig::seeds, &SeedsConfig::resolution_tail),
      key("check", "theorem", &RunConfig::check, &CheckConfig::theorem),
      key("check", "delta", &RunConfig::check, &CheckConfig::delta),
      key("check", "alpha", &RunConfig::check, &CheckConfig::alpha),
      key("check", "epsilon", &RunConfig::check, &CheckConfig::epsilon),
      key("check", "constants", &RunConfig::check, &CheckConfig::constants),
      key("check", "c0", &RunConfig::check, &CheckConfig::c0),
      key("check", "c1", &RunConfig::check, &CheckConfig::c1),
      key("kernel", "epsilon", &RunConfig::kernel, &KernelConfig::epsilon),
      key("kernel", "eta0", &RunConfig::kernel, &KernelConfig::eta0),
      key("kernel", "log_points", &RunConfig::kernel, &KernelConfig::log_points),
      key("kernel", "linear_points", &RunConfig::kernel, &KernelConfig::linear_points),
      key("compare", "epsilon", &RunConfig::compare, &CompareConfig::epsilon),
      key("compare", "horizon", &RunConfig::compare, &CompareConfig::horizon),
      key("compare", "horizon_coefficient", &RunConfig::compare, &CompareConfig::horizon_coefficient),
      key("compare", "samples", &RunConfig::compare, &CompareConfig::samples),
      key("sweep", "axis", &RunConfig::sweep, &SweepConfig::axis),
      key("sweep", "values", &RunConfig::sweep, &SweepConfig::values),
      key("sweep", "command", &RunConfig::sweep, &SweepConfig::command),
      key("output", "directory", &RunConfig::output, &OutputConfig::directory),
      key("output", "snapshots", &RunConfig::output, &OutputConfig::snapshots),
  };
  return keys;
}

const KeySpec* find_key(const std::string& section, const std::string& name) {
  for (const auto& k : schema()) {
    if (k.section == section && k.key == name) return &k;
  }
  return nullptr;
}

bool section_known(const std::string& section) {
  for (const auto& k : schema()) {
    if (k.section == section) return true;
  }
  return false;
}

void bind_document(RunConfig& config, const Document& doc, std::vector<std::string>& problems) {
  for (const auto& [section, entries] : doc) {
    if (!section_known(section)) {
      problems.push_back("unknown section [" + section + "]");
      continue;
    }
    for (const auto& [name, value] : entries) {
      const KeySpec* k = find_key(section, name);
      if (!k) {
        problems.push_back("unknown key '" + name + "' in [" + section + "]");
      } else if (!k->set(config, value)) {
        problems.push_back(section + "." + name + ": expected " + k->expected + ", got " + type_name(value));
      }
    }
  }
}

void apply_override(Document& doc, const std::string& text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos) throw ParseError(0, "override '" + text + "' is not key=value");
  const std::string lhs{trim(std::string_view(text).substr(0, eq))};
  const std::string_view rhs = trim(std::string_view(text).substr(eq + 1));
  const auto dot = lhs.find('.');
  if (dot == std::string::npos || !is_bare_key(lhs.substr(0, dot)) || !is_bare_key(lhs.substr(dot + 1))) {
    throw ParseError(0, "override key '" + lhs + "' must look like section.key");
  }
  Value v;
  try {
    v = parse_value(rhs);
  } catch (const ParseError&) {
    // Bare words are taken as strings on the command line.
    if (rhs.empty() || rhs.front() == '"' || rhs.front() == '[') throw;
    v = Value{std::string(rhs)};
  }
  doc[lhs.substr(0, dot)][lhs.substr(dot + 1)] = std::move(v);
}

bool power_of_two(std::int64_t n) { return n > 0 && (n & (n - 1)) == 0; }

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

}  // namespace

ConfigError::ConfigError(std::vector<std::string> problems)
    : std::runtime_error(join_problems(problems)), problems_(std::move(problems)) {}

Value parse_value(std::string_view text, std::size_t line) {
  return ValueParser(trim(text), line).parse_all();
}

std::string format_value(const Value& v) {
  struct Visitor {
    std::string operator()(bool b) const { return b ? "true" : "false"; }
    std::string operator()(std::int64_t i) const { return std::to_string(i); }
    std::string operator()(double d) const { return format_double(d); }
    std::string operator()(const std::string& s) const {
      std::string out = "\"";
      for (char ch : s) {
        switch (ch) {
          case '"': out += "\\\""; break;
          case '\\': out += "\\\\"; break;
          case '\n': out += "\\n"; break;
          case '\t': out += "\\t"; break;
          default: out += ch;
        }
      }
      return out + "\"";
    }
    std::string operator()(const Array& a) const {
      std::string out = "[";
      for (std::size_t i = 0; i < a.size(); ++i) {
        if (i) out += ", ";
        out += format_value(a[i]);
      }
      return out + "]";
    }
  };
  return std::visit(Visitor{}, v.data);
}

Document parse_document(std::string_view text) {
  Document doc;
  std::string current;
  std::set<std::string> opened;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    const std::string_view raw = text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    const std::string_view line = trim(strip_comment(raw));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ParseError(line_no, "section header needs a closing ']'");
      const std::string name{trim(line.substr(1, line.size() - 2))};
      if (!is_bare_key(name)) throw ParseError(line_no, "bad section name '" + name + "'");
      if (!opened.insert(name).second) throw ParseError(line_no, "section [" + name + "] appears twice");
      current = name;
      doc[current];
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError(line_no, "expected 'key = value'");
    const std::string name{trim(line.substr(0, eq))};
    if (!is_bare_key(name)) throw ParseError(line_no, "bad key '" + name + "'");
    if (current.empty()) throw ParseError(line_no, "key '" + name + "' appears before any section");
    Value v = parse_value(line.substr(eq + 1), line_no);
    if (!doc[current].emplace(name, std::move(v)).second) {
      throw ParseError(line_no, "key '" + name + "' repeated in [" + current + "]");
    }
  }
  return doc;
}

std::vector<std::string> validate(const RunConfig& c) {
  std::vector<std::string> p;
  const auto family = parse_family(c.model.family);
  if (!family) {
    p.push_back("model.family: unknown family '" + c.model.family +
                "' (burgers, burgers_hilbert, fkdv, whitham, whitham_rescaled, kdv)");
  } else {
    if (*family == Family::fkdv && !(c.model.alpha >= -1.0 && c.model.alpha < 0.0)) {
      p.push_back("model.alpha must be in [-1, 0) for fkdv (got " + num(c.model.alpha) + ")");
    }
    const bool eps_family = *family == Family::burgers || *family == Family::whitham_rescaled ||
                            *family == Family::kdv;
    if (eps_family && !(c.model.epsilon > 0.0 && c.model.epsilon <= 1.0)) {
      p.push_back("model.epsilon must be in (0, 1] (got " + num(c.model.epsilon) + ")");
    }
  }
  if (!power_of_two(c.grid.n) || c.grid.n < 8) {
    p.push_back("grid.n must be a power of two >= 8 (got " + std::to_string(c.grid.n) + ")");
  }
  if (!(c.grid.half_length > 0.0) || !std::isfinite(c.grid.half_length)) {
    p.push_back("grid.L must be positive (got " + num(c.grid.half_length) + ")");
  }
  if (!is_profile_family(c.initial.profile)) {
    std::string names;
    for (const auto& f : profile_families()) names += (names.empty() ? "" : ", ") + f;
    p.push_back("initial.profile: unknown profile '" + c.initial.profile + "' (" + names + ")");
  }
  if (!(c.initial.width > 0.0)) p.push_back("initial.width must be positive");
  for (double v : {c.initial.amplitude, c.initial.wavenumber, c.initial.lambda}) {
    if (!std::isfinite(v)) p.push_back("initial parameters must be finite");
  }
  if (c.initial.file && !std::filesystem::exists(*c.initial.file)) {
    p.push_back("initial.file: '" + *c.initial.file + "' does not exist");
  }
  const auto& t = c.time;
  if (!(t.final_time > 0.0)) p.push_back("time.final must be positive");
  if (!(t.cfl > 0.0 && t.cfl <= 1.0)) p.push_back("time.cfl must be in (0, 1]");
  if (!(t.m_stop > 1.0)) p.push_back("time.m_stop must exceed 1");
  if (!(t.sup_factor > 1.0)) p.push_back("time.sup_factor must exceed 1");
  if (!(t.dt_min > 0.0)) p.push_back("time.dt_min must be positive");
  if (!(t.snapshot_interval >= 0.0)) p.push_back("time.snapshot_interval must be >= 0");
  if (!(t.snapshot_tightening > 0.0)) p.push_back("time.snapshot_tightening must be positive");
  if (!(t.tail_threshold > 0.0 && t.tail_threshold < 1.0)) p.push_back("time.tail_threshold must be in (0, 1)");
  if (!(t.window_fraction > 0.0 && t.window_fraction <= 1.0)) {
    p.push_back("time.window_fraction must be in (0, 1]");
  }
  const auto& s = c.seeds;
  if (s.uniform < 0 || s.cluster < 0) p.push_back("seeds.uniform and seeds.cluster must be >= 0");
  if (!(s.delta > 0.0)) p.push_back("seeds.delta must be positive");
  if (!(s.cutoff > 0.0 && s.cutoff <= 1.0)) p.push_back("seeds.cutoff must be in (0, 1]");
  if (!(s.resolution_tail > 0.0)) p.push_back("seeds.resolution_tail must be positive");
  for (double x : s.extra) {
    if (!(x >= -c.grid.half_length && x < c.grid.half_length)) {
      p.push_back("seeds.extra: " + num(x) + " lies outside [-L, L)");
    }
  }
  const auto theorem = parse_theorem(c.check.theorem);
  if (!theorem) {
    p.push_back("check.theorem: unknown theorem '" + c.check.theorem +
                "' (burgers_hilbert, whitham, fkdv, whitham_rescaled)");
  } else {
    if (*theorem == Theorem::whitham_rescaled && !(c.check.epsilon > 0.0 && c.check.epsilon <= 1.0)) {
      p.push_back("check.epsilon must be in (0, 1]");
    }
    if (*theorem == Theorem::fkdv && !(c.check.alpha > -1.0 && c.check.alpha < 0.0)) {
      p.push_back("check.alpha must be in (-1, 0) for fkdv (got " + num(c.check.alpha) + ")");
    }
    if (*theorem != Theorem::whitham_rescaled || (c.check.epsilon > 0.0 && c.check.epsilon <= 1.0)) {
      const auto [lo, hi] = delta_range(*theorem, c.check.epsilon);
      const bool rescaled_ok = *theorem != Theorem::whitham_rescaled || c.check.delta / c.check.epsilon < 0.5;
      if (!(c.check.delta > lo && c.check.delta <= hi) || !rescaled_ok) {
        p.push_back("check.delta must be in (" + num(lo) + ", " + num(hi) + (rescaled_ok ? "]" : ")") + " for " +
                    c.check.theorem +
                    " (got " + num(c.check.delta) + ")");
      }
    }
  }
  if (c.check.constants != "analytic_admissible" && c.check.constants != "numeric_refine") {
    p.push_back("check.constants must be analytic_admissible or numeric_refine");
  }
  if (c.check.c0 && !(*c.check.c0 > 0.0)) p.push_back("check.c0 must be positive");
  if (c.check.c1 && !(*c.check.c1 > 0.0)) p.push_back("check.c1 must be positive");
  if (!(c.kernel.epsilon > 0.0 && c.kernel.epsilon <= 1.0)) p.push_back("kernel.epsilon must be in (0, 1]");
  if (!(c.kernel.eta0 > 0.0 && c.kernel.eta0 <= 1.0)) p.push_back("kernel.eta0 must be in (0, 1]");
  if (c.kernel.log_points < 64) p.push_back("kernel.log_points must be >= 64");
  if (c.kernel.linear_points < 2) p.push_back("kernel.linear_points must be >= 2");
  if (!(c.compare.epsilon > 0.0 && c.compare.epsilon <= 1.0)) p.push_back("compare.epsilon must be in (0, 1]");
  if (c.compare.horizon && !(*c.compare.horizon > 0.0)) p.push_back("compare.horizon must be positive");
  if (!(c.compare.horizon_coefficient > 0.0)) p.push_back("compare.horizon_coefficient must be positive");
  if (c.compare.samples < 8) p.push_back("compare.samples must be >= 8");
  static const std::set<std::string> axes = {"epsilon", "alpha", "delta", "lambda", "n"};
  static const std::set<std::string> commands = {"simulate", "check", "certify", "breaking-time",
                                                 "characteristics", "blowup-functional", "compare-kdv"};
  if (!axes.count(c.sweep.axis)) p.push_back("sweep.axis must be one of epsilon, alpha, delta, lambda, n");
  if (!commands.count(c.sweep.command)) p.push_back("sweep.command '" + c.sweep.command + "' cannot be swept");
  for (double v : c.sweep.values) {
    if (!std::isfinite(v)) p.push_back("sweep.values must be finite");
    if (c.sweep.axis == "n" && (v != std::floor(v) || !power_of_two(static_cast<std::int64_t>(v)) || v < 8)) {
      p.push_back("sweep.values: " + num(v) + " is not a valid grid size");
    }
  }
  if (c.output.directory.empty()) p.push_back("output.directory must not be empty");
  return p;
}

RunConfig parse_config(std::string_view text, const std::vector<std::string>& overrides,
                       const std::string& base_dir) {
  Document doc = parse_document(text);
  for (const auto& o : overrides) apply_override(doc, o);
  RunConfig config;
  std::vector<std::string> problems;
  bind_document(config, doc, problems);
  if (config.initial.file && !base_dir.empty()) {
    std::filesystem::path f(*config.initial.file);
    if (f.is_relative()) config.initial.file = (std::filesystem::path(base_dir) / f).lexically_normal().string();
  }
  // Type errors leave defaults in place, so range checks still run on the rest.
  for (auto& problem : validate(config)) problems.push_back(std::move(problem));
  if (!problems.empty()) throw ConfigError(std::move(problems));
  return config;
}

RunConfig load_config(const std::string& path, const std::vector<std::string>& overrides) {
  std::ifstream in(path);
  if (!in) throw ConfigError({"cannot read config file '" + path + "'"});
  std::stringstream ss;
  ss << in.rdbuf();
  const auto dir = std::filesystem::path(path).parent_path().string();
  return parse_config(ss.str(), overrides, dir.empty() ? "." : dir);
}

std::string serialize(const RunConfig& config) {
  std::string out;
  std::string section;
  for (const auto& k : schema()) {
    if (k.section != section) {
      if (!section.empty()) out += "\n";
      section = k.section;
      out += "[" + section + "]\n";
    }
    if (auto v = k.get(config)) out += k.key + " = " + format_value(*v) + "\n";
  }
  return out;
}

void set_scalar(RunConfig& config, const std::string& dotted, double value) {
  const auto dot = dotted.find('.');
  const KeySpec* k = dot == std::string::npos ? nullptr : find_key(dotted.substr(0, dot), dotted.substr(dot + 1));
  if (!k) throw std::invalid_argument("unknown key '" + dotted + "'");
  Value v{value};
  if (k->expected == "integer") v = Value{static_cast<std::int64_t>(std::llround(value))};
  if (!k->set(config, v)) throw std::invalid_argument(dotted + " is not a numeric key");
}

}  // namespace wavebreak::cli
