#include "klein4/config.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "klein4/error.hpp"

namespace klein4 {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void bad(const std::string& key, const std::string& value, const std::string& why) {
  throw Error(ErrorCode::ConfigError, key + " = '" + value + "': " + why);
}

double parse_real(const std::string& text) {
  const std::string s = trim(text);
  if (s.empty()) throw Error(ErrorCode::ConfigError, "empty number");
  char* end = nullptr;
  const double x = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size()) throw Error(ErrorCode::ConfigError, "not a number: '" + s + "'");
  return x;
}

long parse_integer(const std::string& key, const std::string& text) {
  const std::string s = trim(text);
  char* end = nullptr;
  const long x = std::strtol(s.c_str(), &end, 10);
  if (s.empty() || end != s.c_str() + s.size()) bad(key, text, "expected an integer");
  return x;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep)) out.push_back(trim(item));
  return out;
}

std::array<int, 2> parse_pair(const std::string& key, const std::string& value, const std::string& seps) {
  const auto at = value.find_first_of(seps);
  if (at == std::string::npos) bad(key, value, "expected two integers");
  return {int(parse_integer(key, value.substr(0, at))), int(parse_integer(key, value.substr(at + 1)))};
}

const std::vector<std::string>& known_keys() {
  static const std::vector<std::string> keys{
      "r",        "poles",         "l",           "p1",        "phi_poles", "grid",   "samples",
      "scan_n",   "tol.report",    "tol.pointwise", "tol.invariance", "tol.scan_delta", "seed",
      "report",   "mesh",          "mesh_grid"};
  return keys;
}

}  // namespace

cplx parse_complex(const std::string& text) {
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  }
  if (s.empty()) throw Error(ErrorCode::ConfigError, "empty complex number");
  if (s.back() != 'i') return {parse_real(s), 0.0};
  s.pop_back();
  // split at the last sign that is not the leading one or part of an exponent
  std::size_t at = std::string::npos;
  for (std::size_t k = s.size(); k-- > 1;) {
    if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
      at = k;
      break;
    }
  }
  auto imag = [](const std::string& t) {
    if (t.empty() || t == "+") return 1.0;
    if (t == "-") return -1.0;
    return parse_real(t);
  };
  if (at == std::string::npos) return {0.0, imag(s)};
  return {parse_real(s.substr(0, at)), imag(s.substr(at))};
}

std::string format_double(double x) {
  char buf[40];
  for (int digits = 15; digits <= 17; ++digits) {
    std::snprintf(buf, sizeof buf, "%.*g", digits, x);
    if (std::strtod(buf, nullptr) == x) break;
  }
  return buf;
}

std::string format_complex(cplx z) {
  if (z.imag() == 0.0) return format_double(z.real());
  std::string im = format_double(z.imag());
  if (im[0] != '-') im = "+" + im;
  return format_double(z.real()) + im + "i";
}

std::string format_report_number(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

KeyValues parse_key_values(const std::string& text) {
  KeyValues kv;
  std::istringstream in(text);
  int lineno = 0;
  for (std::string line; std::getline(in, line);) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw Error(ErrorCode::ConfigError, "line " + std::to_string(lineno) + ": expected key = value");
    }
    kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return kv;
}

KeyValues read_key_values(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ConfigError, "cannot read config " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_key_values(buf.str());
}

RunConfig from_key_values(const KeyValues& kv, RunConfig cfg) {
  const auto& keys = known_keys();
  for (const auto& [key, value] : kv) {
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) bad(key, value, "unknown key");
    try {
      if (key == "r") {
        cfg.r = parse_real(value);
      } else if (key == "poles") {
        const auto items = split(value, ',');
        if (items.size() != 4) bad(key, value, "expected 4 comma-separated complex numbers");
        std::array<cplx, 4> p;
        for (int i = 0; i < 4; ++i) p[i] = parse_complex(items[i]);
        cfg.poles = p;
      } else if (key == "l") {
        cfg.l = int(parse_integer(key, value));
      } else if (key == "p1") {
        cfg.p1 = parse_complex(value);
      } else if (key == "phi_poles") {
        cfg.phi_poles = parse_pair(key, value, ",");
      } else if (key == "grid") {
        const auto g = parse_pair(key, value, "x,");
        cfg.grid_n = g[0];
        cfg.grid_m = g[1];
      } else if (key == "mesh_grid") {
        const auto g = parse_pair(key, value, "x,");
        cfg.mesh_n = g[0];
        cfg.mesh_m = g[1];
      } else if (key == "samples") {
        cfg.samples = int(parse_integer(key, value));
      } else if (key == "scan_n") {
        cfg.scan_n = int(parse_integer(key, value));
      } else if (key == "tol.report") {
        cfg.tol.report = parse_real(value);
      } else if (key == "tol.pointwise") {
        cfg.tol.pointwise = parse_real(value);
      } else if (key == "tol.invariance") {
        cfg.tol.invariance = parse_real(value);
      } else if (key == "tol.scan_delta") {
        cfg.tol.scan_delta = parse_real(value);
      } else if (key == "seed") {
        const long s = parse_integer(key, value);
        if (s < 0) bad(key, value, "seed must be non-negative");
        cfg.seed = std::uint64_t(s);
      } else if (key == "report") {
        cfg.report_path = value;
      } else if (key == "mesh") {
        cfg.mesh_path = value;
      }
    } catch (const Error& e) {
      if (e.code() != ErrorCode::ConfigError) throw;
      bad(key, value, e.what());
    }
  }
  if (!(cfg.r > 0.0)) throw Error(ErrorCode::ConfigError, "r must be positive");
  const auto [a, b] = cfg.phi_poles;
  if (a < 0 || a > 3 || b < 0 || b > 3 || a == b) {
    throw Error(ErrorCode::ConfigError, "phi_poles must be two distinct indices in 0..3");
  }
  if (cfg.grid_n < 4 || cfg.grid_m < 4) throw Error(ErrorCode::ConfigError, "grid must be at least 4x4");
  if (cfg.mesh_n < 2 || cfg.mesh_m < 2) throw Error(ErrorCode::ConfigError, "mesh_grid must be at least 2x2");
  if (cfg.samples < 1 || cfg.scan_n < 4) throw Error(ErrorCode::ConfigError, "samples and scan_n must be positive");
  for (double t : {cfg.tol.report, cfg.tol.pointwise, cfg.tol.invariance, cfg.tol.scan_delta}) {
    if (!(t > 0.0)) throw Error(ErrorCode::ConfigError, "tolerances must be positive");
  }
  return cfg;
}

RunConfig load_config(const std::optional<std::string>& file, const KeyValues& overrides,
                      const std::string& env_prefix) {
  KeyValues kv;
  if (file) kv = read_key_values(*file);
  for (const auto& key : known_keys()) {
    std::string name = env_prefix;
    for (char c : key) name += c == '.' ? '_' : char(std::toupper(static_cast<unsigned char>(c)));
    if (const char* v = std::getenv(name.c_str())) kv[key] = v;
  }
  for (const auto& [k, v] : overrides) kv[k] = v;
  return from_key_values(kv);
}

KleinParams RunConfig::klein_params() const {
  KleinParams p = reference_params(r);
  if (poles) p.poles = *poles;
  if (p1) p.p1 = *p1;
  p.phi_poles = phi_poles;
  return p;
}

std::vector<std::pair<std::string, std::string>> RunConfig::resolved() const {
  const KleinParams p = klein_params();
  std::string poles_text;
  for (int i = 0; i < 4; ++i) poles_text += (i ? ", " : "") + format_complex(p.poles[i]);
  return {
      {"r", format_double(r)},
      {"poles", poles_text},
      {"l", l ? std::to_string(*l) : "auto"},
      {"p1", format_complex(p.p1)},
      {"phi_poles", std::to_string(phi_poles[0]) + "," + std::to_string(phi_poles[1])},
      {"grid", std::to_string(grid_n) + "x" + std::to_string(grid_m)},
      {"samples", std::to_string(samples)},
      {"scan_n", std::to_string(scan_n)},
      {"seed", std::to_string(seed)},
      {"report", report_path},
      {"mesh", mesh_path},
      {"mesh_grid", std::to_string(mesh_n) + "x" + std::to_string(mesh_m)},
  };
}

std::vector<std::pair<std::string, std::string>>& Report::section(const std::string& name) {
  for (auto& s : sections_) {
    if (s.first == name) return s.second;
  }
  sections_.emplace_back(name, std::vector<std::pair<std::string, std::string>>{});
  return sections_.back().second;
}

void Report::set_config(const RunConfig& cfg) {
  auto& c = section("config");
  c = cfg.resolved();
  auto& t = section("tolerances");
  t = {{"tol.report", format_double(cfg.tol.report)},
       {"tol.pointwise", format_double(cfg.tol.pointwise)},
       {"tol.invariance", format_double(cfg.tol.invariance)},
       {"tol.scan_delta", format_double(cfg.tol.scan_delta)}};
}

void Report::add(const std::string& sec, const std::string& key, const std::string& value) {
  section(sec).emplace_back(key, value);
}

void Report::add(const std::string& sec, const std::string& key, double value) {
  add(sec, key, format_report_number(value));
}

void Report::check(const std::string& name, bool pass, double value, double bound) {
  if (!pass) ++failures_;
  add("checks", name, std::string(pass ? "PASS" : "FAIL") + " value=" + format_report_number(value) +
                          " bound=" + format_report_number(bound));
}

std::string Report::str() const {
  std::ostringstream out;
  out << kHeader << "\n";
  out << "command = " << command_ << "\n";
  for (const auto& [name, entries] : sections_) {
    out << "\n[" << name << "]\n";
    for (const auto& [k, v] : entries) out << k << " = " << v << "\n";
  }
  if (!notes_.empty()) {
    out << "\n[notes]\n";
    for (const auto& n : notes_) out << "# " << n << "\n";
  }
  out << "\n[status]\n";
  out << "failures = " << failures_ << "\n";
  out << "status = " << (failures_ == 0 ? "PASS" : "FAIL") << "\n";
  return out.str();
}

void Report::write(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, "cannot open " + path);
  out << str();
  if (!out) throw Error(ErrorCode::IoError, "write failed for " + path);
}

}  // namespace klein4
