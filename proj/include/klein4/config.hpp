#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "klein4/immersion.hpp"

namespace klein4 {

/// "re+imi" style: "0.5", "-2i", "0.1+0.125i", "1e-3-4i". Throws ConfigError.
cplx parse_complex(const std::string& text);
std::string format_complex(cplx z);
/// Shortest decimal text that reads back to the same double.
std::string format_double(double x);

/// Flat key = value text; '#' starts a comment. Keys are case-sensitive.
using KeyValues = std::map<std::string, std::string>;
KeyValues parse_key_values(const std::string& text);
KeyValues read_key_values(const std::string& path);

struct Tolerances {
  double report = 1e-3;      // relative tolerance of reported integrals
  double pointwise = 1e-6;   // conformality, Wintgen and twistor residuals
  double invariance = 1e-10; // f o I = f
  double scan_delta = 0.05;  // parameter separation for the self-intersection scan
};

struct RunConfig {
  double r = 1.0;
  std::optional<std::array<cplx, 4>> poles;  // the reference poles when absent
  std::optional<int> l;                      // checked against the parity snap when present
  std::optional<cplx> p1;
  std::array<int, 2> phi_poles{0, 1};
  int grid_n = 256, grid_m = 256;
  int samples = 1024;
  int scan_n = 200;
  Tolerances tol;
  std::uint64_t seed = 1;
  std::string report_path = "klein4-report.txt";
  std::string mesh_path = "klein4-mesh.obj";
  int mesh_n = 64, mesh_m = 64;

  KleinParams klein_params() const;
  /// Resolved config as ordered key = value pairs (the same keys accepted by from_key_values).
  std::vector<std::pair<std::string, std::string>> resolved() const;
};

/// Applies defaults, then `file`, then environment variables
/// <env_prefix><KEY> (key upper-cased, '.' mapped to '_'), then `overrides`.
/// Unknown keys and malformed values throw ConfigError.
RunConfig load_config(const std::optional<std::string>& file, const KeyValues& overrides,
                      const std::string& env_prefix = "KLEIN4_");
RunConfig from_key_values(const KeyValues& kv, RunConfig base = {});

/// Structured text report with a versioned header and ordered sections.
class Report {
 public:
  static constexpr const char* kHeader = "# klein4-report v1";

  explicit Report(std::string command) : command_(std::move(command)) {}

  void set_config(const RunConfig& cfg);
  void add(const std::string& section, const std::string& key, const std::string& value);
  void add(const std::string& section, const std::string& key, double value);
  /// Records "PASS"/"FAIL" with the measured value and the bound.
  void check(const std::string& name, bool pass, double value, double bound);
  void note(const std::string& text) { notes_.push_back(text); }

  bool all_passed() const { return failures_ == 0; }
  int failures() const { return failures_; }
  std::string str() const;
  void write(const std::string& path) const;  // throws IoError

 private:
  std::string command_;
  std::vector<std::pair<std::string, std::vector<std::pair<std::string, std::string>>>> sections_;
  std::vector<std::string> notes_;
  int failures_ = 0;

  std::vector<std::pair<std::string, std::string>>& section(const std::string& name);
};

/// %.12g
std::string format_report_number(double x);

}  // namespace klein4
