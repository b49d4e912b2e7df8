#include <cstdio>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "commands.hpp"
#include "klein4/error.hpp"

using namespace klein4;

namespace {

constexpr int kCheckFailed = 30;

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    out.push_back(parse_complex(text.substr(start, comma - start)).real());
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

Eigen::VectorXd to_vector(const std::string& text) {
  const auto v = parse_list(text);
  return Eigen::Map<const Eigen::VectorXd>(v.data(), Eigen::Index(v.size()));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Willmore Klein bottles in R^4: construction and verification"};
  app.require_subcommand(1);

  std::optional<std::string> config_file;
  std::vector<std::string> sets;
  std::optional<std::string> report_path;
  app::Options opt;
  bool quiet = false;
  auto common = [&](CLI::App* c) {
    c->add_option("--config", config_file, "key = value config file");
    c->add_option("--set", sets, "override a config key: key=value (repeatable)");
    c->add_option("--report", report_path, "report path (config key 'report')");
    c->add_option("--threads", opt.threads, "worker threads (0: hardware concurrency)")->check(CLI::NonNegativeNumber);
    c->add_flag("--quiet", quiet, "do not echo the report to stdout");
  };

  auto* inv = app.add_subcommand("involution", "antiholomorphic involutions of a torus");
  inv->require_subcommand(1);
  auto* classify = inv->add_subcommand("classify", "fixpoints and normal form of z -> a conj(z) + b");
  std::string lattice_text, a_text, b_text;
  classify->add_option("--lattice", lattice_text, "generators w1,w2")->required();
  classify->add_option("--a", a_text, "rotation part a")->required();
  classify->add_option("--b", b_text, "translation part b")->required();
  common(classify);

  auto* klein = app.add_subcommand("klein", "the Klein bottle family");
  klein->require_subcommand(1);
  auto* kbuild = klein->add_subcommand("build", "construct g, phi1 and the immersion triple");
  auto* kverify = klein->add_subcommand("verify", "full invariant suite");
  auto* kenergy = klein->add_subcommand("energy", "Willmore energy");
  auto* keuler = klein->add_subcommand("euler", "Euler normal number");
  auto* kmesh = klein->add_subcommand("mesh", "export an OBJ or PLY mesh (by extension of 'mesh')");
  std::optional<std::string> mesh_path;
  kmesh->add_option("--out", mesh_path, "mesh path (config key 'mesh')");
  for (auto* c : {kbuild, kverify, kenergy, keuler, kmesh}) common(c);
  for (auto* c : {kverify, kenergy, keuler, kmesh}) {
    c->add_flag("--reflect", opt.reflect, "compose with the ambient reflection x4 -> -x4");
  }

  auto* ver = app.add_subcommand("veronese", "the Veronese RP^2");
  ver->require_subcommand(1);
  auto* vverify = ver->add_subcommand("verify", "energy, Euler number and pointwise identities");
  vverify->add_flag("--reflect", opt.reflect, "compose with the ambient reflection x4 -> -x4");
  common(vverify);

  auto* glue = app.add_subcommand("glue", "rotation lemma for trace-free forms");
  glue->require_subcommand(1);
  auto* check = glue->add_subcommand("check-forms", "find (S, T) with a positive pairing");
  std::string pair_text;
  std::string p11, p12, q11, q12;
  bool allow_reflections = false;
  std::vector<double> bound_inputs;
  check->add_option("--veronese-pair", pair_text, "same | reflected")
      ->check(CLI::IsMember({"same", "reflected"}));
  check->add_option("--p11", p11, "comma-separated components");
  check->add_option("--p12", p12, "comma-separated components");
  check->add_option("--q11", q11, "comma-separated components");
  check->add_option("--q12", q12, "comma-separated components");
  check->add_flag("--allow-reflections", allow_reflections, "search T in O(k) instead of SO(k)");
  check->add_option("--bound", bound_inputs, "W1 W2 for the gluing bound (default 6pi 6pi)")->expected(2);
  common(check);

  auto* report = app.add_subcommand("report", "klein verify, veronese verify and glue checks in one report");
  common(report);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 10;
  }

  try {
    KeyValues overrides;
    for (const auto& s : sets) {
      const auto eq = s.find('=');
      if (eq == std::string::npos) throw Error(ErrorCode::ConfigError, "--set expects key=value, got '" + s + "'");
      overrides[s.substr(0, eq)] = s.substr(eq + 1);
    }
    if (report_path) overrides["report"] = *report_path;
    if (mesh_path) overrides["mesh"] = *mesh_path;
    const RunConfig cfg = load_config(config_file, overrides);

    std::optional<Report> rep;
    if (classify->parsed()) {
      const auto comma = lattice_text.find(',');
      if (comma == std::string::npos) throw Error(ErrorCode::ConfigError, "--lattice expects w1,w2");
      rep = app::involution_classify(parse_complex(lattice_text.substr(0, comma)),
                                     parse_complex(lattice_text.substr(comma + 1)), parse_complex(a_text),
                                     parse_complex(b_text));
    } else if (kbuild->parsed()) {
      rep = app::klein_build(cfg);
    } else if (kverify->parsed()) {
      rep = app::klein_verify(cfg, opt);
    } else if (kenergy->parsed()) {
      rep = app::klein_energy(cfg, opt);
    } else if (keuler->parsed()) {
      rep = app::klein_euler(cfg, opt);
    } else if (kmesh->parsed()) {
      rep = app::klein_mesh(cfg, opt);
    } else if (vverify->parsed()) {
      rep = app::veronese_verify(cfg, opt);
    } else if (check->parsed()) {
      app::GlueInput in;
      if (!pair_text.empty()) {
        in = app::veronese_glue_input(pair_text == "reflected" ? app::VeronesePair::Reflected
                                                               : app::VeronesePair::Same);
      } else {
        if (p11.empty() || p12.empty() || q11.empty() || q12.empty()) {
          throw Error(ErrorCode::ConfigError, "give --veronese-pair or all of --p11 --p12 --q11 --q12");
        }
        in.p.P11 = to_vector(p11);
        in.p.P12 = to_vector(p12);
        in.q.P11 = to_vector(q11);
        in.q.P12 = to_vector(q12);
        in.source = "command line";
      }
      in.restrict_T_special = !allow_reflections;
      if (bound_inputs.size() == 2) {
        in.W1 = bound_inputs[0];
        in.W2 = bound_inputs[1];
      }
      rep = app::glue_check(in);
    } else if (report->parsed()) {
      rep = app::full_report(cfg, opt);
    }

    rep->write(cfg.report_path);
    if (!quiet) std::cout << rep->str();
    return rep->all_passed() ? 0 : kCheckFailed;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
