// symred — reduce left-invariant symplectic connections on T*G at a coadjoint value μ.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "symred/errors.hpp"
#include "symred/pipeline.hpp"

namespace {

int emit(const nlohmann::json& report, const std::string& out) {
  const std::string text = symred::dump_json(report);
  if (out.empty()) {
    std::cout << text;
    return 0;
  }
  std::ofstream f(out);
  if (!f) {
    std::cerr << "symred: cannot write " << out << "\n";
    return 1;
  }
  f << text;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Marsden-Weinstein reduction of symplectic connections on T*G = G x g*"};
  app.require_subcommand(1, 1);

  std::string config_path, out_path;
  symred::Overrides ov;
  std::uint64_t seed = 0;
  double fd_step = 0.0, tol_scale = 0.0;

  const std::vector<std::pair<std::string, std::string>> verbs = {
      {"validate", "check the algebra, the stabilizer and the regularity of the level set"},
      {"reduce", "build the reduced connection and check torsion, symplecticity and the KKS form"},
      {"curvature", "compute the reduced curvature by the closed formula and by finite differences"},
      {"verify", "run every check; exit 1 if any fails"},
      {"export-connection", "write frame and reduced Christoffel symbols"},
  };
  for (const auto& [name, help] : verbs) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("--config", config_path, "JSON case configuration")->required();
    sub->add_option("--out", out_path, "write the JSON report here instead of stdout");
    sub->add_option("--seed", seed, "override the sampling seed");
    sub->add_option("--fd-step", fd_step, "override the inner finite-difference step");
    sub->add_option("--tol-scale", tol_scale, "multiply every tolerance by this factor");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return symred::exit_code(symred::ErrorKind::ConfigError);
  }

  const std::string verb = app.get_subcommands().front()->get_name();
  const auto* sub = app.get_subcommands().front();
  if (sub->count("--seed")) ov.seed = seed;
  if (sub->count("--fd-step")) ov.fd_step = fd_step;
  if (sub->count("--tol-scale")) ov.tol_scale = tol_scale;

  nlohmann::json config;
  std::ifstream in(config_path);
  if (!in) {
    std::cerr << "symred: cannot read config " << config_path << "\n";
    return symred::exit_code(symred::ErrorKind::ConfigError);
  }
  try {
    in >> config;
  } catch (const nlohmann::json::parse_error& e) {
    std::cerr << "symred: config is not valid JSON: " << e.what() << "\n";
    return symred::exit_code(symred::ErrorKind::ConfigError);
  }

  const auto result = symred::run_command(verb, config, ov);
  if (result.report.contains("error") && !result.report["error"].is_null())
    std::cerr << "symred: " << result.report["error"]["message"].get<std::string>() << "\n";
  if (emit(result.report, out_path) != 0 && result.exit_code == 0) return 1;
  return result.exit_code;
}
