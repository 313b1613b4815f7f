// remstab command line: analyze <config> [--json out.json] [--text out.txt]
//                                         [--oracle] [--blocks] [--tol <float>]
#include "remstab/analysis.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>

namespace {

std::optional<double> env_fd_step() {
  const char* s = std::getenv("REMSTAB_FD_STEP");
  if (!s || !*s) return std::nullopt;
  char* end = nullptr;
  const double v = std::strtod(s, &end);
  if (*end != '\0' || !(v > 0.0) || !std::isfinite(v))
    throw remstab::ConfigError(std::string("REMSTAB_FD_STEP must be a positive number, got '") + s + "'");
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Energy-momentum stability tests for relative equilibria"};
  app.require_subcommand(1);

  auto* analyze = app.add_subcommand("analyze", "Run the analyses described by a config file");
  std::string config_path, json_out, text_out;
  bool oracle = false, blocks = false;
  std::optional<double> tol;
  analyze->add_option("config", config_path, "Config file (key = value lines)")->required();
  analyze->add_option("--json", json_out, "Write the JSON report array here");
  analyze->add_option("--text", text_out, "Write the text summary here (default: stdout)");
  analyze->add_flag("--oracle", oracle, "Also run the full phase-space test");
  analyze->add_flag("--blocks", blocks, "Also run the block-diagonal test");
  analyze->add_option("--tol", tol, "Absolute definiteness tolerance")->check(CLI::PositiveNumber);

  app.add_subcommand("models", "List the model catalog");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (app.got_subcommand("models")) {
    for (const auto& id : remstab::catalog_ids()) std::cout << id << '\n';
    return 0;
  }

  remstab::AnalysisConfig cfg;
  try {
    cfg = remstab::load_config(config_path);
    if (const auto h = env_fd_step()) cfg.fd_step = h;
  } catch (const remstab::Error& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  }
  if (!json_out.empty()) cfg.json_path = json_out;
  if (!text_out.empty()) cfg.text_path = text_out;
  cfg.run_oracle = cfg.run_oracle || oracle;
  cfg.run_blocks = cfg.run_blocks || blocks;
  if (tol) cfg.definiteness_tol = tol;
  return remstab::run_config(cfg, std::cout, std::cerr);
}
