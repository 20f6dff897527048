#include <cstdio>
#include <string>

#include <CLI11.hpp>

#include "ddsim/average_hamiltonian.hpp"
#include "ddsim/config.hpp"
#include "ddsim/presets.hpp"
#include "ddsim/sequence_dsl.hpp"

namespace {

int run_simulate(const std::string& config_path) {
  const ddsim::ExperimentConfig cfg = ddsim::load_config(config_path);
  const ddsim::RunResult result = ddsim::run_config(cfg);
  int ok = 0;
  for (const auto& p : result.points)
    if (p.status == "ok") ++ok;
  std::printf("wrote %s: %d/%zu points ok\n", cfg.outputs.c_str(), ok,
              result.points.size());
  for (const auto& w : result.warnings)
    std::printf("warning: %s\n", w.c_str());
  return 0;
}

int run_aht(const std::string& config_path, int order) {
  const ddsim::ExperimentConfig cfg = ddsim::load_config(config_path);
  const ddsim::HamiltonianParts parts = ddsim::realize_hamiltonian(cfg);
  const ddsim::PulseSequence seq = ddsim::realize_sequence(cfg.sequence);
  const ddsim::AverageHamiltonian avg = ddsim::average_hamiltonian(
      seq, parts, cfg.hamiltonian.epsilon, order);
  std::printf("sequence: %s\n%s", seq.label.c_str(),
              ddsim::aht_report(avg).c_str());
  return 0;
}

int run_reproduce(const std::string& figure, const std::string& out_dir) {
  if (!ddsim::has_preset(figure)) {
    std::fprintf(stderr, "unknown figure id '%s' (have:", figure.c_str());
    for (const auto& n : ddsim::preset_names())
      std::fprintf(stderr, " %s", n.c_str());
    std::fprintf(stderr, ")\n");
    return 2;
  }
  nlohmann::json doc = ddsim::preset_config(figure);
  if (!out_dir.empty()) doc["outputs"] = out_dir;
  const ddsim::ExperimentConfig cfg = ddsim::ExperimentConfig::from_json(doc);
  const ddsim::RunResult result = ddsim::run_config(cfg);
  int ok = 0;
  for (const auto& p : result.points)
    if (p.status == "ok") ++ok;
  std::printf("%s: wrote %s (%d/%zu points ok)\n", figure.c_str(),
              cfg.outputs.c_str(), ok, result.points.size());
  for (const auto& w : result.warnings)
    std::printf("warning: %s\n", w.c_str());
  return 0;
}

int run_parse(const std::string& dsl) {
  const ddsim::PulseSequence s = ddsim::parse_sequence(dsl);
  std::printf("%s\n", ddsim::format_sequence(s).c_str());
  std::printf("pulses: %d  cycle_time: %.12g us\n", s.n_pulses(),
              s.cycle_time());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dynamical-decoupling pulse sequence simulator"};
  app.require_subcommand(1);

  std::string config_path, figure, out_dir, dsl_text;
  int order = 2;

  CLI::App* simulate =
      app.add_subcommand("simulate", "Run a config file (with sweeps)");
  simulate->add_option("--config", config_path, "config JSON file")
      ->required();

  CLI::App* aht = app.add_subcommand(
      "aht", "Print the average Hamiltonian for a config's sequence");
  aht->add_option("--config", config_path, "config JSON file")->required();
  aht->add_option("--order", order, "truncation order 0..2")
      ->check(CLI::Range(0, 2));

  CLI::App* reproduce = app.add_subcommand(
      "reproduce", "Run a bundled desk-scale figure preset");
  reproduce->add_option("figure", figure, "fig2|fig3|fig4|fig5|fig7|fig8|fig9")
      ->required();
  reproduce->add_option("--out", out_dir, "output directory override");

  CLI::App* parse =
      app.add_subcommand("parse", "Parse sequence DSL, print canonical form");
  parse->add_option("--dsl", dsl_text, "sequence text")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*simulate) return run_simulate(config_path);
    if (*aht) return run_aht(config_path, order);
    if (*reproduce) return run_reproduce(figure, out_dir);
    if (*parse) return run_parse(dsl_text);
  } catch (const ddsim::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 2;
}
