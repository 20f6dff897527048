#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ddsim/hamiltonian.hpp"
#include "ddsim/sequence.hpp"
#include "ddsim/simulation.hpp"

namespace ddsim {

// Named-builder selection of a pulse sequence.
struct SequenceChoice {
  std::string builder;  // cpmg | xy4 | xy8 | xy16 | cdd; empty when DSL used
  double tau = 0.0;
  bool symmetric = true;
  int n_pulses = 2;        // cpmg only
  double phase_deg = 90.0; // cpmg only
  int level = 2;           // cdd only
  std::string dsl;         // inline DSL text; exclusive with builder
};

struct SweepAxis {
  std::string path;  // dotted config path, e.g. "sequence.tau"
  std::vector<nlohmann::json> values;
};

struct ExperimentConfig {
  HamiltonianSpec hamiltonian;
  // Populated when the hamiltonian block asks for sampled couplings.
  std::optional<double> sample_scale_b;
  std::optional<double> sample_scale_d;
  SequenceChoice sequence;
  int n_cycles = 1;
  SampleSpec sample_points;
  std::vector<SweepAxis> sweep;
  std::string outputs = "out";
  int workers = 1;

  static ExperimentConfig from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;
};

PulseSequence realize_sequence(const SequenceChoice& choice);
HamiltonianParts realize_hamiltonian(const ExperimentConfig& config);

struct PointMetrics {
  int point = 0;
  nlohmann::json overrides;
  std::string status;  // "ok" or "error"
  std::string message;
  nlohmann::json metrics;  // decay times, precession, final_my, fidelity_series
};

struct RunResult {
  std::vector<PointMetrics> points;
  std::vector<std::string> warnings;
};

// Expand the sweep (cartesian product, last axis fastest), run every point,
// and write per-point trajectory CSV, metrics JSON and average-Hamiltonian
// report into config.outputs. Failures are recorded per point and do not
// abort the run. Deterministic for a fixed config.
RunResult run_config(const ExperimentConfig& config);

// Parse and validate a config file; throws ConfigError with a message.
ExperimentConfig load_config(const std::string& path);

std::string trajectory_csv(const Trajectory& traj);  // 12 significant digits

}  // namespace ddsim
