#pragma once

#include <array>
#include <string>
#include <vector>

#include "ddsim/hamiltonian.hpp"
#include "ddsim/operators.hpp"
#include "ddsim/sequence.hpp"

namespace ddsim {

struct QuantumState {
  Operator rho;  // density matrix on system (x) bath, trace 1
};

// rho = I / 2^(K+1) + S_direction (x) I_bath / 2^K: bath maximally mixed,
// system polarized so the initial magnetization component equals 1.
QuantumState prepare_state(const HamiltonianParts& parts, Axis direction);

// (Mx, My, Mz) = Tr[rho * 2 S_alpha].
std::array<double, 3> magnetization(const QuantumState& state);

// Ordered product of delay propagators exp(-i H tau) and exact pulse
// unitaries exp(-i (1+eps) pi S_phi).
Operator cycle_propagator(const PulseSequence& s, const HamiltonianParts& parts,
                          double epsilon);

struct SampleSpec {
  enum class Mode { cycle_boundaries, window_centers, every_pulse, uniform };
  Mode mode = Mode::cycle_boundaries;
  double dt = 0.0;  // uniform mode only, > 0

  static SampleSpec cycle_boundaries();
  static SampleSpec window_centers();
  static SampleSpec every_pulse();
  static SampleSpec uniform(double dt);
};

struct Trajectory {
  std::vector<double> times;
  std::vector<double> mx, my, mz;
  SampleSpec sample_points;
  double cycle_time = 0.0;
  int n_pulses_per_cycle = 0;
  std::vector<std::string> warnings;
};

// Element-wise propagation over n_cycles repetitions, recording magnetization
// at the requested sample points. All modes include the t = 0 sample.
// window_centers places samples midway through each maximal delay run lying
// between two pulses; runs merge across cycle boundaries, and the half
// windows before the first and after the last pulse carry no sample.
// Zero-gap pulse junctions have no window and are skipped with a warning.
Trajectory evolve(const PulseSequence& s, const HamiltonianParts& parts,
                  double epsilon, const QuantumState& rho0, int n_cycles,
                  const SampleSpec& sample);

enum class DecayChannel { my, total };

struct DecayResult {
  enum class Status { ok, not_decayed };
  Status status = Status::not_decayed;
  double time = 0.0;        // valid when status == ok
  double last_value = 0.0;  // signal at the final sample
};

// First crossing of 1/e, linearly interpolated between the bracketing
// samples. The channel signal must start at 1 (within 1e-6); `total` uses
// |M| = sqrt(Mx^2 + My^2 + Mz^2).
DecayResult decay_time(const Trajectory& traj, DecayChannel channel);

// Precession per pulse: unwrap theta = atan2(-Mx, My) over cycle-boundary
// samples, least-squares the slope, divide by pulses per cycle. Positive
// angle rotates +y toward -x. Fits the initial run of samples with
// transverse magnitude above 0.1; throws DegenerateFitError if fewer than
// three qualify.
double precession_angle(const Trajectory& traj, int n_pulses_per_cycle);

// Process fidelity of the bath-averaged qubit channel after n_cycles against
// the identity: evolve the operator inputs {I/2, S_x, S_y, S_z} with the bath
// maximally mixed, trace the bath, build the process matrix chi in the
// unnormalized Pauli basis, return Re chi_00.
double process_fidelity(const PulseSequence& s, const HamiltonianParts& parts,
                        double epsilon, int n_cycles);

// Re chi_00 for each cycle count 1..n_cycles (single propagator power loop).
std::vector<double> process_fidelity_series(const PulseSequence& s,
                                            const HamiltonianParts& parts,
                                            double epsilon, int n_cycles);

}  // namespace ddsim
