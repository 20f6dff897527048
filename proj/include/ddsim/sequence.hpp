#pragma once

#include <string>
#include <vector>

#include "ddsim/errors.hpp"

namespace ddsim {

struct SequenceElement {
  enum class Kind { delay, pulse };
  Kind kind;
  double duration = 0.0;  // delays only, >= 0
  double phase = 0.0;     // pulses only, radians; nominal angle is always pi

  static SequenceElement make_delay(double duration);
  static SequenceElement make_pulse(double phase);
  bool is_delay() const { return kind == Kind::delay; }
  bool is_pulse() const { return kind == Kind::pulse; }
};

struct PulseSequence {
  std::vector<SequenceElement> elements;
  std::string label;

  double cycle_time() const;  // sum of delay durations
  int n_pulses() const;
  // Time of each pulse measured from the cycle start.
  std::vector<double> pulse_times() const;
};

PulseSequence concat(const PulseSequence& a, const PulseSequence& b);

// [tau/2-X-tau-Y-tau/2]^2 (symmetric) or [tau-X-tau-Y]^2 (asymmetric).
// X is phase 0, Y is phase pi/2. Cycle time 4 tau.
PulseSequence build_xy4(double tau, bool symmetric);

// n pi pulses of a common phase: [tau/2-P-tau-...-P-tau/2] (symmetric,
// echo windows centered) or [tau-P]^n (asymmetric). Cycle time n tau.
PulseSequence build_cpmg(int n_pulses, double tau, bool symmetric,
                         double pulse_phase = 1.5707963267948966);

// XY-4 block followed by its time reverse; 8 pulses, cycle time 8 tau.
PulseSequence build_xy8(double tau, bool block_symmetric);

// XY-8 followed by its phase-inverted copy; 16 pulses, cycle time 16 tau.
PulseSequence build_xy16(double tau, bool block_symmetric);

// Concatenated dynamical decoupling. Level 1 is XY-4. Higher levels nest the
// previous level as [C-X-C-Y]^2 (asymmetric) or [H-X-C-Y-H]^2 (symmetric),
// where H is the first temporal half of the symmetric child cycle.
PulseSequence build_cdd(int level, double tau, bool symmetric);

// Reverse the element order; phases and durations unchanged. Adjacent
// zero-gap pulses stay distinct.
PulseSequence time_reverse(const PulseSequence& s);

// Every pulse phase advanced by pi (mod 2 pi); delays unchanged.
PulseSequence phase_invert(const PulseSequence& s);

}  // namespace ddsim
