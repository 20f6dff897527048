#include "ddsim/sequence.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace ddsim {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2;
constexpr double kTwoPi = 2 * std::numbers::pi;

void require_tau(double tau) {
  if (!(tau > 0.0) || !std::isfinite(tau))
    throw ArgumentError("sequence: tau must be positive and finite");
}

PulseSequence with_label(PulseSequence s, std::string label) {
  s.label = std::move(label);
  return s;
}

std::string sym_tag(bool symmetric) { return symmetric ? "(S)" : "(A)"; }

// First temporal half of a palindromic-timing cycle. The split point must
// fall on an element boundary; it never lands inside a pulse for the
// constructions used here.
PulseSequence first_half(const PulseSequence& s) {
  const double half = s.cycle_time() / 2;
  const double tol = 1e-9 * std::max(1.0, s.cycle_time());
  PulseSequence out;
  double acc = 0.0;
  for (const auto& e : s.elements) {
    if (std::abs(acc - half) <= tol) return out;
    out.elements.push_back(e);
    if (e.is_delay()) acc += e.duration;
    if (acc > half + tol)
      throw Error("sequence: half-cycle split falls inside a delay");
  }
  if (std::abs(acc - half) <= tol) return out;
  throw Error("sequence: half-cycle split not found");
}

}  // namespace

SequenceElement SequenceElement::make_delay(double duration) {
  if (!(duration >= 0.0) || !std::isfinite(duration))
    throw ArgumentError("sequence: delay duration must be >= 0 and finite");
  SequenceElement e;
  e.kind = Kind::delay;
  e.duration = duration;
  return e;
}

SequenceElement SequenceElement::make_pulse(double phase) {
  if (!std::isfinite(phase))
    throw ArgumentError("sequence: pulse phase must be finite");
  SequenceElement e;
  e.kind = Kind::pulse;
  e.phase = phase;
  return e;
}

double PulseSequence::cycle_time() const {
  double t = 0.0;
  for (const auto& e : elements)
    if (e.is_delay()) t += e.duration;
  return t;
}

int PulseSequence::n_pulses() const {
  return static_cast<int>(
      std::count_if(elements.begin(), elements.end(),
                    [](const SequenceElement& e) { return e.is_pulse(); }));
}

std::vector<double> PulseSequence::pulse_times() const {
  std::vector<double> times;
  double t = 0.0;
  for (const auto& e : elements) {
    if (e.is_delay())
      t += e.duration;
    else
      times.push_back(t);
  }
  return times;
}

PulseSequence concat(const PulseSequence& a, const PulseSequence& b) {
  PulseSequence out = a;
  out.elements.insert(out.elements.end(), b.elements.begin(),
                      b.elements.end());
  out.label = a.label.empty() ? b.label : a.label;
  return out;
}

PulseSequence build_xy4(double tau, bool symmetric) {
  require_tau(tau);
  const auto d = [](double t) { return SequenceElement::make_delay(t); };
  const auto x = SequenceElement::make_pulse(0.0);
  const auto y = SequenceElement::make_pulse(kHalfPi);
  PulseSequence s;
  for (int rep = 0; rep < 2; ++rep) {
    if (symmetric) {
      s.elements.push_back(d(tau / 2));
      s.elements.push_back(x);
      s.elements.push_back(d(tau));
      s.elements.push_back(y);
      s.elements.push_back(d(tau / 2));
    } else {
      s.elements.push_back(d(tau));
      s.elements.push_back(x);
      s.elements.push_back(d(tau));
      s.elements.push_back(y);
    }
  }
  return with_label(std::move(s), "XY-4" + sym_tag(symmetric));
}

PulseSequence build_cpmg(int n_pulses, double tau, bool symmetric,
                         double pulse_phase) {
  if (n_pulses < 1) throw ArgumentError("sequence: n_pulses must be >= 1");
  require_tau(tau);
  const auto d = [](double t) { return SequenceElement::make_delay(t); };
  const auto p = SequenceElement::make_pulse(pulse_phase);
  PulseSequence s;
  if (symmetric) {
    s.elements.push_back(d(tau / 2));
    s.elements.push_back(p);
    for (int k = 1; k < n_pulses; ++k) {
      s.elements.push_back(d(tau));
      s.elements.push_back(p);
    }
    s.elements.push_back(d(tau / 2));
  } else {
    for (int k = 0; k < n_pulses; ++k) {
      s.elements.push_back(d(tau));
      s.elements.push_back(p);
    }
  }
  return with_label(std::move(s), "CPMG-" + std::to_string(n_pulses) +
                                      sym_tag(symmetric));
}

PulseSequence build_xy8(double tau, bool block_symmetric) {
  const PulseSequence b = build_xy4(tau, block_symmetric);
  return with_label(concat(b, time_reverse(b)),
                    "XY-8" + sym_tag(block_symmetric));
}

PulseSequence build_xy16(double tau, bool block_symmetric) {
  const PulseSequence e = build_xy8(tau, block_symmetric);
  return with_label(concat(e, phase_invert(e)),
                    "XY-16" + sym_tag(block_symmetric));
}

PulseSequence build_cdd(int level, double tau, bool symmetric) {
  if (level < 1) throw ArgumentError("sequence: cdd level must be >= 1");
  require_tau(tau);
  if (level == 1)
    return with_label(build_xy4(tau, symmetric),
                      "CDD-1" + sym_tag(symmetric));
  const PulseSequence c = build_cdd(level - 1, tau, symmetric);
  const auto x = SequenceElement::make_pulse(0.0);
  const auto y = SequenceElement::make_pulse(kHalfPi);
  PulseSequence s;
  if (symmetric) {
    const PulseSequence h = first_half(c);
    for (int rep = 0; rep < 2; ++rep) {
      s = concat(s, h);
      s.elements.push_back(x);
      s = concat(s, c);
      s.elements.push_back(y);
      s = concat(s, h);
    }
  } else {
    for (int rep = 0; rep < 2; ++rep) {
      s = concat(s, c);
      s.elements.push_back(x);
      s = concat(s, c);
      s.elements.push_back(y);
    }
  }
  return with_label(std::move(s),
                    "CDD-" + std::to_string(level) + sym_tag(symmetric));
}

PulseSequence time_reverse(const PulseSequence& s) {
  PulseSequence out = s;
  std::reverse(out.elements.begin(), out.elements.end());
  return out;
}

PulseSequence phase_invert(const PulseSequence& s) {
  PulseSequence out = s;
  for (auto& e : out.elements) {
    if (!e.is_pulse()) continue;
    e.phase = std::fmod(e.phase + std::numbers::pi, kTwoPi);
    if (e.phase < 0) e.phase += kTwoPi;
  }
  return out;
}

}  // namespace ddsim
