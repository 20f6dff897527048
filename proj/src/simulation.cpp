#include "ddsim/simulation.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numbers>

namespace ddsim {

namespace {

constexpr double kPi = std::numbers::pi;
const Complex kI{0.0, 1.0};

// Delay propagators from one eigendecomposition of H_total; every
// exp(-i H t) is then two dense multiplies regardless of t.
class DelayPropagators {
 public:
  explicit DelayPropagators(const Operator& h) {
    if (!is_hermitian(h, tolerances().hermiticity))
      throw ArgumentError("evolve: hamiltonian is not Hermitian");
    Eigen::SelfAdjointEigenSolver<Operator> es((0.5 * (h + h.adjoint())).eval());
    vecs_ = es.eigenvectors();
    vals_ = es.eigenvalues();
  }

  Operator at(double t) const {
    Eigen::VectorXcd phases(vals_.size());
    for (Eigen::Index k = 0; k < vals_.size(); ++k)
      phases[k] = std::exp(-kI * vals_[k] * t);
    return vecs_ * phases.asDiagonal() * vecs_.adjoint();
  }

 private:
  Operator vecs_;
  Eigen::VectorXd vals_;
};

// Exact flip-angle-error pulse exp(-i (1+eps) pi S_phi), full space.
Operator pulse_unitary_full(double phase, double epsilon, int n_sites) {
  const double half = (1.0 + epsilon) * kPi / 2.0;
  Operator p2 = std::cos(half) * identity_op(2) -
                kI * std::sin(half) *
                    (std::cos(phase) * pauli(Axis::x) +
                     std::sin(phase) * pauli(Axis::y));
  if (n_sites == 1) return p2;
  return kron(p2, identity_op(1 << (n_sites - 1)));
}

struct SpinOps {
  Operator sx, sy, sz;
};

SpinOps system_spin_ops(int n_sites) {
  return {embed_spin_op(0, Axis::x, n_sites),
          embed_spin_op(0, Axis::y, n_sites),
          embed_spin_op(0, Axis::z, n_sites)};
}

void record_sample(Trajectory& traj, const SpinOps& ops, const Operator& rho,
                   double t) {
  traj.times.push_back(t);
  traj.mx.push_back(2.0 * (ops.sx * rho).trace().real());
  traj.my.push_back(2.0 * (ops.sy * rho).trace().real());
  traj.mz.push_back(2.0 * (ops.sz * rho).trace().real());
}

void validate_parts(const HamiltonianParts& parts) {
  if (parts.dim() != (2 << parts.n_bath()))
    throw ArgumentError("simulation: hamiltonian dimension mismatch");
}

}  // namespace

SampleSpec SampleSpec::cycle_boundaries() { return {Mode::cycle_boundaries}; }
SampleSpec SampleSpec::window_centers() { return {Mode::window_centers}; }
SampleSpec SampleSpec::every_pulse() { return {Mode::every_pulse}; }
SampleSpec SampleSpec::uniform(double dt) {
  if (!(dt > 0.0) || !std::isfinite(dt))
    throw ArgumentError("SampleSpec::uniform: dt must be positive");
  return {Mode::uniform, dt};
}

QuantumState prepare_state(const HamiltonianParts& parts, Axis direction) {
  validate_parts(parts);
  const int n_sites = 1 + parts.n_bath();
  const int bath_dim = 1 << parts.n_bath();
  Operator rho = Operator::Identity(parts.dim(), parts.dim()) /
                 static_cast<double>(parts.dim());
  rho += embed_spin_op(0, direction, n_sites) / static_cast<double>(bath_dim);
  return {std::move(rho)};
}

std::array<double, 3> magnetization(const QuantumState& state) {
  const int dim = static_cast<int>(state.rho.rows());
  int n_sites = 0;
  while ((1 << n_sites) < dim) ++n_sites;
  const SpinOps ops = system_spin_ops(n_sites);
  return {2.0 * (ops.sx * state.rho).trace().real(),
          2.0 * (ops.sy * state.rho).trace().real(),
          2.0 * (ops.sz * state.rho).trace().real()};
}

Operator cycle_propagator(const PulseSequence& s, const HamiltonianParts& parts,
                          double epsilon) {
  if (s.elements.empty())
    throw ArgumentError("cycle_propagator: sequence has no elements");
  validate_parts(parts);
  const int n_sites = 1 + parts.n_bath();
  const DelayPropagators delay(parts.h_total);
  Operator u = identity_op(parts.dim());
  for (const auto& e : s.elements) {
    if (e.is_delay())
      u = delay.at(e.duration) * u;
    else
      u = pulse_unitary_full(e.phase, epsilon, n_sites) * u;
  }
  return u;
}

namespace {

// One flattened pass over n_cycles repetitions of the element list,
// applying pulses in order and splitting delays at the requested sample
// times (strictly interior or at piece starts). Samples at t = 0 are the
// caller's responsibility.
void timed_walk(const PulseSequence& s, int n_cycles,
                const DelayPropagators& delay,
                const std::vector<Operator>& pulse_ops, Operator& rho,
                const std::vector<double>& sample_times, Trajectory& traj,
                const SpinOps& ops) {
  size_t si = 0;
  double t = 0.0;
  const auto advance = [&](double dt) {
    if (dt <= 0.0) return;
    const Operator u = delay.at(dt);
    rho = u * rho * u.adjoint();
    t += dt;
  };
  for (int c = 0; c < n_cycles; ++c) {
    size_t pulse_idx = 0;
    for (const auto& e : s.elements) {
      if (e.is_pulse()) {
        const Operator& u = pulse_ops[pulse_idx++];
        rho = u * rho * u.adjoint();
        continue;
      }
      const double t_end = t + e.duration;
      while (si < sample_times.size() && sample_times[si] < t_end) {
        advance(sample_times[si] - t);
        record_sample(traj, ops, rho, sample_times[si]);
        t = sample_times[si];  // absorb roundoff drift
        ++si;
      }
      advance(t_end - t);
      t = t_end;
    }
  }
  while (si < sample_times.size()) {
    record_sample(traj, ops, rho, sample_times[si]);
    ++si;
  }
}

}  // namespace

Trajectory evolve(const PulseSequence& s, const HamiltonianParts& parts,
                  double epsilon, const QuantumState& rho0, int n_cycles,
                  const SampleSpec& sample) {
  if (s.elements.empty())
    throw ArgumentError("evolve: sequence has no elements");
  if (n_cycles < 1) throw ArgumentError("evolve: n_cycles must be >= 1");
  validate_parts(parts);
  if (rho0.rho.rows() != parts.dim() || rho0.rho.cols() != parts.dim())
    throw ArgumentError("evolve: state dimension mismatch");
  if (sample.mode == SampleSpec::Mode::uniform && !(sample.dt > 0.0))
    throw ArgumentError("evolve: uniform sampling needs dt > 0");

  const int n_sites = 1 + parts.n_bath();
  const SpinOps ops = system_spin_ops(n_sites);
  const DelayPropagators delay(parts.h_total);

  std::vector<Operator> pulse_ops;
  for (const auto& e : s.elements)
    if (e.is_pulse())
      pulse_ops.push_back(pulse_unitary_full(e.phase, epsilon, n_sites));

  Trajectory traj;
  traj.sample_points = sample;
  traj.cycle_time = s.cycle_time();
  traj.n_pulses_per_cycle = s.n_pulses();

  Operator rho = rho0.rho;
  record_sample(traj, ops, rho, 0.0);

  switch (sample.mode) {
    case SampleSpec::Mode::cycle_boundaries: {
      Operator u = cycle_propagator(s, parts, epsilon);
      for (int c = 1; c <= n_cycles; ++c) {
        rho = u * rho * u.adjoint();
        record_sample(traj, ops, rho, c * traj.cycle_time);
      }
      break;
    }
    case SampleSpec::Mode::every_pulse: {
      double t = 0.0;
      for (int c = 0; c < n_cycles; ++c) {
        size_t pulse_idx = 0;
        for (const auto& e : s.elements) {
          if (e.is_delay()) {
            const Operator u = delay.at(e.duration);
            rho = u * rho * u.adjoint();
            t += e.duration;
          } else {
            const Operator& u = pulse_ops[pulse_idx++];
            rho = u * rho * u.adjoint();
            record_sample(traj, ops, rho, t);
          }
        }
      }
      break;
    }
    case SampleSpec::Mode::window_centers: {
      // Pure timing pass over the flattened cycles: maximal delay runs
      // bounded by pulses on both sides get a midpoint sample; runs merge
      // across cycle boundaries.
      std::vector<double> centers;
      int degenerate = 0;
      double t = 0.0, run_start = 0.0, run_dur = 0.0;
      bool pulse_seen = false;
      for (int c = 0; c < n_cycles; ++c) {
        for (const auto& e : s.elements) {
          if (e.is_delay()) {
            if (run_dur == 0.0) run_start = t;
            run_dur += e.duration;
            t += e.duration;
            continue;
          }
          if (pulse_seen) {
            if (run_dur > 0.0)
              centers.push_back(run_start + run_dur / 2);
            else
              ++degenerate;
          }
          pulse_seen = true;
          run_dur = 0.0;
        }
      }
      if (degenerate > 0)
        traj.warnings.push_back(
            "window_centers: " + std::to_string(degenerate) +
            " zero-gap pulse junction(s) have no window; samples skipped");
      timed_walk(s, n_cycles, delay, pulse_ops, rho, centers, traj, ops);
      break;
    }
    case SampleSpec::Mode::uniform: {
      const double total = n_cycles * traj.cycle_time;
      std::vector<double> times;
      for (double t = sample.dt; t <= total + 1e-12 * std::max(1.0, total);
           t += sample.dt)
        times.push_back(std::min(t, total));
      timed_walk(s, n_cycles, delay, pulse_ops, rho, times, traj, ops);
      break;
    }
  }
  return traj;
}

DecayResult decay_time(const Trajectory& traj, DecayChannel channel) {
  if (traj.times.size() < 2)
    throw ArgumentError("decay_time: trajectory needs at least two samples");
  std::vector<double> v(traj.times.size());
  for (size_t i = 0; i < v.size(); ++i) {
    if (channel == DecayChannel::my)
      v[i] = traj.my[i];
    else
      v[i] = std::sqrt(traj.mx[i] * traj.mx[i] + traj.my[i] * traj.my[i] +
                       traj.mz[i] * traj.mz[i]);
  }
  if (std::abs(v.front() - 1.0) > 1e-6)
    throw ArgumentError("decay_time: channel signal does not start at 1");
  const double threshold = std::exp(-1.0);
  DecayResult res;
  res.last_value = v.back();
  for (size_t i = 1; i < v.size(); ++i) {
    if (v[i] < threshold) {
      const double frac = (v[i - 1] - threshold) / (v[i - 1] - v[i]);
      res.status = DecayResult::Status::ok;
      res.time = traj.times[i - 1] + frac * (traj.times[i] - traj.times[i - 1]);
      return res;
    }
  }
  res.status = DecayResult::Status::not_decayed;
  return res;
}

double precession_angle(const Trajectory& traj, int n_pulses_per_cycle) {
  if (n_pulses_per_cycle < 1)
    throw ArgumentError("precession_angle: n_pulses_per_cycle must be >= 1");
  if (!(traj.cycle_time > 0.0))
    throw ArgumentError("precession_angle: trajectory lacks a cycle time");
  std::vector<double> x, theta;
  double prev = 0.0;
  for (size_t i = 0; i < traj.times.size(); ++i) {
    const double trans =
        std::sqrt(traj.mx[i] * traj.mx[i] + traj.my[i] * traj.my[i]);
    if (trans <= 0.1) break;  // fit only the initial coherent stretch
    double th = std::atan2(-traj.mx[i], traj.my[i]);
    if (!x.empty()) {
      while (th - prev > kPi) th -= 2 * kPi;
      while (th - prev < -kPi) th += 2 * kPi;
    }
    x.push_back(traj.times[i] / traj.cycle_time);
    theta.push_back(th);
    prev = th;
  }
  if (x.size() < 3)
    throw DegenerateFitError(
        "precession_angle: fewer than three samples with transverse "
        "magnetization above 0.1");
  const size_t n = x.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < n; ++i) {
    sx += x[i];
    sy += theta[i];
    sxx += x[i] * x[i];
    sxy += x[i] * theta[i];
  }
  const double denom = n * sxx - sx * sx;
  if (denom == 0.0)
    throw DegenerateFitError("precession_angle: degenerate sample times");
  const double slope = (n * sxy - sx * sy) / denom;
  return slope / n_pulses_per_cycle;
}

namespace {

// Column-major vec of a 2x2 operator.
Eigen::Vector4cd vec2(const Operator& a) {
  Eigen::Vector4cd v;
  v << a(0, 0), a(1, 0), a(0, 1), a(1, 1);
  return v;
}

// Re chi_00 of the qubit channel sending the unnormalized Pauli basis to the
// four reduced outputs.
double chi00(const std::array<Operator, 4>& outputs) {
  const Operator paulis[4] = {identity_op(2), pauli(Axis::x), pauli(Axis::y),
                              pauli(Axis::z)};
  Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
  for (int k = 0; k < 4; ++k)
    m += vec2(outputs[k]) * vec2(paulis[k]).adjoint() / 2.0;
  // chi_mn = (1/4) Tr[(P_n^T (x) P_m)^dagger m]; only chi_00 is needed.
  const Operator b00 = kron(paulis[0].transpose(), paulis[0]);
  return ((b00.adjoint() * m).trace() / 4.0).real();
}

std::array<Operator, 4> pauli_inputs_full(const HamiltonianParts& parts) {
  const int bath_dim = 1 << parts.n_bath();
  const Operator ib =
      identity_op(bath_dim) / static_cast<double>(bath_dim);
  return {kron(identity_op(2), ib), kron(pauli(Axis::x), ib),
          kron(pauli(Axis::y), ib), kron(pauli(Axis::z), ib)};
}

}  // namespace

double process_fidelity(const PulseSequence& s, const HamiltonianParts& parts,
                        double epsilon, int n_cycles) {
  if (n_cycles < 0) throw ArgumentError("process_fidelity: n_cycles < 0");
  validate_parts(parts);
  if (n_cycles == 0) return 1.0;
  const Operator u = cycle_propagator(s, parts, epsilon);
  Operator un = identity_op(parts.dim());
  for (int c = 0; c < n_cycles; ++c) un = u * un;
  auto inputs = pauli_inputs_full(parts);
  std::array<Operator, 4> outputs;
  for (int k = 0; k < 4; ++k)
    outputs[k] = partial_trace_bath((un * inputs[k] * un.adjoint()).eval(),
                                    parts.n_bath());
  return chi00(outputs);
}

std::vector<double> process_fidelity_series(const PulseSequence& s,
                                            const HamiltonianParts& parts,
                                            double epsilon, int n_cycles) {
  if (n_cycles < 1)
    throw ArgumentError("process_fidelity_series: n_cycles must be >= 1");
  validate_parts(parts);
  const Operator u = cycle_propagator(s, parts, epsilon);
  auto inputs = pauli_inputs_full(parts);
  std::vector<double> series;
  series.reserve(n_cycles);
  for (int c = 1; c <= n_cycles; ++c) {
    std::array<Operator, 4> outputs;
    for (int k = 0; k < 4; ++k) {
      inputs[k] = u * inputs[k] * u.adjoint();
      outputs[k] = partial_trace_bath(inputs[k], parts.n_bath());
    }
    series.push_back(chi00(outputs));
  }
  return series;
}

}  // namespace ddsim
