#include "ddsim/average_hamiltonian.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

namespace ddsim {

namespace {

constexpr double kPi = std::numbers::pi;
const Complex kI{0.0, 1.0};

double max_abs(const Operator& a) { return a.cwiseAbs().maxCoeff(); }

// cos(phi) S_x + sin(phi) S_y on the system qubit, embedded in the full space.
Operator s_phi_full(double phase, int n_sites) {
  return std::cos(phase) * embed_spin_op(0, Axis::x, n_sites) +
         std::sin(phase) * embed_spin_op(0, Axis::y, n_sites);
}

// Ideal pi pulse exp(-i pi S_phi) = -i (cos phi sigma_x + sin phi sigma_y),
// embedded in the full space.
Operator ideal_pulse_full(double phase, int n_sites) {
  Operator p2 = -kI * (std::cos(phase) * pauli(Axis::x) +
                       std::sin(phase) * pauli(Axis::y));
  return kron(p2, identity_op(1 << (n_sites - 1)));
}

struct WindowedSequence {
  std::vector<double> window;  // durations, size n_pulses + 1, entries >= 0
  std::vector<double> phase;   // pulse phases, size n_pulses
};

// Collapse the element list to alternating window / pulse form, merging
// maximal runs of adjacent delays into one window.
WindowedSequence windowed(const PulseSequence& s) {
  if (s.elements.empty())
    throw ArgumentError("toggling_frame: sequence has no elements");
  WindowedSequence w;
  w.window.push_back(0.0);
  for (const auto& e : s.elements) {
    if (e.is_delay()) {
      w.window.back() += e.duration;
    } else {
      w.phase.push_back(e.phase);
      w.window.push_back(0.0);
    }
  }
  return w;
}

}  // namespace

Operator TogglingSegment::rate() const {
  if (duration <= 0.0)
    throw DegenerateWindowError(
        "toggling segment has zero duration; only its weight is defined");
  return weight / duration;
}

ErrorDecomposition error_decompose(const SequenceElement& pulse, double epsilon,
                                   double t_p) {
  if (!pulse.is_pulse())
    throw ArgumentError("error_decompose: element is not a pulse");
  if (!(t_p > 0.0) || !std::isfinite(t_p))
    throw ArgumentError("error_decompose: t_p must be positive");
  const Operator s_phi = s_phi_full(pulse.phase, 1);
  ErrorDecomposition d;
  d.pre_weight = (epsilon * kPi / 2) * s_phi;
  d.post_weight = d.pre_weight;
  d.ideal = ideal_pulse_full(pulse.phase, 1);
  return d;
}

std::vector<TogglingSegment> toggling_frame(const PulseSequence& s,
                                            const HamiltonianParts& parts,
                                            double epsilon,
                                            PulseErrorTreatment treatment) {
  const WindowedSequence w = windowed(s);
  const int n_sites = 1 + parts.n_bath();
  if (parts.dim() != (1 << n_sites))
    throw ArgumentError("toggling_frame: hamiltonian dimension mismatch");
  const int n = static_cast<int>(w.phase.size());

  std::vector<TogglingSegment> segs;
  Operator frame = identity_op(parts.dim());  // Q_j, ideal pulses so far
  for (int j = 0; j <= n; ++j) {
    const double tau_j = w.window[j];
    const auto push = [&](const Operator& raw_weight, double duration) {
      if (duration == 0.0 && max_abs(raw_weight) == 0.0) return;
      segs.push_back(
          {(frame.adjoint() * raw_weight * frame).eval(), duration});
    };
    if (treatment == PulseErrorTreatment::absorbed) {
      Operator weight = parts.h_total * tau_j;
      if (j >= 1)
        weight += (epsilon * kPi / 2) * s_phi_full(w.phase[j - 1], n_sites);
      if (j <= n - 1)
        weight += (epsilon * kPi / 2) * s_phi_full(w.phase[j], n_sites);
      push(weight, tau_j);
    } else {
      if (j >= 1 && epsilon != 0.0)
        push((epsilon * kPi / 2) * s_phi_full(w.phase[j - 1], n_sites), 0.0);
      if (tau_j > 0.0) push(parts.h_total * tau_j, tau_j);
      if (j <= n - 1 && epsilon != 0.0)
        push((epsilon * kPi / 2) * s_phi_full(w.phase[j], n_sites), 0.0);
    }
    if (j < n) frame = ideal_pulse_full(w.phase[j], n_sites) * frame;
  }
  return segs;
}

Operator bch_truncated(const Operator& a, const Operator& b, int order) {
  if (order < 1 || order > 3)
    throw ArgumentError("bch_truncated: order must be 1..3");
  Operator out = a + b;
  if (order >= 2) {
    const Operator ab = commutator(a, b);
    out += 0.5 * ab;
    if (order >= 3)
      out += (1.0 / 12.0) * (commutator(a, ab) + commutator(ab, b));
  }
  return out;
}

namespace {

// Exponent split by total grade in the folded atoms; grades[g-1] holds the
// grade-g part. Folding a later atom A (grade 1, left factor) into the
// accumulated exponent keeps every BCH term of total grade <= size.
void fold_atom(std::vector<Operator>& grades, const Operator& atom) {
  const size_t g = grades.size();
  if (g >= 3) {
    const Operator c1 = commutator(atom, grades[0]);
    grades[2] += 0.5 * commutator(atom, grades[1]) +
                 (1.0 / 12.0) * (commutator(atom, c1) +
                                 commutator(c1, grades[0]));
  }
  if (g >= 2) grades[1] += 0.5 * commutator(atom, grades[0]);
  grades[0] += atom;
}

}  // namespace

AverageHamiltonian average_hamiltonian(const PulseSequence& s,
                                       const HamiltonianParts& parts,
                                       double epsilon, int max_order,
                                       PulseErrorTreatment treatment) {
  if (max_order < 0 || max_order > 2)
    throw ArgumentError("average_hamiltonian: max_order must be 0..2");
  const double tau_c = s.cycle_time();
  if (!(tau_c > 0.0))
    throw ArgumentError("average_hamiltonian: cycle_time must be positive");
  const auto segs = toggling_frame(s, parts, epsilon, treatment);

  std::vector<Operator> grades(static_cast<size_t>(max_order) + 1,
                               Operator::Zero(parts.dim(), parts.dim()));
  for (const auto& seg : segs) fold_atom(grades, (-kI * seg.weight).eval());

  AverageHamiltonian avg;
  avg.cycle_time = tau_c;
  avg.truncation_order = max_order;
  for (const auto& g : grades) {
    Operator h = (kI / tau_c) * g;
    avg.terms.push_back(0.5 * (h + h.adjoint().eval()));
  }
  return avg;
}

Operator closed_form_reference(ClosedFormFamily family,
                               const HamiltonianParts& parts, double epsilon,
                               double tau, bool asymmetric_block) {
  if (!(tau > 0.0))
    throw ArgumentError("closed_form_reference: tau must be positive");
  const int n_sites = 1 + parts.n_bath();
  const Operator sx = embed_spin_op(0, Axis::x, n_sites);
  const Operator sy = embed_spin_op(0, Axis::y, n_sites);
  const Operator sz = embed_spin_op(0, Axis::z, n_sites);
  const auto& b = parts.spec.b;
  const auto iz = [&](int k) { return embed_spin_op(1 + k, Axis::z, n_sites); };

  switch (family) {
    case ClosedFormFamily::xy4_sym_h1: {
      Operator h = (5.0 * epsilon * epsilon * kPi * kPi / (16.0 * tau)) * sz;
      for (int k = 0; k < parts.n_bath(); ++k)
        h -= b[k] * (epsilon * kPi / 32.0) * ((sx + sy) * iz(k));
      return h;
    }
    case ClosedFormFamily::xy4_asym_h1: {
      Operator h = (5.0 * epsilon * epsilon * kPi * kPi / (16.0 * tau)) * sz;
      for (int k = 0; k < parts.n_bath(); ++k)
        h -= b[k] * (epsilon * kPi / 16.0) * (sx * iz(k));
      Operator comm_sum = Operator::Zero(parts.dim(), parts.dim());
      for (int k = 0; k < parts.n_bath(); ++k)
        comm_sum += b[k] * commutator(iz(k), parts.h_e);
      h += kI * tau * (sz * comm_sum);
      return 0.5 * (h + h.adjoint().eval());
    }
    case ClosedFormFamily::xy8_h2_noHE: {
      if (max_abs(parts.h_e) > 1e-12)
        throw ArgumentError(
            "closed_form_reference: xy8_h2_noHE requires a vanishing bath "
            "Hamiltonian");
      const double e3 = epsilon * epsilon * epsilon;
      Operator h = (13.0 * e3 * kPi * kPi * kPi / (1536.0 * tau)) * (sx + sy);
      for (int k = 0; k < parts.n_bath(); ++k)
        h += (epsilon * epsilon * kPi * kPi * b[k] / 384.0) * (sz * iz(k));
      if (asymmetric_block)
        for (int k = 0; k < parts.n_bath(); ++k)
          h += (epsilon * b[k] * b[k] * tau / 368.0) * sy;
      return h;
    }
    case ClosedFormFamily::xy8_h2_idealpulses: {
      if (epsilon != 0.0)
        throw ArgumentError(
            "closed_form_reference: xy8_h2_idealpulses requires epsilon = 0");
      const Operator c = commutator(parts.h_e, parts.h_se);
      Operator h =
          (tau * tau / 8.0) *
          commutator(c, (parts.h_e - (1.0 / 3.0) * parts.h_se).eval());
      if (asymmetric_block)
        h += (tau * tau / 8.0) *
             commutator(c, (7.0 * parts.h_e - parts.h_se).eval());
      return 0.5 * (h + h.adjoint().eval());
    }
  }
  throw ArgumentError("closed_form_reference: unknown family");
}

bool toggling_time_symmetric(const PulseSequence& s,
                             const HamiltonianParts& parts, double epsilon) {
  const auto segs =
      toggling_frame(s, parts, epsilon, PulseErrorTreatment::absorbed);
  const size_t n = segs.size();
  const double tau_c = s.cycle_time();
  for (size_t j = 0; j < n; ++j) {
    const auto& fwd = segs[j];
    const auto& rev = segs[n - 1 - j];
    if (std::abs(fwd.duration - rev.duration) > 1e-12 * std::max(1.0, tau_c))
      return false;
    const double scale = std::max({1.0, max_abs(fwd.weight),
                                   max_abs(rev.weight)});
    if (max_abs(fwd.weight - rev.weight) > tolerances().symmetry * scale)
      return false;
  }
  return true;
}

std::string aht_report(const AverageHamiltonian& avg) {
  std::ostringstream out;
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", avg.cycle_time);
  out << "cycle time: " << buf << " us\n";
  for (size_t n = 0; n < avg.terms.size(); ++n) {
    out << "order " << n << " (rad/us):\n";
    const auto terms = pauli_terms(avg.terms[n]);
    if (terms.empty()) {
      out << "  (zero)\n";
      continue;
    }
    for (const auto& t : terms) {
      std::snprintf(buf, sizeof(buf), "%+.12g", t.coeff);
      out << "  " << t.label << "  " << buf << "\n";
    }
  }
  return out.str();
}

}  // namespace ddsim
