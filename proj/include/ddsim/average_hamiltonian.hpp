#pragma once

#include <string>
#include <vector>

#include "ddsim/hamiltonian.hpp"
#include "ddsim/operators.hpp"
#include "ddsim/sequence.hpp"

namespace ddsim {

// One piecewise-constant piece of the toggling-frame evolution. The
// fundamental quantity is the exponent weight W (Hermitian, units of
// H * time): the piece contributes exp(-i W) to the cycle propagator.
// Regular pieces have duration > 0 and a rate W / duration; zero-duration
// pieces carry pure pulse-error weight absorbed at a degenerate window.
struct TogglingSegment {
  Operator weight;
  double duration = 0.0;

  // H-tilde of the segment. Throws DegenerateWindowError when duration == 0.
  Operator rate() const;
};

// How pulse-error half-weights enter the toggling frame.
//   absorbed:    each inter-pulse window takes (eps pi / 2) S_phi from both
//                adjacent pulses merged into one exponent with H * duration.
//                The segment product then reproduces the exact propagator
//                through first order in the merged exponents.
//   exact_split: error half-weights stay separate zero-duration exponents, so
//                the segment product equals the exact propagator identically.
enum class PulseErrorTreatment { absorbed, exact_split };

struct AverageHamiltonian {
  std::vector<Operator> terms;  // H0 .. H_max, Hermitian
  double cycle_time = 0.0;
  int truncation_order = 0;
};

struct ErrorDecomposition {
  Operator pre_weight;   // (eps pi / 2) S_phi, 2x2, independent of t_p
  Operator ideal;        // exp(-i pi S_phi), 2x2
  Operator post_weight;  // (eps pi / 2) S_phi
};

// Split R(phi) = exp(-i(1+eps) pi S_phi) into error half / ideal pulse /
// error half. Exact: all three factors commute.
ErrorDecomposition error_decompose(const SequenceElement& pulse, double epsilon,
                                   double t_p);

// Toggling-frame segment list for one cycle: each window's Hamiltonian
// conjugated by the ideal pulses applied so far, with pulse-error weights
// per the chosen treatment. Zero-weight zero-duration segments are dropped.
std::vector<TogglingSegment> toggling_frame(
    const PulseSequence& s, const HamiltonianParts& parts, double epsilon,
    PulseErrorTreatment treatment = PulseErrorTreatment::absorbed);

// log(e^A e^B) = A + B + (1/2)[A,B] + (1/12)([A,[A,B]] + [[A,B],B]),
// truncated by total grade in (A, B) to `order` (1..3). A and B are
// anti-Hermitian exponents of the form -i H tau; A is the later factor.
Operator bch_truncated(const Operator& a, const Operator& b, int order);

// Fold the toggling segments with grade-tracked BCH and return
// H_n = (i / cycle_time) * (grade n+1 part), n = 0..max_order. H0 is the
// duration-weighted mean of the segments.
AverageHamiltonian average_hamiltonian(
    const PulseSequence& s, const HamiltonianParts& parts, double epsilon,
    int max_order = 2,
    PulseErrorTreatment treatment = PulseErrorTreatment::absorbed);

// Textbook closed forms for the XY-4 first-order and XY-8 second-order
// average Hamiltonians, evaluated verbatim with their customary coefficients
// (5/16, 1/32, 1/16, 13/1536, 1/384, 1/368, 1/8, 7, 1/3). Kept as stated so
// the graded-BCH engine can be audited against them; the tests pin the
// coefficients the engine itself yields.
enum class ClosedFormFamily {
  xy4_sym_h1,         // H1 of symmetric XY-4
  xy4_asym_h1,        // H1 of asymmetric XY-4
  xy8_h2_noHE,        // H2 of XY-8 with H_E = 0
  xy8_h2_idealpulses  // H2 of XY-8 with ideal pulses and H_E != 0
};

// asymmetric_block selects the asymmetric-block variant for the xy8 families
// (ignored by the xy4 families, which encode the variant in their name).
Operator closed_form_reference(ClosedFormFamily family,
                               const HamiltonianParts& parts, double epsilon,
                               double tau, bool asymmetric_block = false);

// True iff the piecewise toggling Hamiltonian satisfies
// H-tilde(t) = H-tilde(cycle_time - t) within tolerances().symmetry,
// comparing the mirrored segment decompositions.
bool toggling_time_symmetric(const PulseSequence& s,
                             const HamiltonianParts& parts, double epsilon);

// Plain-text report: one block per order, Pauli strings with real
// coefficients at 12 significant digits.
std::string aht_report(const AverageHamiltonian& avg);

}  // namespace ddsim
