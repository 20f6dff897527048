#pragma once

namespace ddsim {

// Central numeric tolerances. Tests and callers share this single knob.
struct Tolerances {
  double hermiticity = 1e-12;  // max abs element of A - A^dagger
  double unitarity = 1e-10;    // max abs element of U^dagger U - I
  double branch_guard = 1e-6;  // min circular distance of an eigenphase from -pi
  double symmetry = 1e-10;     // toggling-frame mirror comparison
};

inline Tolerances& tolerances() {
  static Tolerances t;
  return t;
}

}  // namespace ddsim
