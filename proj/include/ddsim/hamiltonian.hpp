#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "ddsim/operators.hpp"

namespace ddsim {

enum class BathModel { none, secular_dipolar, diagonal };

// Couplings and pulse error fully determining H = H_S + H_SE + H_E.
// Units: time in microseconds, couplings in rad/us.
struct HamiltonianSpec {
  int n_bath = 0;                          // K, 0..10
  double omega_s = 0.0;                    // system Zeeman frequency; 0 = rotating frame
  std::vector<double> b;                   // K system-bath couplings b_k
  BathModel bath_model = BathModel::none;
  std::vector<double> d;                   // K(K-1)/2 pair couplings d_jk, j<k lexicographic
  double epsilon = 0.0;                    // relative flip-angle error
  std::uint64_t seed = 0;                  // used when couplings are sampled
};

struct HamiltonianParts {
  Operator h_s;
  Operator h_se;
  Operator h_e;
  Operator h_total;
  HamiltonianSpec spec;  // originating couplings, kept for reference formulas
  int dim() const { return static_cast<int>(h_total.rows()); }
  int n_bath() const { return spec.n_bath; }
};

// H_S = omega_s S_z; H_SE = sum_k b_k S_z I_z^k; H_E per bath model:
//   none           -> 0
//   secular_dipolar-> sum_{j<k} d_jk (2 I_z^j I_z^k - I_x^j I_x^k - I_y^j I_y^k)
//   diagonal       -> sum_{j<k} d_jk I_z^j I_z^k   (commutes with H_SE)
HamiltonianParts build_hamiltonian(const HamiltonianSpec& spec);

// Deterministic i.i.d. normal draws: b_k ~ N(0, scale_b^2), d_jk ~ N(0, scale_d^2).
std::pair<std::vector<double>, std::vector<double>> sample_couplings(
    int n_bath, double scale_b, double scale_d, std::uint64_t seed);

}  // namespace ddsim
