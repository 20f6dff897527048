#include "ddsim/hamiltonian.hpp"

#include <cmath>
#include <random>

namespace ddsim {

namespace {

int pair_count(int k) { return k * (k - 1) / 2; }

void validate(const HamiltonianSpec& spec) {
  if (spec.n_bath < 0 || spec.n_bath > 10)
    throw ArgumentError("hamiltonian: n_bath must be in 0..10");
  if (static_cast<int>(spec.b.size()) != spec.n_bath)
    throw ArgumentError("hamiltonian: b must have n_bath entries");
  if (spec.bath_model != BathModel::none &&
      static_cast<int>(spec.d.size()) != pair_count(spec.n_bath))
    throw ArgumentError("hamiltonian: d must have n_bath*(n_bath-1)/2 entries");
  for (double v : spec.b)
    if (!std::isfinite(v)) throw ArgumentError("hamiltonian: b not finite");
  for (double v : spec.d)
    if (!std::isfinite(v)) throw ArgumentError("hamiltonian: d not finite");
  if (!std::isfinite(spec.omega_s) || !std::isfinite(spec.epsilon))
    throw ArgumentError("hamiltonian: omega_s/epsilon not finite");
}

}  // namespace

HamiltonianParts build_hamiltonian(const HamiltonianSpec& spec) {
  validate(spec);
  const int n_sites = 1 + spec.n_bath;  // system qubit is site 0
  const int dim = 1 << n_sites;

  HamiltonianParts parts;
  parts.spec = spec;
  const Operator sz = embed_spin_op(0, Axis::z, n_sites);
  parts.h_s = spec.omega_s * sz;

  parts.h_se = Operator::Zero(dim, dim);
  for (int k = 0; k < spec.n_bath; ++k)
    parts.h_se += spec.b[k] * (sz * embed_spin_op(1 + k, Axis::z, n_sites));

  parts.h_e = Operator::Zero(dim, dim);
  if (spec.bath_model != BathModel::none) {
    int idx = 0;
    for (int j = 0; j < spec.n_bath; ++j) {
      for (int k = j + 1; k < spec.n_bath; ++k, ++idx) {
        const Operator zz = embed_spin_op(1 + j, Axis::z, n_sites) *
                            embed_spin_op(1 + k, Axis::z, n_sites);
        if (spec.bath_model == BathModel::diagonal) {
          parts.h_e += spec.d[idx] * zz;
        } else {
          const Operator xx = embed_spin_op(1 + j, Axis::x, n_sites) *
                              embed_spin_op(1 + k, Axis::x, n_sites);
          const Operator yy = embed_spin_op(1 + j, Axis::y, n_sites) *
                              embed_spin_op(1 + k, Axis::y, n_sites);
          parts.h_e += spec.d[idx] * (2.0 * zz - xx - yy);
        }
      }
    }
  }

  parts.h_total = parts.h_s + parts.h_se + parts.h_e;
  return parts;
}

std::pair<std::vector<double>, std::vector<double>> sample_couplings(
    int n_bath, double scale_b, double scale_d, std::uint64_t seed) {
  if (n_bath < 0 || n_bath > 10)
    throw ArgumentError("sample_couplings: n_bath must be in 0..10");
  if (!(scale_b >= 0.0) || !(scale_d >= 0.0))
    throw ArgumentError("sample_couplings: scales must be nonnegative");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nb(0.0, scale_b > 0 ? scale_b : 1.0);
  std::normal_distribution<double> nd(0.0, scale_d > 0 ? scale_d : 1.0);
  std::vector<double> b(n_bath), d(pair_count(n_bath));
  for (double& v : b) v = scale_b > 0 ? nb(rng) : 0.0;
  for (double& v : d) v = scale_d > 0 ? nd(rng) : 0.0;
  return {std::move(b), std::move(d)};
}

}  // namespace ddsim
