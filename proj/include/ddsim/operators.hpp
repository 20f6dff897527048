#pragma once

#include <Eigen/Dense>
#include <complex>
#include <string>
#include <vector>

#include "ddsim/errors.hpp"
#include "ddsim/tolerances.hpp"

namespace ddsim {

// Dense complex operator on the joint system (x) bath space. Dimension is a
// power of two; site 0 (the system qubit) is the leftmost tensor factor.
using Operator = Eigen::MatrixXcd;
using Complex = std::complex<double>;

enum class Axis { x, y, z };

Operator identity_op(int dim);

// 2x2 Pauli matrix sigma_axis.
Operator pauli(Axis axis);

// Spin-1/2 operator (1/2) sigma_axis embedded at `site` of an n_sites chain.
Operator embed_spin_op(int site, Axis axis, int n_sites);

Operator kron(const Operator& a, const Operator& b);

Operator commutator(const Operator& a, const Operator& b);

bool is_hermitian(const Operator& a, double tol);
bool is_unitary(const Operator& u, double tol);

// exp(-i h t) for Hermitian h, via eigendecomposition. t must be finite and
// nonnegative.
Operator propagator(const Operator& h, double t);

// Anti-Hermitian principal logarithm of a unitary: exp(L) = u with all
// eigenphases of L/i in (-pi, pi]. Throws BranchCutError if an eigenphase
// sits within tolerances().branch_guard of the cut.
Operator principal_log(const Operator& u);

// Reduce an operator on system (x) bath to the 2x2 system block by tracing
// out all n_bath bath sites.
Operator partial_trace_bath(const Operator& op, int n_bath);

struct PauliTerm {
  std::string label;  // e.g. "ZIZ", site 0 leftmost
  double coeff;       // real for Hermitian inputs
};

// Expansion h = sum coeff * (tensor product of unnormalized Paulis).
// Terms with |coeff| <= threshold are dropped; sorted by descending |coeff|,
// ties by label.
std::vector<PauliTerm> pauli_terms(const Operator& h, double threshold = 1e-12);

}  // namespace ddsim
