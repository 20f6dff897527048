#include "ddsim/operators.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>

namespace ddsim {

namespace {

const Complex kI{0.0, 1.0};

double max_abs(const Operator& a) { return a.cwiseAbs().maxCoeff(); }

}  // namespace

Operator identity_op(int dim) {
  if (dim < 1) throw ArgumentError("identity_op: dim must be positive");
  return Operator::Identity(dim, dim);
}

Operator pauli(Axis axis) {
  Operator s(2, 2);
  switch (axis) {
    case Axis::x:
      s << 0, 1, 1, 0;
      break;
    case Axis::y:
      s << 0, -kI, kI, 0;
      break;
    case Axis::z:
      s << 1, 0, 0, -1;
      break;
  }
  return s;
}

Operator kron(const Operator& a, const Operator& b) {
  Operator out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Operator embed_spin_op(int site, Axis axis, int n_sites) {
  if (n_sites < 1) throw ArgumentError("embed_spin_op: n_sites must be >= 1");
  if (site < 0 || site >= n_sites)
    throw ArgumentError("embed_spin_op: site out of range");
  Operator out = Operator::Ones(1, 1);
  for (int i = 0; i < n_sites; ++i) {
    if (i == site)
      out = kron(out, 0.5 * pauli(axis));
    else
      out = kron(out, identity_op(2));
  }
  return out;
}

Operator commutator(const Operator& a, const Operator& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw ArgumentError("commutator: dimension mismatch");
  return a * b - b * a;
}

bool is_hermitian(const Operator& a, double tol) {
  if (a.rows() != a.cols()) return false;
  return max_abs(a - a.adjoint()) <= tol;
}

bool is_unitary(const Operator& u, double tol) {
  if (u.rows() != u.cols()) return false;
  Operator res = u.adjoint() * u;
  res -= identity_op(static_cast<int>(u.rows()));
  return max_abs(res) <= tol;
}

Operator propagator(const Operator& h, double t) {
  if (!std::isfinite(t) || t < 0.0)
    throw ArgumentError("propagator: t must be finite and nonnegative");
  if (!is_hermitian(h, tolerances().hermiticity))
    throw ArgumentError("propagator: input is not Hermitian within tolerance");
  Eigen::SelfAdjointEigenSolver<Operator> es((0.5 * (h + h.adjoint())).eval());
  const auto& vals = es.eigenvalues();
  const Operator& vecs = es.eigenvectors();
  Eigen::VectorXcd phases(vals.size());
  for (Eigen::Index k = 0; k < vals.size(); ++k)
    phases[k] = std::exp(-kI * vals[k] * t);
  return vecs * phases.asDiagonal() * vecs.adjoint();
}

Operator principal_log(const Operator& u) {
  if (!is_unitary(u, tolerances().unitarity))
    throw ArgumentError("principal_log: input is not unitary within tolerance");
  // A unitary is normal, so its Schur form is diagonal up to roundoff.
  Eigen::ComplexSchur<Operator> schur(u);
  if (schur.info() != Eigen::Success)
    throw Error("principal_log: Schur decomposition failed");
  const Operator& t = schur.matrixT();
  const Operator& q = schur.matrixU();
  Operator strict = t.triangularView<Eigen::StrictlyUpper>();
  if (max_abs(strict) > 1e-7)
    throw Error("principal_log: Schur form not numerically diagonal");
  Eigen::VectorXcd logs(t.rows());
  for (Eigen::Index k = 0; k < t.rows(); ++k) {
    double theta = std::arg(t(k, k));
    if (std::numbers::pi - std::abs(theta) < tolerances().branch_guard)
      throw BranchCutError(
          "principal_log: eigenphase at the branch cut; shrink the step");
    logs[k] = kI * theta;
  }
  Operator l = q * logs.asDiagonal() * q.adjoint();
  return 0.5 * (l - l.adjoint().eval());  // exact anti-Hermitian part
}

Operator partial_trace_bath(const Operator& op, int n_bath) {
  if (n_bath < 0) throw ArgumentError("partial_trace_bath: n_bath < 0");
  const Eigen::Index bath_dim = Eigen::Index(1) << n_bath;
  if (op.rows() != op.cols() || op.rows() != 2 * bath_dim)
    throw ArgumentError("partial_trace_bath: dimension mismatch");
  Operator out = Operator::Zero(2, 2);
  for (Eigen::Index s = 0; s < 2; ++s)
    for (Eigen::Index sp = 0; sp < 2; ++sp)
      for (Eigen::Index e = 0; e < bath_dim; ++e)
        out(s, sp) += op(s * bath_dim + e, sp * bath_dim + e);
  return out;
}

namespace {

void pauli_expand(const Operator& block, const std::string& prefix,
                  double threshold, std::vector<PauliTerm>& out) {
  const Eigen::Index n = block.rows();
  if (n == 1) {
    double c = block(0, 0).real();
    if (std::abs(c) > threshold) out.push_back({prefix, c});
    return;
  }
  const Eigen::Index h = n / 2;
  auto a = block.topLeftCorner(h, h);
  auto b = block.topRightCorner(h, h);
  auto c = block.bottomLeftCorner(h, h);
  auto d = block.bottomRightCorner(h, h);
  pauli_expand(0.5 * (a + d), prefix + "I", threshold, out);
  pauli_expand(0.5 * (b + c), prefix + "X", threshold, out);
  pauli_expand(0.5 * kI * (b - c), prefix + "Y", threshold, out);
  pauli_expand(0.5 * (a - d), prefix + "Z", threshold, out);
}

}  // namespace

std::vector<PauliTerm> pauli_terms(const Operator& h, double threshold) {
  if (h.rows() != h.cols() || h.rows() < 1 ||
      (h.rows() & (h.rows() - 1)) != 0)
    throw ArgumentError("pauli_terms: dimension must be a power of two");
  std::vector<PauliTerm> out;
  pauli_expand(h, "", threshold, out);
  std::sort(out.begin(), out.end(), [](const PauliTerm& a, const PauliTerm& b) {
    if (std::abs(a.coeff) != std::abs(b.coeff))
      return std::abs(a.coeff) > std::abs(b.coeff);
    return a.label < b.label;
  });
  return out;
}

}  // namespace ddsim
