#include "qee/quantum.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <string>

namespace qee {

bool is_finite(const ComplexMatrix& m) {
  return m.array().isFinite().all();
}

bool is_hermitian(const ComplexMatrix& m, double rel_tol) {
  if (m.rows() != m.cols()) return false;
  const double scale = std::max(1.0, m.norm());
  return (m - m.adjoint()).norm() <= rel_tol * scale;
}

HermitianOperator::HermitianOperator(ComplexMatrix m) : m_(std::move(m)) {
  if (m_.rows() < 1 || m_.rows() != m_.cols()) {
    throw ValidationError("HermitianOperator: matrix must be square with dim >= 1");
  }
  if (!is_finite(m_)) {
    throw ValidationError("HermitianOperator: non-finite entries");
  }
  if (!is_hermitian(m_)) {
    throw ValidationError("HermitianOperator: not Hermitian within tolerance");
  }
  // Symmetrize so downstream solvers see an exactly Hermitian matrix.
  m_ = 0.5 * (m_ + m_.adjoint().eval());
}

UnitaryPropagator propagator(const HermitianOperator& h, double time_us) {
  if (!std::isfinite(time_us)) {
    throw ValidationError("propagator: time must be finite");
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h.matrix());
  if (solver.info() != Eigen::Success) {
    throw NumericalError("propagator: eigendecomposition failed");
  }
  const Eigen::VectorXd& eigs = solver.eigenvalues();
  Eigen::VectorXcd phases(eigs.size());
  for (Eigen::Index i = 0; i < eigs.size(); ++i) {
    phases(i) = std::polar(1.0, -eigs(i) * time_us);
  }
  UnitaryPropagator u;
  u.matrix = solver.eigenvectors() * phases.asDiagonal() * solver.eigenvectors().adjoint();
  u.generator = h;
  u.time_us = time_us;

  const ComplexMatrix residual =
      u.matrix * u.matrix.adjoint() - ComplexMatrix::Identity(h.dim(), h.dim());
  if (residual.norm() > kUnitaryAbsTol) {
    throw NumericalError("propagator: result not unitary within tolerance");
  }
  return u;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b, Eigen::Index dim_cap) {
  const Eigen::Index rows = a.rows() * b.rows();
  const Eigen::Index cols = a.cols() * b.cols();
  if (rows > dim_cap || cols > dim_cap) {
    throw CapacityError("kron: product dimension " + std::to_string(rows) + "x" +
                        std::to_string(cols) + " exceeds cap " + std::to_string(dim_cap));
  }
  ComplexMatrix out(rows, cols);
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

double frobenius_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw ValidationError("frobenius_distance: dimension mismatch");
  }
  return (a - b).norm();
}

ComplexMatrix pauli_x() {
  ComplexMatrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

ComplexMatrix pauli_y() {
  ComplexMatrix m(2, 2);
  m << Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0);
  return m;
}

ComplexMatrix pauli_z() {
  ComplexMatrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

}  // namespace qee
