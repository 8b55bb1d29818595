#include "qee/dephasing.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

namespace qee {

namespace {

void require_same_dim(const PureDephasingModel& model, const EnvState& r0) {
  if (model.env_dim() != r0.dim()) {
    throw ValidationError("model/state dimension mismatch");
  }
}

void require_prep(int prep) {
  if (prep != 0 && prep != 1) {
    throw ValidationError("prep must be 0 or 1");
  }
}

void require_nonnegative(double v, const char* name) {
  if (!(v >= 0.0)) {
    throw ValidationError(std::string(name) + " must be >= 0");
  }
}

double trace_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
  // a - b is Hermitian here, so the trace norm is the sum of |eigenvalues|.
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(a - b, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("trace norm: eigendecomposition failed");
  }
  return solver.eigenvalues().cwiseAbs().sum();
}

}  // namespace

PureDephasingModel::PureDephasingModel(double eps0_rad_us, double eps1_rad_us,
                                       HermitianOperator h_env, HermitianOperator v0,
                                       HermitianOperator v1)
    : eps0_(eps0_rad_us),
      eps1_(eps1_rad_us),
      h_env_(std::move(h_env)),
      v0_(std::move(v0)),
      v1_(std::move(v1)) {
  if (h_env_.dim() != v0_.dim() || h_env_.dim() != v1_.dim()) {
    throw ValidationError("PureDephasingModel: H_env, V0, V1 must share one dimension");
  }
  if (!std::isfinite(eps0_) || !std::isfinite(eps1_)) {
    throw ValidationError("PureDephasingModel: level energies must be finite");
  }
}

HermitianOperator PureDephasingModel::conditional_hamiltonian(int branch) const {
  require_prep(branch);
  return HermitianOperator(h_env_.matrix() + (branch == 0 ? v0_ : v1_).matrix());
}

EnvState::EnvState(ComplexMatrix rho) : rho_(std::move(rho)) {
  if (rho_.rows() < 1 || rho_.rows() != rho_.cols() || !is_finite(rho_)) {
    throw ValidationError("EnvState: need a finite square matrix");
  }
  if (!is_hermitian(rho_, 1e-12)) {
    throw ValidationError("EnvState: not Hermitian within 1e-12");
  }
  if (std::abs(rho_.trace().real() - 1.0) > 1e-12 || std::abs(rho_.trace().imag()) > 1e-12) {
    throw ValidationError("EnvState: trace must be 1 within 1e-12");
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(rho_, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("EnvState: eigendecomposition failed");
  }
  if (solver.eigenvalues().minCoeff() < -1e-12) {
    throw ValidationError("EnvState: negative eigenvalue beyond tolerance");
  }
}

EnvState EnvState::maximally_mixed(Eigen::Index dim) {
  return EnvState(ComplexMatrix::Identity(dim, dim) / static_cast<double>(dim));
}

std::pair<UnitaryPropagator, UnitaryPropagator> conditional_propagators(
    const PureDephasingModel& model, double time_us) {
  return {propagator(model.conditional_hamiltonian(0), time_us),
          propagator(model.conditional_hamiltonian(1), time_us)};
}

EntanglementReport qee_criterion(const PureDephasingModel& model, const EnvState& r0,
                                 double tau_us, double tolerance, MatrixNorm norm) {
  require_same_dim(model, r0);
  require_nonnegative(tau_us, "tau");
  if (tau_us == 0.0) {
    // Both propagators are the identity; the conditional states coincide.
    EntanglementReport report;
    report.tau_us = 0.0;
    report.tolerance_used = tolerance;
    return report;
  }
  const auto [w0, w1] = conditional_propagators(model, tau_us);
  const ComplexMatrix evolved0 = w0.matrix * r0.rho() * w0.matrix.adjoint();
  const ComplexMatrix evolved1 = w1.matrix * r0.rho() * w1.matrix.adjoint();

  EntanglementReport report;
  report.tau_us = tau_us;
  report.distance = norm == MatrixNorm::frobenius ? frobenius_distance(evolved0, evolved1)
                                                  : trace_distance(evolved0, evolved1);
  report.tolerance_used = tolerance;
  report.qee_detected = report.distance > tolerance;
  return report;
}

Complex protocol_coherence(const PureDephasingModel& model, const EnvState& r0, int prep,
                           double tau_us, double t_us) {
  require_same_dim(model, r0);
  require_prep(prep);
  require_nonnegative(tau_us, "tau");
  require_nonnegative(t_us, "t");
  if (t_us == 0.0) {
    return {0.5, 0.0};  // trace of a density matrix, exactly
  }
  const auto [w0t, w1t] = conditional_propagators(model, t_us);
  const UnitaryPropagator wprep =
      propagator(model.conditional_hamiltonian(prep), tau_us);
  const ComplexMatrix evolved = wprep.matrix * r0.rho() * wprep.matrix.adjoint();
  return 0.5 * (w0t.matrix * evolved * w1t.matrix.adjoint()).trace();
}

Complex echo_coherence(const PureDephasingModel& model, const EnvState& r0, double tau_us) {
  require_same_dim(model, r0);
  require_nonnegative(tau_us, "tau");
  if (tau_us == 0.0) {
    return {0.5, 0.0};
  }
  const auto [w0, w1] = conditional_propagators(model, tau_us);
  return 0.5 * (w1.matrix * w0.matrix * r0.rho() * w1.matrix.adjoint() * w0.matrix.adjoint())
                   .trace();
}

double commutator_norm(const PureDephasingModel& model) {
  const ComplexMatrix h0 = model.conditional_hamiltonian(0).matrix();
  const ComplexMatrix h1 = model.conditional_hamiltonian(1).matrix();
  return (h0 * h1 - h1 * h0).norm();
}

ComplexMatrix partial_trace_env(const ComplexMatrix& joint, Eigen::Index d_env) {
  if (joint.rows() != 2 * d_env || joint.cols() != 2 * d_env) {
    throw ValidationError("partial_trace_env: joint dimension must be 2*d_env");
  }
  ComplexMatrix reduced(2, 2);
  for (Eigen::Index i = 0; i < 2; ++i) {
    for (Eigen::Index j = 0; j < 2; ++j) {
      reduced(i, j) = joint.block(i * d_env, j * d_env, d_env, d_env).trace();
    }
  }
  return reduced;
}

Complex joint_oracle(const PureDephasingModel& model, const EnvState& r0, int prep,
                     double tau_us, double t_us, Eigen::Index dim_cap) {
  require_same_dim(model, r0);
  require_prep(prep);
  require_nonnegative(tau_us, "tau");
  require_nonnegative(t_us, "t");
  const Eigen::Index d = model.env_dim();
  if (2 * d > dim_cap) {
    throw CapacityError("joint_oracle: joint dimension exceeds cap");
  }

  const ComplexMatrix id_env = ComplexMatrix::Identity(d, d);
  ComplexMatrix p0 = ComplexMatrix::Zero(2, 2);
  ComplexMatrix p1 = ComplexMatrix::Zero(2, 2);
  p0(0, 0) = 1.0;
  p1(1, 1) = 1.0;

  const ComplexMatrix h_joint = model.eps0() * kron(p0, id_env, dim_cap) +
                                model.eps1() * kron(p1, id_env, dim_cap) +
                                kron(ComplexMatrix::Identity(2, 2), model.h_env().matrix(), dim_cap) +
                                kron(p0, model.v0().matrix(), dim_cap) +
                                kron(p1, model.v1().matrix(), dim_cap);
  const HermitianOperator h(h_joint);

  ComplexMatrix qubit = ComplexMatrix::Zero(2, 2);
  qubit(prep, prep) = 1.0;
  ComplexMatrix state = kron(qubit, r0.rho(), dim_cap);

  const UnitaryPropagator u_tau = propagator(h, tau_us);
  state = u_tau.matrix * state * u_tau.matrix.adjoint();

  // Instantaneous rotation taking |prep> to (|0>+|1>)/sqrt(2).
  ComplexMatrix rot(2, 2);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  if (prep == 0) {
    rot << inv_sqrt2, inv_sqrt2, inv_sqrt2, -inv_sqrt2;
  } else {
    rot << inv_sqrt2, inv_sqrt2, -inv_sqrt2, inv_sqrt2;
  }
  const ComplexMatrix rot_joint = kron(rot, id_env, dim_cap);
  state = rot_joint * state * rot_joint.adjoint();

  const UnitaryPropagator u_t = propagator(h, t_us);
  state = u_t.matrix * state * u_t.matrix.adjoint();

  const ComplexMatrix reduced = partial_trace_env(state, d);
  // Strip the controlled-splitting phase: results are rotating-frame.
  return reduced(0, 1) * std::polar(1.0, (model.eps0() - model.eps1()) * t_us);
}

}  // namespace qee
