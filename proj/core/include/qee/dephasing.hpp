#pragma once

#include <utility>

#include "qee/quantum.hpp"

namespace qee {

inline constexpr double kQeeDistanceTol = 1e-9;

/// Pure-dephasing model: qubit level energies plus the environment Hamiltonian
/// and the two pointer-state interaction operators, all sharing one dimension.
/// The conditional environment Hamiltonians are H_i = H_env + V_i.
class PureDephasingModel {
 public:
  PureDephasingModel(double eps0_rad_us, double eps1_rad_us, HermitianOperator h_env,
                     HermitianOperator v0, HermitianOperator v1);

  double eps0() const { return eps0_; }
  double eps1() const { return eps1_; }
  const HermitianOperator& h_env() const { return h_env_; }
  const HermitianOperator& v0() const { return v0_; }
  const HermitianOperator& v1() const { return v1_; }
  Eigen::Index env_dim() const { return h_env_.dim(); }

  HermitianOperator conditional_hamiltonian(int branch) const;

 private:
  double eps0_, eps1_;
  HermitianOperator h_env_, v0_, v1_;
};

/// Environment density matrix: Hermitian, unit trace, positive semidefinite.
class EnvState {
 public:
  explicit EnvState(ComplexMatrix rho);

  const ComplexMatrix& rho() const { return rho_; }
  Eigen::Index dim() const { return rho_.rows(); }

  static EnvState maximally_mixed(Eigen::Index dim);

 private:
  ComplexMatrix rho_;
};

struct EntanglementReport {
  double tau_us = 0.0;
  double distance = 0.0;
  bool qee_detected = false;
  double tolerance_used = kQeeDistanceTol;
};

enum class MatrixNorm { frobenius, trace };

/// (w0(t), w1(t)) = (exp(-i(H_env+V0)t), exp(-i(H_env+V1)t)).
std::pair<UnitaryPropagator, UnitaryPropagator> conditional_propagators(
    const PureDephasingModel& model, double time_us);

/// Distance between the two conditionally evolved environment states at tau;
/// entanglement is flagged when it exceeds the tolerance.
EntanglementReport qee_criterion(const PureDephasingModel& model, const EnvState& r0,
                                 double tau_us, double tolerance = kQeeDistanceTol,
                                 MatrixNorm norm = MatrixNorm::frobenius);

/// Coherence (1/2)Tr(w0(t) w_prep(tau) R w_prep^+(tau) w1^+(t)) in the rotating
/// frame; prep selects which pointer state the qubit held during the first tau.
Complex protocol_coherence(const PureDephasingModel& model, const EnvState& r0, int prep,
                           double tau_us, double t_us);

/// (1/2)Tr(w1(tau) w0(tau) R w1^+(tau) w0^+(tau)); equals 1/2 for all tau iff
/// the conditional Hamiltonians commute.
Complex echo_coherence(const PureDephasingModel& model, const EnvState& r0, double tau_us);

/// ||[H0, H1]||_F; zero marks the witness blind spot.
double commutator_norm(const PureDephasingModel& model);

/// Trace over the environment factor of a (2*d_env)-dimensional joint state.
ComplexMatrix partial_trace_env(const ComplexMatrix& joint, Eigen::Index d_env);

/// Brute-force reference for protocol_coherence: builds the full qubit (x) env
/// state, evolves it under the joint Hamiltonian of the model, rotates the
/// qubit to (|0>+|1>)/sqrt(2) at tau, evolves again, partial-traces, and reads
/// the (0,1) element with the deterministic qubit phase stripped.
Complex joint_oracle(const PureDephasingModel& model, const EnvState& r0, int prep,
                     double tau_us, double t_us, Eigen::Index dim_cap = kKronDimCap);

}  // namespace qee
