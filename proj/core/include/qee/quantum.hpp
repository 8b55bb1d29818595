#pragma once

#include <Eigen/Dense>
#include <complex>
#include <optional>

#include "qee/errors.hpp"

namespace qee {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;

inline constexpr double kHermitianRelTol = 1e-12;  // relative Frobenius
inline constexpr double kUnitaryAbsTol = 1e-10;    // absolute Frobenius
inline constexpr Eigen::Index kKronDimCap = 4096;

bool is_finite(const ComplexMatrix& m);
bool is_hermitian(const ComplexMatrix& m, double rel_tol = kHermitianRelTol);

/// A validated Hermitian matrix, entries in rad/us.
class HermitianOperator {
 public:
  explicit HermitianOperator(ComplexMatrix m);

  const ComplexMatrix& matrix() const { return m_; }
  Eigen::Index dim() const { return m_.rows(); }

 private:
  ComplexMatrix m_;
};

/// exp(-iHt) with its generator and evolution time attached.
struct UnitaryPropagator {
  ComplexMatrix matrix;
  std::optional<HermitianOperator> generator;
  double time_us = 0.0;
};

/// exp(-iHt) by spectral decomposition of H. Unitary to 1e-10 Frobenius;
/// negative t gives the inverse propagator.
UnitaryPropagator propagator(const HermitianOperator& h, double time_us);

/// Kronecker product, guarded by a product-dimension cap.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b,
                   Eigen::Index dim_cap = kKronDimCap);

/// ||A - B||_F for equally sized matrices.
double frobenius_distance(const ComplexMatrix& a, const ComplexMatrix& b);

// 2x2 building blocks.
ComplexMatrix pauli_x();
ComplexMatrix pauli_y();
ComplexMatrix pauli_z();

}  // namespace qee
