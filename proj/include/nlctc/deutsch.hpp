#pragma once

#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "nlctc/error.hpp"

namespace nlctc::deutsch {

using ComplexMatrix = Eigen::MatrixXcd;

inline constexpr double kHermitianTolerance = 1e-12;
inline constexpr double kTraceTolerance = 1e-12;
inline constexpr double kEigenvalueTolerance = 1e-10;
inline constexpr double kUnitaryTolerance = 1e-10;
inline constexpr double kDefaultResidualTolerance = 1e-10;
inline constexpr long kDefaultMaxIterations = 100000;
inline constexpr int kMaxDimension = 16;

/// Hermitian, unit trace, positive semidefinite (to the tolerances above).
class DensityMatrix {
 public:
  /// Throws Error(kNotDensity) when the matrix is not a state.
  explicit DensityMatrix(ComplexMatrix m);

  static DensityMatrix maximally_mixed(int dim);
  /// |i><i| in the computational basis.
  static DensityMatrix basis_state(int dim, int index);
  static DensityMatrix diagonal(const std::vector<double>& probs);

  int dim() const noexcept { return static_cast<int>(m_.rows()); }
  const ComplexMatrix& matrix() const noexcept { return m_; }

 private:
  ComplexMatrix m_;
};

/// Unitary on H_CR (x) H_CTC, CR as the first tensor factor.
class UnitaryMatrix {
 public:
  UnitaryMatrix(ComplexMatrix m, int cr_dim, int ctc_dim);

  int cr_dim() const noexcept { return cr_dim_; }
  int ctc_dim() const noexcept { return ctc_dim_; }
  const ComplexMatrix& matrix() const noexcept { return m_; }

 private:
  ComplexMatrix m_;
  int cr_dim_;
  int ctc_dim_;
};

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
/// Tr over the first factor of a (d1*d2)-dimensional operator.
ComplexMatrix trace_out_first(const ComplexMatrix& m, int d1, int d2);
/// Tr over the second factor.
ComplexMatrix trace_out_second(const ComplexMatrix& m, int d1, int d2);
/// Sum of singular values; for Hermitian input, the sum of |eigenvalues|.
double trace_norm(const ComplexMatrix& m);

ComplexMatrix pauli_x();
UnitaryMatrix swap_gate(int dim);
UnitaryMatrix identity_gate(int cr_dim, int ctc_dim);
/// CR qubit controls a NOT on the CTC qubit.
UnitaryMatrix cnot_gate();
/// Local unitaries A on CR and B on CTC.
UnitaryMatrix product_gate(const ComplexMatrix& cr, const ComplexMatrix& ctc);

/// sigma -> Tr_CR[U (rho_CR (x) sigma) U^dagger].
DensityMatrix induced_map(const UnitaryMatrix& u, const DensityMatrix& rho_cr, const DensityMatrix& sigma);

/// Tr_CTC[U (rho_CR (x) sigma) U^dagger].
DensityMatrix cr_output(const UnitaryMatrix& u, const DensityMatrix& rho_cr, const DensityMatrix& sigma);

struct FixedPointResult {
  DensityMatrix sigma;
  double residual;  // || map(sigma) - sigma ||_1
  long iterations;
  DensityMatrix cr_output;
};

/// Raised when neither the iterates nor their running average reach `tol`.
class NonConvergence : public Error {
 public:
  NonConvergence(const std::string& what, double best_residual)
      : Error(ErrorCode::kNoConvergence, what), best_residual_(best_residual) {}
  double best_residual() const noexcept { return best_residual_; }

 private:
  double best_residual_;
};

/// Called once per iteration with the residual of the running average.
using IterationObserver = std::function<void(long iteration, double averaged_residual)>;

/// Iterates sigma_{k+1} = map(sigma_k) from the maximally mixed state, and
/// accepts either the current iterate or the running (Cesaro) average as soon
/// as its residual is within `tol`. Starting from I/d picks the
/// maximum-entropy-leaning solution when the fixed point is not unique.
FixedPointResult find_fixed_point(const UnitaryMatrix& u, const DensityMatrix& rho_cr,
                                  double tol = kDefaultResidualTolerance,
                                  long max_iter = kDefaultMaxIterations,
                                  const IterationObserver& observer = {});

struct ClassicalCrosscheck {
  /// No CTC value survives the classical output = input condition.
  bool classical_paradox = false;
  /// Condition-and-renormalize distribution over CTC basis states (empty on paradox).
  std::vector<double> classical_distribution;
  /// Diagonal of the Deutsch fixed point.
  std::vector<double> deutsch_diagonal;
  /// || T(d) - d ||_1 for the classical stochastic map T induced on diagonals.
  double classical_residual = 0.0;
  bool passed = false;
};

/// For a permutation U and diagonal rho_CR, compares the Deutsch fixed point
/// with the classical loop that feeds the CTC output back as its input.
/// Without a paradox the two must agree; with one, the Deutsch diagonal must
/// still be a fixed point of the classical stochastic map.
ClassicalCrosscheck classical_consistency_crosscheck(const UnitaryMatrix& u, const DensityMatrix& rho_cr,
                                                     double tol = kDefaultResidualTolerance);

}  // namespace nlctc::deutsch
