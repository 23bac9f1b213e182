#include "nlctc/deutsch.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace nlctc::deutsch {

namespace {

constexpr double kCrosscheckTolerance = 1e-8;

ComplexMatrix hermitian_part(const ComplexMatrix& m) { return (m + m.adjoint()) / 2.0; }

void check_dim(int dim) {
  if (dim < 1 || dim > kMaxDimension) {
    throw Error(ErrorCode::kDimension, "dimension " + std::to_string(dim) + " outside [1, " +
                                           std::to_string(kMaxDimension) + "]");
  }
}

}  // namespace

DensityMatrix::DensityMatrix(ComplexMatrix m) : m_(std::move(m)) {
  if (m_.rows() != m_.cols()) throw Error(ErrorCode::kDimension, "density matrix must be square");
  check_dim(static_cast<int>(m_.rows()));
  if (!m_.allFinite()) throw Error(ErrorCode::kNotDensity, "density matrix has non-finite entries");
  if ((m_ - m_.adjoint()).cwiseAbs().maxCoeff() > kHermitianTolerance) {
    throw Error(ErrorCode::kNotDensity, "density matrix is not Hermitian");
  }
  const auto trace = m_.trace();
  if (std::abs(trace - std::complex<double>(1.0, 0.0)) > kTraceTolerance) {
    throw Error(ErrorCode::kNotDensity, "density matrix trace is not 1");
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(hermitian_part(m_), Eigen::EigenvaluesOnly);
  if (eig.eigenvalues().minCoeff() < -kEigenvalueTolerance) {
    throw Error(ErrorCode::kNotDensity, "density matrix has a negative eigenvalue");
  }
}

DensityMatrix DensityMatrix::maximally_mixed(int dim) {
  check_dim(dim);
  return DensityMatrix(ComplexMatrix::Identity(dim, dim) / static_cast<double>(dim));
}

DensityMatrix DensityMatrix::basis_state(int dim, int index) {
  check_dim(dim);
  if (index < 0 || index >= dim) throw Error(ErrorCode::kInvalidArgument, "basis index out of range");
  ComplexMatrix m = ComplexMatrix::Zero(dim, dim);
  m(index, index) = 1.0;
  return DensityMatrix(std::move(m));
}

DensityMatrix DensityMatrix::diagonal(const std::vector<double>& probs) {
  const int dim = static_cast<int>(probs.size());
  check_dim(dim);
  ComplexMatrix m = ComplexMatrix::Zero(dim, dim);
  for (int i = 0; i < dim; ++i) m(i, i) = probs[static_cast<std::size_t>(i)];
  return DensityMatrix(std::move(m));
}

UnitaryMatrix::UnitaryMatrix(ComplexMatrix m, int cr_dim, int ctc_dim)
    : m_(std::move(m)), cr_dim_(cr_dim), ctc_dim_(ctc_dim) {
  check_dim(cr_dim);
  check_dim(ctc_dim);
  const auto dim = static_cast<Eigen::Index>(cr_dim) * ctc_dim;
  if (m_.rows() != dim || m_.cols() != dim) {
    throw Error(ErrorCode::kDimension, "unitary must be (cr_dim*ctc_dim) square");
  }
  if (!m_.allFinite()) throw Error(ErrorCode::kNotUnitary, "unitary has non-finite entries");
  const ComplexMatrix gram = m_ * m_.adjoint();
  if ((gram - ComplexMatrix::Identity(dim, dim)).cwiseAbs().maxCoeff() > kUnitaryTolerance) {
    throw Error(ErrorCode::kNotUnitary, "matrix is not unitary");
  }
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

ComplexMatrix trace_out_first(const ComplexMatrix& m, int d1, int d2) {
  ComplexMatrix out = ComplexMatrix::Zero(d2, d2);
  for (int k = 0; k < d1; ++k) out += m.block(k * d2, k * d2, d2, d2);
  return out;
}

ComplexMatrix trace_out_second(const ComplexMatrix& m, int d1, int d2) {
  ComplexMatrix out(d1, d1);
  for (int i = 0; i < d1; ++i) {
    for (int j = 0; j < d1; ++j) out(i, j) = m.block(i * d2, j * d2, d2, d2).trace();
  }
  return out;
}

double trace_norm(const ComplexMatrix& m) {
  Eigen::JacobiSVD<ComplexMatrix> svd(m);
  return svd.singularValues().sum();
}

ComplexMatrix pauli_x() {
  ComplexMatrix x(2, 2);
  x << 0, 1, 1, 0;
  return x;
}

UnitaryMatrix swap_gate(int dim) {
  check_dim(dim);
  ComplexMatrix m = ComplexMatrix::Zero(dim * dim, dim * dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) m(j * dim + i, i * dim + j) = 1.0;
  }
  return UnitaryMatrix(std::move(m), dim, dim);
}

UnitaryMatrix identity_gate(int cr_dim, int ctc_dim) {
  const int dim = cr_dim * ctc_dim;
  return UnitaryMatrix(ComplexMatrix::Identity(dim, dim), cr_dim, ctc_dim);
}

UnitaryMatrix cnot_gate() {
  ComplexMatrix m = ComplexMatrix::Zero(4, 4);
  m(0, 0) = m(1, 1) = m(2, 3) = m(3, 2) = 1.0;
  return UnitaryMatrix(std::move(m), 2, 2);
}

UnitaryMatrix product_gate(const ComplexMatrix& cr, const ComplexMatrix& ctc) {
  return UnitaryMatrix(kron(cr, ctc), static_cast<int>(cr.rows()), static_cast<int>(ctc.rows()));
}

namespace {

ComplexMatrix evolve(const UnitaryMatrix& u, const DensityMatrix& rho_cr, const DensityMatrix& sigma) {
  if (rho_cr.dim() != u.cr_dim() || sigma.dim() != u.ctc_dim()) {
    throw Error(ErrorCode::kDimension, "state dimensions do not match the unitary's factors");
  }
  return u.matrix() * kron(rho_cr.matrix(), sigma.matrix()) * u.matrix().adjoint();
}

// Applies the induced map without the validating constructor; used inside
// the solver loop where inputs are known to be states.
ComplexMatrix apply_map(const UnitaryMatrix& u, const ComplexMatrix& rho_cr, const ComplexMatrix& sigma) {
  const ComplexMatrix joint = u.matrix() * kron(rho_cr, sigma) * u.matrix().adjoint();
  return hermitian_part(trace_out_first(joint, u.cr_dim(), u.ctc_dim()));
}

}  // namespace

DensityMatrix induced_map(const UnitaryMatrix& u, const DensityMatrix& rho_cr, const DensityMatrix& sigma) {
  return DensityMatrix(hermitian_part(trace_out_first(evolve(u, rho_cr, sigma), u.cr_dim(), u.ctc_dim())));
}

DensityMatrix cr_output(const UnitaryMatrix& u, const DensityMatrix& rho_cr, const DensityMatrix& sigma) {
  return DensityMatrix(hermitian_part(trace_out_second(evolve(u, rho_cr, sigma), u.cr_dim(), u.ctc_dim())));
}

FixedPointResult find_fixed_point(const UnitaryMatrix& u, const DensityMatrix& rho_cr, double tol,
                                  long max_iter, const IterationObserver& observer) {
  if (!(tol > 0.0)) throw Error(ErrorCode::kInvalidArgument, "tolerance must be positive");
  if (max_iter < 1) throw Error(ErrorCode::kInvalidArgument, "max_iter must be positive");
  if (rho_cr.dim() != u.cr_dim()) throw Error(ErrorCode::kDimension, "rho_CR dimension does not match U");

  const int d = u.ctc_dim();
  const ComplexMatrix& rho = rho_cr.matrix();
  ComplexMatrix sigma = DensityMatrix::maximally_mixed(d).matrix();
  ComplexMatrix sum = ComplexMatrix::Zero(d, d);
  double best = std::numeric_limits<double>::infinity();

  auto finish = [&](const ComplexMatrix& s, double residual, long k) {
    DensityMatrix state(hermitian_part(s));
    auto out = cr_output(u, rho_cr, state);
    return FixedPointResult{std::move(state), residual, k, std::move(out)};
  };

  for (long k = 0; k < max_iter; ++k) {
    const ComplexMatrix next = apply_map(u, rho, sigma);
    const double r_iter = trace_norm(next - sigma);
    if (r_iter <= tol) return finish(sigma, r_iter, k);

    sum += sigma;
    const ComplexMatrix avg = sum / static_cast<double>(k + 1);
    const double r_avg = trace_norm(apply_map(u, rho, avg) - avg);
    if (observer) observer(k, r_avg);
    if (r_avg <= tol) return finish(avg, r_avg, k);

    best = std::min({best, r_iter, r_avg});
    sigma = next;
  }
  throw NonConvergence("no fixed point within " + std::to_string(max_iter) +
                           " iterations; best residual " + std::to_string(best),
                       best);
}

ClassicalCrosscheck classical_consistency_crosscheck(const UnitaryMatrix& u, const DensityMatrix& rho_cr,
                                                     double tol) {
  const int dc = u.cr_dim();
  const int dt = u.ctc_dim();
  const int dim = dc * dt;
  const auto& m = u.matrix();

  // image[col] = row holding the single 1 of column col.
  std::vector<int> image(static_cast<std::size_t>(dim), -1);
  for (int col = 0; col < dim; ++col) {
    for (int row = 0; row < dim; ++row) {
      const double mag = std::abs(m(row, col));
      if (std::abs(m(row, col) - std::complex<double>(1.0, 0.0)) <= kUnitaryTolerance) {
        if (image[static_cast<std::size_t>(col)] != -1) {
          throw Error(ErrorCode::kNotPermutation, "unitary is not a permutation matrix");
        }
        image[static_cast<std::size_t>(col)] = row;
      } else if (mag > kUnitaryTolerance) {
        throw Error(ErrorCode::kNotPermutation, "unitary is not a permutation matrix");
      }
    }
    if (image[static_cast<std::size_t>(col)] == -1) {
      throw Error(ErrorCode::kNotPermutation, "unitary is not a permutation matrix");
    }
  }
  const auto& rho = rho_cr.matrix();
  for (int i = 0; i < dc; ++i) {
    for (int j = 0; j < dc; ++j) {
      if (i != j && std::abs(rho(i, j)) > kHermitianTolerance) {
        throw Error(ErrorCode::kInvalidArgument, "rho_CR must be diagonal for the classical crosscheck");
      }
    }
  }

  ClassicalCrosscheck check;
  // Classical loop: CR value c, CTC value t -> (c', t'). Keep t' == t under
  // the prior rho_c x uniform(t), then renormalize.
  std::vector<double> kept(static_cast<std::size_t>(dt), 0.0);
  double mass = 0.0;
  for (int c = 0; c < dc; ++c) {
    const double pc = rho(c, c).real();
    for (int t = 0; t < dt; ++t) {
      const int t_out = image[static_cast<std::size_t>(c * dt + t)] % dt;
      if (t_out == t && pc > 0.0) {
        kept[static_cast<std::size_t>(t)] += pc / dt;
        mass += pc / dt;
      }
    }
  }
  check.classical_paradox = mass <= 0.0;
  if (!check.classical_paradox) {
    for (auto& v : kept) v /= mass;
    check.classical_distribution = kept;
  }

  const auto fixed = find_fixed_point(u, rho_cr, tol);
  for (int t = 0; t < dt; ++t) check.deutsch_diagonal.push_back(fixed.sigma.matrix()(t, t).real());

  // T(d)_t' = sum_{c,t} rho_c d_t [ctc part of pi(c,t) == t'].
  std::vector<double> mapped(static_cast<std::size_t>(dt), 0.0);
  for (int c = 0; c < dc; ++c) {
    for (int t = 0; t < dt; ++t) {
      const int t_out = image[static_cast<std::size_t>(c * dt + t)] % dt;
      mapped[static_cast<std::size_t>(t_out)] += rho(c, c).real() * check.deutsch_diagonal[static_cast<std::size_t>(t)];
    }
  }
  for (int t = 0; t < dt; ++t) {
    check.classical_residual += std::abs(mapped[static_cast<std::size_t>(t)] - check.deutsch_diagonal[static_cast<std::size_t>(t)]);
  }

  bool agree = true;
  if (!check.classical_paradox) {
    for (int t = 0; t < dt; ++t) {
      agree = agree && std::abs(check.classical_distribution[static_cast<std::size_t>(t)] -
                                check.deutsch_diagonal[static_cast<std::size_t>(t)]) <= kCrosscheckTolerance;
    }
  }
  check.passed = agree && check.classical_residual <= kCrosscheckTolerance;
  return check;
}

}  // namespace nlctc::deutsch
