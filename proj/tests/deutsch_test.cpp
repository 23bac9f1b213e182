#include "nlctc/deutsch.hpp"

#include <gtest/gtest.h>

#include <iostream>

#include "test_util.hpp"

using namespace nlctc;
using namespace nlctc::deutsch;

namespace {

double distance(const ComplexMatrix& a, const ComplexMatrix& b) { return trace_norm(a - b); }

UnitaryMatrix grandfather() { return product_gate(ComplexMatrix::Identity(2, 2), pauli_x()); }

DensityMatrix plus_state() {
  ComplexMatrix m(2, 2);
  m << 0.5, 0.5, 0.5, 0.5;
  return DensityMatrix(m);
}

}  // namespace

TEST(density_matrix, validation) {
  ComplexMatrix not_hermitian(2, 2);
  not_hermitian << 0.5, 0.1, 0.0, 0.5;
  EXPECT_THROW(DensityMatrix{not_hermitian}, Error);
  EXPECT_THROW(DensityMatrix{ComplexMatrix::Identity(2, 2)}, Error);  // trace 2
  ComplexMatrix negative(2, 2);
  negative << 1.5, 0.0, 0.0, -0.5;
  EXPECT_THROW(DensityMatrix{negative}, Error);
  EXPECT_THROW(DensityMatrix{ComplexMatrix::Zero(2, 3)}, Error);
  EXPECT_NO_THROW(plus_state());
}

TEST(unitary_matrix, validation) {
  EXPECT_THROW(UnitaryMatrix(ComplexMatrix::Ones(4, 4), 2, 2), Error);
  EXPECT_THROW(UnitaryMatrix(ComplexMatrix::Identity(4, 4), 2, 3), Error);
  EXPECT_NO_THROW(swap_gate(3));
}

TEST(induced_map, swap_returns_cr_state) {
  std::mt19937 rng(7);
  const auto rho = fixtures::random_density(2, rng);
  const auto sigma = fixtures::random_density(2, rng);
  EXPECT_LT(distance(induced_map(swap_gate(2), rho, sigma).matrix(), rho.matrix()), 1e-12);
}

TEST(induced_map, identity_returns_sigma) {
  std::mt19937 rng(8);
  const auto rho = fixtures::random_density(2, rng);
  const auto sigma = fixtures::random_density(2, rng);
  EXPECT_LT(distance(induced_map(identity_gate(2, 2), rho, sigma).matrix(), sigma.matrix()), 1e-12);
}

TEST(induced_map, local_x_conjugates_sigma) {
  std::mt19937 rng(9);
  const auto rho = fixtures::random_density(2, rng);
  const auto sigma = fixtures::random_density(2, rng);
  const ComplexMatrix expected = pauli_x() * sigma.matrix() * pauli_x();
  EXPECT_LT(distance(induced_map(grandfather(), rho, sigma).matrix(), expected), 1e-12);
}

TEST(induced_map, dimension_mismatch) {
  EXPECT_THROW((void)induced_map(swap_gate(2), DensityMatrix::maximally_mixed(3), DensityMatrix::maximally_mixed(2)),
               Error);
}

TEST(induced_map, preserves_states_for_random_unitaries) {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const int dc = 1 + trial % 3, dt = 1 + (trial / 3) % 3;
    const UnitaryMatrix u(fixtures::random_unitary(dc * dt, rng), dc, dt);
    const auto rho = fixtures::random_density(dc, rng);
    const auto sigma = fixtures::random_density(dt, rng);
    // The validating constructor inside induced_map/cr_output checks
    // trace, Hermiticity and positivity.
    const auto out = induced_map(u, rho, sigma);
    EXPECT_NEAR(out.matrix().trace().real(), 1.0, 1e-10);
    const auto cr = cr_output(u, rho, sigma);
    EXPECT_NEAR(cr.matrix().trace().real(), 1.0, 1e-10);
  }
}

TEST(fixed_point, swap_settles_on_cr_state) {
  std::mt19937 rng(12);
  const auto rho = fixtures::random_density(2, rng);
  const auto result = find_fixed_point(swap_gate(2), rho);
  EXPECT_LT(result.residual, 1e-10);
  EXPECT_LE(result.iterations, 2);
  EXPECT_LT(distance(result.sigma.matrix(), rho.matrix()), 1e-10);
  EXPECT_LT(distance(result.cr_output.matrix(), rho.matrix()), 1e-10);
}

TEST(fixed_point, local_x_gives_maximally_mixed) {
  const auto result = find_fixed_point(grandfather(), plus_state());
  EXPECT_LT(distance(result.sigma.matrix(), ComplexMatrix::Identity(2, 2) / 2.0), 1e-10);
}

TEST(fixed_point, local_x_start_point_is_already_fixed) {
  // X s X = s for Hermitian s = [[p, q], [q*, 1-p]] needs p = 1/2 and q real,
  // a whole segment of fixed points; the start point I/2 lies on it.
  const auto result = find_fixed_point(grandfather(), DensityMatrix::basis_state(2, 0));
  EXPECT_EQ(result.iterations, 0);
  EXPECT_LT(distance(induced_map(grandfather(), DensityMatrix::basis_state(2, 0), result.sigma).matrix(),
                     result.sigma.matrix()),
            1e-12);
}

TEST(fixed_point, identity_keeps_start_point) {
  std::mt19937 rng(13);
  const auto result = find_fixed_point(identity_gate(2, 3), fixtures::random_density(2, rng));
  EXPECT_EQ(result.iterations, 0);
  EXPECT_LT(distance(result.sigma.matrix(), ComplexMatrix::Identity(3, 3) / 3.0), 1e-12);
}

TEST(cr_output, identity_and_cnot) {
  std::mt19937 rng(14);
  const auto rho = fixtures::random_density(2, rng);
  const auto id = find_fixed_point(identity_gate(2, 2), rho);
  EXPECT_LT(distance(id.cr_output.matrix(), rho.matrix()), 1e-12);

  const auto zero = DensityMatrix::basis_state(2, 0);
  const auto cnot = find_fixed_point(cnot_gate(), zero);
  EXPECT_LT(distance(cnot.sigma.matrix(), ComplexMatrix::Identity(2, 2) / 2.0), 1e-12);
  EXPECT_LT(distance(cnot.cr_output.matrix(), zero.matrix()), 1e-12);
}

TEST(fixed_point, rejects_bad_arguments) {
  const auto rho = DensityMatrix::maximally_mixed(2);
  EXPECT_THROW((void)find_fixed_point(swap_gate(2), rho, 0.0), Error);
  EXPECT_THROW((void)find_fixed_point(swap_gate(2), DensityMatrix::maximally_mixed(3)), Error);
}

TEST(fixed_point, reports_non_convergence_with_best_residual) {
  try {
    (void)find_fixed_point(swap_gate(2), DensityMatrix::basis_state(2, 1), 1e-10, 1);
    FAIL();
  } catch (const NonConvergence& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNoConvergence);
    EXPECT_NEAR(e.best_residual(), 1.0, 1e-12);  // || |1><1| - I/2 ||_1
  }
}

TEST(fixed_point, product_unitaries_act_locally) {
  std::mt19937 rng(15);
  for (int trial = 0; trial < 10; ++trial) {
    const auto a = fixtures::random_unitary(2, rng);
    const auto b = fixtures::random_unitary(2, rng);
    const auto rho = fixtures::random_density(2, rng);
    const auto result = find_fixed_point(product_gate(a, b), rho);
    EXPECT_LT(distance(b * result.sigma.matrix() * b.adjoint(), result.sigma.matrix()), 1e-10);
    EXPECT_LT(distance(result.cr_output.matrix(), a * rho.matrix() * a.adjoint()), 1e-10);
  }
}

// Random interactions: the solver must land on a genuine fixed point. The
// averaged residual is not proven monotone; violations are only logged.
TEST(fixed_point, random_unitaries_converge) {
  std::mt19937 rng(16);
  int violations = 0;
  for (int trial = 0; trial < 20; ++trial) {
    const int dc = 2, dt = trial % 2 ? 2 : 4;
    const UnitaryMatrix u(fixtures::random_unitary(dc * dt, rng), dc, dt);
    const auto rho = fixtures::random_density(dc, rng);
    double last = std::numeric_limits<double>::infinity();
    const auto result = find_fixed_point(u, rho, kDefaultResidualTolerance, kDefaultMaxIterations,
                                         [&](long, double r) {
                                           if (r > last + 1e-12) ++violations;
                                           last = r;
                                         });
    EXPECT_LE(result.residual, kDefaultResidualTolerance);
    EXPECT_LT(distance(induced_map(u, rho, result.sigma).matrix(), result.sigma.matrix()), 1e-9);
    EXPECT_NEAR(result.cr_output.matrix().trace().real(), 1.0, 1e-10);
  }
  std::cout << "[info] averaged-residual monotonicity violations: " << violations << "\n";
}

TEST(crosscheck, grandfather_is_resolved_probabilistically) {
  const auto check = classical_consistency_crosscheck(grandfather(), DensityMatrix::diagonal({0.3, 0.7}));
  EXPECT_TRUE(check.classical_paradox);
  EXPECT_TRUE(check.classical_distribution.empty());
  EXPECT_NEAR(check.deutsch_diagonal[0], 0.5, 1e-12);
  EXPECT_NEAR(check.deutsch_diagonal[1], 0.5, 1e-12);
  EXPECT_TRUE(check.passed);
}

TEST(crosscheck, swap_feeds_the_cr_bit_back) {
  const auto check = classical_consistency_crosscheck(swap_gate(2), DensityMatrix::basis_state(2, 1));
  EXPECT_FALSE(check.classical_paradox);
  EXPECT_EQ(check.classical_distribution, (std::vector{0.0, 1.0}));
  EXPECT_NEAR(check.deutsch_diagonal[1], 1.0, 1e-12);
  EXPECT_TRUE(check.passed);
}

TEST(crosscheck, identity_loop_is_unconstrained) {
  const auto check = classical_consistency_crosscheck(identity_gate(2, 2), DensityMatrix::basis_state(2, 0));
  EXPECT_FALSE(check.classical_paradox);
  EXPECT_EQ(check.classical_distribution, (std::vector{0.5, 0.5}));
  EXPECT_TRUE(check.passed);
}

TEST(crosscheck, cnot_control_selects_loop) {
  // CR = 0: identity loop; CR = 1: grandfather loop (paradox classically).
  EXPECT_TRUE(classical_consistency_crosscheck(cnot_gate(), DensityMatrix::basis_state(2, 0)).passed);
  const auto one = classical_consistency_crosscheck(cnot_gate(), DensityMatrix::basis_state(2, 1));
  EXPECT_TRUE(one.classical_paradox);
  EXPECT_TRUE(one.passed);
}

TEST(crosscheck, rejects_non_permutations_and_coherent_inputs) {
  ComplexMatrix h(2, 2);
  h << 1, 1, 1, -1;
  h /= std::sqrt(2.0);
  try {
    (void)classical_consistency_crosscheck(product_gate(h, ComplexMatrix::Identity(2, 2)),
                                           DensityMatrix::basis_state(2, 0));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNotPermutation);
  }
  EXPECT_THROW((void)classical_consistency_crosscheck(swap_gate(2), plus_state()), Error);
}

TEST(linear_algebra, partial_traces_of_product) {
  std::mt19937 rng(17);
  const auto a = fixtures::random_density(2, rng);
  const auto b = fixtures::random_density(3, rng);
  const auto ab = kron(a.matrix(), b.matrix());
  EXPECT_LT(distance(trace_out_first(ab, 2, 3), b.matrix()), 1e-12);
  EXPECT_LT(distance(trace_out_second(ab, 2, 3), a.matrix()), 1e-12);
}
