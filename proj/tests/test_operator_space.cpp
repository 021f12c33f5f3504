#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "tomokit/operator_space.hpp"

using namespace tomo;

namespace {

OperatorMatrix pauli(int k) {
  CMatrix m(2, 2);
  const Complex i(0, 1);
  if (k == 1) m << 0, 1, 1, 0;
  if (k == 2) m << 0, -i, i, 0;
  if (k == 3) m << 1, 0, 0, -1;
  return OperatorMatrix(m);
}

CMatrix random_matrix(int n, Rng& rng) {
  std::normal_distribution<double> g;
  CMatrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = {g(rng), g(rng)};
  return m;
}

}  // namespace

TEST_CASE("operator matrix validates shape and caches hermiticity") {
  CHECK_THROWS_AS(OperatorMatrix(CMatrix(2, 3)), DimensionError);
  CHECK_THROWS_AS(OperatorMatrix(CMatrix(0, 0)), DimensionError);
  CHECK(pauli(2).hermitian_hint());
  CMatrix m(2, 2);
  m << 1, 2, 3, 4;
  CHECK_FALSE(OperatorMatrix(m).hermitian_hint());
  CHECK(OperatorMatrix(m).hermiticity_residual() == doctest::Approx(1.0));
}

TEST_CASE("hs inner product") {
  CHECK(hs_inner(OperatorMatrix::identity(2), OperatorMatrix::identity(2)) == Complex(2, 0));
  CHECK(std::abs(hs_inner(pauli(1), pauli(2))) < 1e-15);
  CHECK_THROWS_AS(hs_inner(OperatorMatrix::identity(2), OperatorMatrix::identity(3)), DimensionError);

  Rng rng(7);
  const OperatorMatrix a(random_matrix(3, rng)), b(random_matrix(3, rng));
  Complex sum = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) sum += std::conj(a(i, j)) * b(i, j);
  CHECK(std::abs(hs_inner(a, b) - sum) < 1e-13);
  CHECK(std::abs(hs_inner(a, b) - std::conj(hs_inner(b, a))) < 1e-13);
  CHECK(std::abs(hs_inner(a, b) - mat_to_vec(a).dot(mat_to_vec(b))) < 1e-13);
  CHECK(hs_inner(a, a).real() > 0);
  CHECK(std::abs(hs_inner(OperatorMatrix::zero(3), OperatorMatrix::zero(3))) == 0.0);
}

TEST_CASE("row-major flattening") {
  CMatrix m(2, 2);
  m << Complex(1, 1), 2, 3, Complex(0, 4);
  const CVector v = mat_to_vec(OperatorMatrix(m));
  CHECK(v(0) == Complex(1, 1));
  CHECK(v(1) == Complex(2, 0));
  CHECK(v(2) == Complex(3, 0));
  CHECK(v(3) == Complex(0, 4));
  CVector id = mat_to_vec(OperatorMatrix::identity(2));
  CHECK(id(0) == 1.0);
  CHECK(id(1) == 0.0);
  CHECK(id(3) == 1.0);
  CHECK(vec_to_mat(id).entries() == CMatrix::Identity(2, 2));

  Rng rng(3);
  const OperatorMatrix a(random_matrix(4, rng));
  CHECK(vec_to_mat(mat_to_vec(a)).entries() == a.entries());
  CVector nine = CVector::Random(9);
  CHECK(mat_to_vec(vec_to_mat(nine)) == nine);
  CHECK_THROWS_AS(vec_to_mat(CVector::Zero(5)), DimensionError);
}

TEST_CASE("generator basis is orthogonal with the stated norms") {
  for (int n = 1; n <= 4; ++n) {
    const auto tau = generator_basis(n);
    REQUIRE(tau.size() == static_cast<std::size_t>(n * n));
    CHECK(tau[0].entries() == CMatrix::Identity(n, n));
    for (std::size_t a = 0; a < tau.size(); ++a) {
      CHECK(tau[a].hermitian_hint());
      if (a > 0) CHECK(std::abs(tau[a].trace()) < 1e-14);
      for (std::size_t b = 0; b < tau.size(); ++b) {
        const double expect = a == b ? generator_norm(n, static_cast<int>(a)) : 0.0;
        CHECK(std::abs(hs_inner(tau[a], tau[b]) - expect) < 1e-13);
      }
    }
  }
}

TEST_CASE("two-level decomposition matches the sigma components") {
  const Complex a1(0.3, 0.1), a2(1.2, -0.5), a3(-0.7, 0.4), a4(0.2, 2.0);
  CMatrix m(2, 2);
  m << a1, a2, a3, a4;
  const CVector c = hermitian_basis_decompose(OperatorMatrix(m));
  // ordering: identity, sigma_1, sigma_2, sigma_3 with coefficients Tr(tau A)/Tr(tau^2)
  const Complex i(0, 1);
  CHECK(std::abs(c(0) - (a1 + a4) / 2.0) < 1e-15);
  CHECK(std::abs(c(1) - (a2 + a3) / 2.0) < 1e-15);
  CHECK(std::abs(c(2) - i * (a2 - a3) / 2.0) < 1e-15);
  CHECK(std::abs(c(3) - (a1 - a4) / 2.0) < 1e-15);

  const CVector id = hermitian_basis_decompose(OperatorMatrix::identity(2));
  CHECK(std::abs(id(0) - 1.0) < 1e-15);
  CHECK(id.tail(3).norm() < 1e-15);
}

TEST_CASE("hermitian recomposition and real coefficients") {
  Rng rng(11);
  for (int n = 2; n <= 5; ++n) {
    const auto h = random_hermitian(n, rng);
    const CVector c = hermitian_basis_decompose(h);
    CHECK(c.imag().cwiseAbs().maxCoeff() < 1e-12);
    CHECK(max_abs_diff(hermitian_basis_compose(c), h) < 1e-12);
    const OperatorMatrix g(random_matrix(n, rng));
    const CVector cg = hermitian_basis_decompose(g);
    CHECK(cg.imag().cwiseAbs().maxCoeff() > 1e-3);
    CHECK(max_abs_diff(hermitian_basis_compose(cg), g) < 1e-12);
  }
}

TEST_CASE("rank-one projectors") {
  const auto e1 = projector_from_vector(CVector::Unit(2, 0));
  CHECK(e1.matrix.entries() == (CMatrix(2, 2) << 1, 0, 0, 0).finished());
  CVector v(2);
  v << 1, 1;
  const auto p = projector_from_vector(v);
  CHECK(p.matrix.entries().isApprox(CMatrix::Constant(2, 2, 0.5), 1e-15));
  CHECK_THROWS_AS(projector_from_vector(CVector::Zero(3)), DomainError);

  Rng rng(5);
  for (int k = 0; k < 10; ++k) {
    std::normal_distribution<double> g;
    CVector w(4);
    for (int i = 0; i < 4; ++i) w(i) = {g(rng), g(rng)};
    const auto q = projector_from_vector(3.7 * w);
    CHECK(std::abs(q.vector.norm() - 1.0) < 1e-12);
    CHECK(std::abs(q.matrix.trace() - 1.0) < 1e-10);
    CHECK(max_abs_diff(q.matrix * q.matrix, q.matrix) < 1e-10);
    CHECK(q.matrix.hermitian_hint());
  }

  CMatrix sum = CMatrix::Zero(3, 3);
  for (int k = 0; k < 3; ++k) sum += projector_from_vector(CVector::Unit(3, k)).matrix.entries();
  CHECK(sum == CMatrix::Identity(3, 3));
}

TEST_CASE("bloch coordinates") {
  const auto up = bloch_coordinates(projector_from_vector(CVector::Unit(2, 0)));
  CHECK(up.coeffs[0] == doctest::Approx(0.5));
  const auto bv = up.bloch_vector();
  CHECK(bv[0] == doctest::Approx(0.0));
  CHECK(bv[1] == doctest::Approx(0.0));
  CHECK(bv[2] == doctest::Approx(0.5));

  CVector v(2);
  v << 1, 1;
  const auto eq = bloch_coordinates(projector_from_vector(v)).bloch_vector();
  CHECK(std::abs(eq[2]) < 1e-15);
  CHECK(eq[0] == doctest::Approx(0.5));

  Rng rng(9);
  for (int k = 0; k < 10; ++k) {
    const auto b2 = bloch_coordinates(projector_from_vector(random_unit_vector(2, rng)));
    const auto r = b2.bloch_vector();
    CHECK(std::abs(b2.coeffs[0] - 0.5) < 1e-12);
    CHECK(std::abs(r[0] * r[0] + r[1] * r[1] + r[2] * r[2] - 0.25) < 1e-10);
    const auto b3 = bloch_coordinates(projector_from_vector(random_unit_vector(3, rng)));
    CHECK(std::abs(b3.coeffs[0] - 1.0 / 3) < 1e-12);
  }
}

TEST_CASE("random density matrices") {
  CHECK(random_density_matrix(1, 4).entries()(0, 0) == Complex(1, 0));
  CHECK_THROWS(random_density_matrix(0, 1));
  for (std::uint64_t seed : {1u, 2u, 99u}) {
    const auto rho = random_density_matrix(4, seed);
    CHECK(rho.hermitian_hint());
    Eigen::SelfAdjointEigenSolver<CMatrix> eig(rho.entries());
    CHECK(eig.eigenvalues().minCoeff() > -1e-12);
    CHECK(std::abs(eig.eigenvalues().sum() - 1.0) < 1e-12);
    CHECK(rho.entries() == random_density_matrix(4, seed).entries());
  }
  CHECK(random_density_matrix(4, 1).entries() != random_density_matrix(4, 2).entries());
}

TEST_CASE("random unitaries are unitary") {
  Rng rng(21);
  for (int n : {1, 2, 5}) {
    const CMatrix u = random_unitary(n, rng);
    CHECK((u.adjoint() * u - CMatrix::Identity(n, n)).norm() < 1e-12);
  }
}

TEST_CASE("fidelity") {
  const auto rho = random_density_matrix(3, 8);
  CHECK(fidelity(rho, rho) == doctest::Approx(1.0).epsilon(1e-10));
  const auto p0 = projector_from_vector(CVector::Unit(3, 0)).matrix;
  const auto p1 = projector_from_vector(CVector::Unit(3, 1)).matrix;
  CHECK(fidelity(p0, p1) < 1e-12);
  // pure states: F = <psi|rho|psi>
  CHECK(fidelity(p0, rho) == doctest::Approx(rho(0, 0).real()).epsilon(1e-10));
  // zero padding of the smaller operand
  const auto small = projector_from_vector(CVector::Unit(2, 0)).matrix;
  CHECK(fidelity(small, p0) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(resize_operator(rho, 2).entries() == rho.entries().topLeftCorner(2, 2));
  CHECK(resize_operator(rho, 5).entries().bottomRightCorner(2, 2).norm() == 0.0);
}
