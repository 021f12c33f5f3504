#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <unsupported/Eigen/MatrixFunctions>

#include "tomokit/special_functions.hpp"

using namespace tomo;

namespace {

HalfInteger H(int twice) { return HalfInteger::from_twice(twice); }

// exp(-i beta J_y) in the |j, j>, ..., |j, -j> basis
Eigen::MatrixXd d_matrix_oracle(HalfInteger j, double beta) {
  const auto ms = projections(j);
  const int n = static_cast<int>(ms.size());
  CMatrix jy = CMatrix::Zero(n, n);
  const double jj = j.value();
  for (int r = 1; r < n; ++r) {
    const double m = ms[static_cast<std::size_t>(r)].value();
    const double up = std::sqrt(jj * (jj + 1) - m * (m + 1));  // <m+1|J+|m>
    jy(r - 1, r) = Complex(0, -0.5 * up);
    jy(r, r - 1) = Complex(0, 0.5 * up);
  }
  const CMatrix gen = Complex(0, -beta) * jy;
  return gen.exp().real();
}

// sum_i (-1)^i C(n+k, n-i) x^i / i! with exact integer binomials
double laguerre_series(int n, int k, double x) {
  long double s = 0.0L, term = 1.0L;
  for (int i = 0; i < n; ++i) term *= static_cast<long double>(n + k - i) / (i + 1);  // C(n+k, n)
  for (int i = 0; i <= n; ++i) {
    s += term;
    term *= -static_cast<long double>(x) * (n - i) / ((k + i + 1) * static_cast<long double>(i + 1));
  }
  return static_cast<double>(s);
}

}  // namespace

TEST_CASE("half integers") {
  CHECK(HalfInteger::parse("3/2").twice() == 3);
  CHECK(HalfInteger::parse("-1/2").twice() == -1);
  CHECK(HalfInteger::parse("2").twice() == 4);
  CHECK_THROWS_AS(HalfInteger::parse("1/3"), DomainError);
  CHECK_THROWS_AS(HalfInteger::parse("x"), DomainError);
  CHECK(HalfInteger::from_double(2.5).twice() == 5);
  CHECK_THROWS_AS(HalfInteger::from_double(0.3), DomainError);
  CHECK(H(3).str() == "3/2");
  CHECK(H(4).str() == "2");
  const auto ms = projections(H(3));
  REQUIRE(ms.size() == 4);
  CHECK(ms.front() == H(3));
  CHECK(ms.back() == H(-3));
  CHECK(H(1) + H(1) == HalfInteger::from_int(1));
}

TEST_CASE("3j special values") {
  CHECK(wigner_3j(H(2), H(2), H(2), H(2), H(0), H(0)) == 0.0);  // m sum = 1
  for (int tj = 0; tj <= 8; ++tj)
    for (int tm = -tj; tm <= tj; tm += 2) {
      const double sign = ((tj - tm) / 2) % 2 == 0 ? 1.0 : -1.0;
      CHECK(wigner_3j(H(tj), H(tj), H(0), H(tm), H(-tm), H(0)) ==
            doctest::Approx(sign / std::sqrt(tj + 1.0)).epsilon(1e-13));
    }
  CHECK(wigner_3j(H(2), H(2), H(4), H(0), H(0), H(0)) == doctest::Approx(std::sqrt(2.0 / 15)).epsilon(1e-13));
  CHECK(wigner_3j(H(2), H(2), H(2), H(0), H(0), H(0)) == doctest::Approx(0.0));
  // triangle and range violations are zero, not errors
  CHECK(wigner_3j(H(2), H(2), H(6), H(0), H(0), H(0)) == 0.0);
  CHECK(wigner_3j(H(2), H(2), H(2), H(4), H(-4), H(0)) == 0.0);
  CHECK_THROWS_AS(wigner_3j(H(2), H(2), H(2), H(1), H(-1), H(0)), DomainError);
  CHECK_THROWS_AS(wigner_3j(H(-2), H(2), H(2), H(0), H(0), H(0)), DomainError);
}

TEST_CASE("3j permutation symmetry") {
  for (int a = 0; a <= 4; ++a)
    for (int b = 0; b <= 4; ++b)
      for (int c = std::abs(a - b); c <= a + b && c <= 4; c += 2)
        for (int ma = -a; ma <= a; ma += 2)
          for (int mb = -b; mb <= b; mb += 2) {
            const int mc = -ma - mb;
            if (std::abs(mc) > c) continue;
            const double v = wigner_3j(H(a), H(b), H(c), H(ma), H(mb), H(mc));
            const double odd = ((a + b + c) / 2) % 2 == 0 ? 1.0 : -1.0;
            CHECK(wigner_3j(H(b), H(c), H(a), H(mb), H(mc), H(ma)) == doctest::Approx(v).epsilon(1e-12));
            CHECK(wigner_3j(H(c), H(a), H(b), H(mc), H(ma), H(mb)) == doctest::Approx(v).epsilon(1e-12));
            CHECK(wigner_3j(H(b), H(a), H(c), H(mb), H(ma), H(mc)) == doctest::Approx(odd * v).epsilon(1e-12));
            CHECK(wigner_3j(H(a), H(c), H(b), H(ma), H(mc), H(mb)) == doctest::Approx(odd * v).epsilon(1e-12));
            CHECK(wigner_3j(H(a), H(b), H(c), H(-ma), H(-mb), H(-mc)) == doctest::Approx(odd * v).epsilon(1e-12));
          }
}

TEST_CASE("3j orthogonality") {
  double worst = 0.0;
  for (int a = 0; a <= 4; ++a)
    for (int b = 0; b <= 4; ++b)
      for (int c = std::abs(a - b); c <= a + b; c += 2)
        for (int c2 = std::abs(a - b); c2 <= a + b; c2 += 2)
          for (int m3 = -c; m3 <= c; m3 += 2)
            for (int m32 = -c2; m32 <= c2; m32 += 2) {
              double s = 0.0;
              for (int ma = -a; ma <= a; ma += 2)
                for (int mb = -b; mb <= b; mb += 2)
                  s += (c + 1) * wigner_3j(H(a), H(b), H(c), H(ma), H(mb), H(m3)) *
                       wigner_3j(H(a), H(b), H(c2), H(ma), H(mb), H(m32));
              worst = std::max(worst, std::abs(s - ((c == c2 && m3 == m32) ? 1.0 : 0.0)));
            }
  CHECK(worst < 1e-12);
}

TEST_CASE("3j with large arguments stays finite") {
  const double v = wigner_3j(H(64), H(64), H(64), H(0), H(0), H(0));
  CHECK(std::isfinite(v));
  CHECK(std::abs(v) < 1.0);
}

TEST_CASE("small d against explicit forms and the J_y exponential") {
  const double b = 0.83;
  CHECK(wigner_d(H(1), H(1), H(1), b) == doctest::Approx(std::cos(b / 2)));
  CHECK(wigner_d(H(1), H(1), H(-1), b) == doctest::Approx(-std::sin(b / 2)));
  CHECK(wigner_d(H(2), H(2), H(2), b) == doctest::Approx((1 + std::cos(b)) / 2));
  CHECK(wigner_d(H(2), H(2), H(0), b) == doctest::Approx(-std::sin(b) / std::sqrt(2.0)));
  CHECK(wigner_d(H(2), H(0), H(0), b) == doctest::Approx(std::cos(b)));
  CHECK(wigner_d(H(2), H(2), H(-2), b) == doctest::Approx((1 - std::cos(b)) / 2));
  for (int tj = 1; tj <= 6; ++tj) {
    const auto oracle = d_matrix_oracle(H(tj), b);
    const auto ms = projections(H(tj));
    for (std::size_t r = 0; r < ms.size(); ++r)
      for (std::size_t c = 0; c < ms.size(); ++c)
        CHECK(std::abs(wigner_d(H(tj), ms[r], ms[c], b) - oracle(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c))) <
              1e-12);
  }
  CHECK_THROWS_AS(wigner_d(H(2), H(4), H(0), b), DomainError);
}

TEST_CASE("d group property") {
  for (int tj = 0; tj <= 4; ++tj) {
    const double b1 = 0.4, b2 = 1.9;
    const CMatrix d1 = wigner_D_matrix(H(tj), 0, b1, 0), d2 = wigner_D_matrix(H(tj), 0, b2, 0);
    const CMatrix d12 = wigner_D_matrix(H(tj), 0, b1 + b2, 0);
    CHECK((d1 * d2 - d12).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("big D") {
  for (int tj = 0; tj <= 4; ++tj) {
    const auto id = wigner_D_matrix(H(tj), 0, 0, 0);
    CHECK((id - CMatrix::Identity(tj + 1, tj + 1)).norm() < 1e-14);
  }
  const CMatrix d = wigner_D_matrix(H(2), 0.7, 2.1, -1.3);
  CHECK((d * d.adjoint() - CMatrix::Identity(3, 3)).norm() < 1e-12);
  const Complex v = wigner_D(H(2), H(2), H(-2), 0.7, 2.1, -1.3);
  CHECK(std::abs(v - std::polar(wigner_d(H(2), H(2), H(-2), 2.1), -(1.0 * 0.7 + (-1.0) * (-1.3)))) < 1e-14);
  CHECK(std::abs(wigner_D(H(1), H(1), H(1), 0.0, 1.2, 0.0) - std::cos(0.6)) < 1e-14);
}

TEST_CASE("associated Laguerre") {
  CHECK(laguerre_assoc(0, 3, 2.7) == 1.0);
  CHECK(laguerre_assoc(1, 0, 0.4) == doctest::Approx(0.6));
  CHECK(laguerre_assoc(3, 2, 1.5) == doctest::Approx(laguerre_series(3, 2, 1.5)).epsilon(1e-14));
  for (int n = 0; n <= 20; n += 5)
    for (int k = 0; k <= 12; k += 3)
      CHECK(laguerre_assoc(n, k, 3.3) == doctest::Approx(laguerre_series(n, k, 3.3)).epsilon(1e-9));
  CHECK_THROWS_AS(laguerre_assoc(-1, 0, 1.0), DomainError);
}

TEST_CASE("hermite functions are orthonormal") {
  CHECK(hermite_function(0, 0.4) == doctest::Approx(std::pow(kPi, -0.25) * std::exp(-0.08)));
  const auto rule = gauss_legendre(200, -14, 14);
  const int nmax = 30;
  Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(nmax + 1, nmax + 1);
  for (std::size_t i = 0; i < rule.size(); ++i) {
    const auto h = hermite_functions(nmax, rule.nodes[i]);
    for (int a = 0; a <= nmax; ++a)
      for (int b = 0; b <= nmax; ++b) gram(a, b) += rule.weights[i] * h[static_cast<std::size_t>(a)] * h[static_cast<std::size_t>(b)];
  }
  CHECK((gram - Eigen::MatrixXd::Identity(nmax + 1, nmax + 1)).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(hermite_functions(5, 1.1)[5] == doctest::Approx(hermite_function(5, 1.1)));
}

TEST_CASE("gauss-legendre") {
  const auto one = gauss_legendre(1, -1, 1);
  CHECK(one.nodes[0] == doctest::Approx(0.0));
  CHECK(one.weights[0] == doctest::Approx(2.0));
  const auto two = gauss_legendre(2, -1, 1);
  CHECK(std::abs(std::abs(two.nodes[0]) - 1 / std::sqrt(3.0)) < 1e-15);
  CHECK(two.weights[0] == doctest::Approx(1.0));
  CHECK(two.weights[1] == doctest::Approx(1.0));
  CHECK(std::abs(gauss_legendre(3, -1, 1).integrate([](double x) { return std::pow(x, 4); }) - 0.4) < 1e-14);
  // exact for degree 2n-1 on a mapped interval
  const auto r = gauss_legendre(6, 0.5, 3.0);
  const double exact = (std::pow(3.0, 12) - std::pow(0.5, 12)) / 12;
  CHECK(r.integrate([](double x) { return std::pow(x, 11); }) == doctest::Approx(exact).epsilon(1e-13));
  double last = 1.0;
  for (int n : {4, 8, 16}) {
    const double err = std::abs(gauss_legendre(n, 0, kPi).integrate([](double x) { return std::sin(x); }) - 2.0);
    CHECK(err < last);
    last = err;
  }
  CHECK(last < 1e-12);
  CHECK_THROWS_AS(gauss_legendre(3, 1.0, 1.0), DomainError);
  CHECK_THROWS_AS(gauss_legendre(0, 0.0, 1.0), DomainError);
}

TEST_CASE("uniform periodic rule") {
  const auto r = uniform_periodic(4, 2 * kPi);
  for (double w : r.weights) CHECK(w == doctest::Approx(kPi / 2));
  for (int n = 2; n <= 6; ++n)
    CHECK(std::abs(uniform_periodic(n, 2 * kPi).integrate([](double t) { return std::polar(1.0, t); })) < 1e-14);
  CHECK(uniform_periodic(3, 2 * kPi).integrate([](double t) { return std::cos(t) * std::cos(t); }) ==
        doctest::Approx(kPi).epsilon(1e-14));
  double sum = 0.0;
  for (double w : uniform_periodic(7, 3.0).weights) sum += w;
  CHECK(sum == doctest::Approx(3.0).epsilon(1e-14));
}
