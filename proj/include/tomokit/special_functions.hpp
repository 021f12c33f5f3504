#pragma once

#include <string>
#include <vector>

#include "tomokit/core.hpp"

namespace tomo {

// Angular momentum quantum numbers stored as twice their value.
class HalfInteger {
 public:
  constexpr HalfInteger() = default;
  static constexpr HalfInteger from_twice(int twice) { return HalfInteger(twice); }
  static constexpr HalfInteger from_int(int v) { return HalfInteger(2 * v); }
  // Rejects values that are not multiples of 1/2.
  static HalfInteger from_double(double v);
  // "3/2", "1", "-1/2"
  static HalfInteger parse(const std::string& s);

  constexpr int twice() const { return twice_; }
  constexpr double value() const { return 0.5 * twice_; }
  constexpr bool is_integer() const { return twice_ % 2 == 0; }
  std::string str() const;

  constexpr HalfInteger operator-() const { return HalfInteger(-twice_); }
  constexpr friend HalfInteger operator+(HalfInteger a, HalfInteger b) { return HalfInteger(a.twice_ + b.twice_); }
  constexpr friend HalfInteger operator-(HalfInteger a, HalfInteger b) { return HalfInteger(a.twice_ - b.twice_); }
  constexpr friend bool operator==(HalfInteger a, HalfInteger b) = default;
  constexpr friend auto operator<=>(HalfInteger a, HalfInteger b) = default;

 private:
  constexpr explicit HalfInteger(int twice) : twice_(twice) {}
  int twice_ = 0;
};

// Projections j, j-1, ..., -j; this is also the basis order of spin matrices.
std::vector<HalfInteger> projections(HalfInteger j);

double log_factorial(int n);

double wigner_3j(HalfInteger j1, HalfInteger j2, HalfInteger j3, HalfInteger m1, HalfInteger m2, HalfInteger m3);

// Small d with the Condon-Shortley phase: d^{1/2}_{1/2,-1/2}(b) = -sin(b/2).
double wigner_d(HalfInteger j, HalfInteger mp, HalfInteger m, double beta);
// exp(-i mp phi) d^j_{mp m}(theta) exp(-i m gamma)
Complex wigner_D(HalfInteger j, HalfInteger mp, HalfInteger m, double phi, double theta, double gamma);
// Rows and columns ordered as projections(j).
CMatrix wigner_D_matrix(HalfInteger j, double phi, double theta, double gamma);

double laguerre_assoc(int n, int k, double x);

// Normalized harmonic-oscillator eigenfunctions.
double hermite_function(int n, double x);
// psi_0 .. psi_nmax at x
std::vector<double> hermite_functions(int nmax, double x);

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
  double lower = 0.0;
  double upper = 0.0;
  bool periodic = false;

  std::size_t size() const { return nodes.size(); }
  template <class F>
  auto integrate(F&& f) const {
    decltype(f(0.0) * 1.0) acc{};
    for (std::size_t i = 0; i < nodes.size(); ++i) acc += weights[i] * f(nodes[i]);
    return acc;
  }
};

QuadratureRule gauss_legendre(int npoints, double a, double b);
QuadratureRule uniform_periodic(int npoints, double period);

}  // namespace tomo
