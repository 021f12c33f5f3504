#include "tomokit/special_functions.hpp"

#include <array>
#include <cmath>
#include <cstdlib>

namespace tomo {

HalfInteger HalfInteger::from_double(double v) {
  const double t = 2.0 * v;
  const double r = std::round(t);
  if (!std::isfinite(v) || std::abs(t - r) > 1e-12)
    throw DomainError("not a half-integer: " + std::to_string(v));
  return HalfInteger(static_cast<int>(r));
}

HalfInteger HalfInteger::parse(const std::string& s) {
  const auto slash = s.find('/');
  try {
    std::size_t pos = 0;
    if (slash == std::string::npos) {
      const int v = std::stoi(s, &pos);
      if (pos != s.size()) throw DomainError("");
      return from_int(v);
    }
    const int num = std::stoi(s.substr(0, slash), &pos);
    if (pos != slash || s.substr(slash + 1) != "2") throw DomainError("");
    return HalfInteger(num);
  } catch (const std::exception&) {
    throw DomainError("not a half-integer: '" + s + "'");
  }
}

std::string HalfInteger::str() const {
  return is_integer() ? std::to_string(twice_ / 2) : std::to_string(twice_) + "/2";
}

std::vector<HalfInteger> projections(HalfInteger j) {
  if (j.twice() < 0) throw DomainError("negative angular momentum");
  std::vector<HalfInteger> out;
  for (int t = j.twice(); t >= -j.twice(); t -= 2) out.push_back(HalfInteger::from_twice(t));
  return out;
}

namespace {

constexpr int kFactorialTable = 1024;

const std::array<double, kFactorialTable>& log_factorial_table() {
  static const std::array<double, kFactorialTable> table = [] {
    std::array<double, kFactorialTable> t{};
    for (int i = 0; i < kFactorialTable; ++i) t[static_cast<std::size_t>(i)] = std::lgamma(i + 1.0);
    return t;
  }();
  return table;
}

// (j + m) etc. as integers; both arguments are doubled values
int half_sum(int a2, int b2) { return (a2 + b2) / 2; }

void check_projection(HalfInteger j, HalfInteger m) {
  if (j.twice() < 0) throw DomainError("negative angular momentum " + j.str());
  if ((j.twice() - m.twice()) % 2 != 0) throw DomainError("projection " + m.str() + " incompatible with j = " + j.str());
}

}  // namespace

double log_factorial(int n) {
  if (n < 0) throw DomainError("factorial of a negative number");
  if (n < kFactorialTable) return log_factorial_table()[static_cast<std::size_t>(n)];
  return std::lgamma(n + 1.0);
}

double wigner_3j(HalfInteger j1, HalfInteger j2, HalfInteger j3, HalfInteger m1, HalfInteger m2, HalfInteger m3) {
  check_projection(j1, m1);
  check_projection(j2, m2);
  check_projection(j3, m3);
  if (m1.twice() + m2.twice() + m3.twice() != 0) return 0.0;
  if (std::abs(m1.twice()) > j1.twice() || std::abs(m2.twice()) > j2.twice() || std::abs(m3.twice()) > j3.twice())
    return 0.0;
  const int J = j1.twice() + j2.twice() + j3.twice();
  if (J % 2 != 0) return 0.0;
  if (j3.twice() < std::abs(j1.twice() - j2.twice()) || j3.twice() > j1.twice() + j2.twice()) return 0.0;

  const int a = (j1.twice() + j2.twice() - j3.twice()) / 2;
  const int b = (j1.twice() - j2.twice() + j3.twice()) / 2;
  const int c = (-j1.twice() + j2.twice() + j3.twice()) / 2;
  const double log_delta =
      0.5 * (log_factorial(a) + log_factorial(b) + log_factorial(c) - log_factorial(J / 2 + 1));
  const double log_norm =
      0.5 * (log_factorial(half_sum(j1.twice(), m1.twice())) + log_factorial(half_sum(j1.twice(), -m1.twice())) +
             log_factorial(half_sum(j2.twice(), m2.twice())) + log_factorial(half_sum(j2.twice(), -m2.twice())) +
             log_factorial(half_sum(j3.twice(), m3.twice())) + log_factorial(half_sum(j3.twice(), -m3.twice())));

  // t runs over values keeping all factorial arguments nonnegative
  const int x1 = (j3.twice() - j2.twice() + m1.twice()) / 2;   // j3 - j2 + m1
  const int x2 = (j3.twice() - j1.twice() - m2.twice()) / 2;   // j3 - j1 - m2
  const int y1 = a;                                            // j1 + j2 - j3
  const int y2 = half_sum(j1.twice(), -m1.twice());            // j1 - m1
  const int y3 = half_sum(j2.twice(), m2.twice());             // j2 + m2
  const int tmin = std::max({0, -x1, -x2});
  const int tmax = std::min({y1, y2, y3});
  double sum = 0.0;
  for (int t = tmin; t <= tmax; ++t) {
    const double lt = log_factorial(t) + log_factorial(x1 + t) + log_factorial(x2 + t) + log_factorial(y1 - t) +
                      log_factorial(y2 - t) + log_factorial(y3 - t);
    const double term = std::exp(log_delta + log_norm - lt);
    sum += (t % 2 == 0) ? term : -term;
  }
  // (-1)^(j1 - j2 - m3)
  const int phase = (j1.twice() - j2.twice() - m3.twice()) / 2;
  return (phase % 2 == 0) ? sum : -sum;
}

double wigner_d(HalfInteger j, HalfInteger mp, HalfInteger m, double beta) {
  check_projection(j, mp);
  check_projection(j, m);
  if (std::abs(mp.twice()) > j.twice() || std::abs(m.twice()) > j.twice())
    throw DomainError("projection out of range for j = " + j.str());
  const int jpmp = half_sum(j.twice(), mp.twice()), jmmp = half_sum(j.twice(), -mp.twice());
  const int jpm = half_sum(j.twice(), m.twice()), jmm = half_sum(j.twice(), -m.twice());
  const int dm = (mp.twice() - m.twice()) / 2;
  const double c = std::cos(0.5 * beta), s = std::sin(0.5 * beta);
  const double lnorm = 0.5 * (log_factorial(jpmp) + log_factorial(jmmp) + log_factorial(jpm) + log_factorial(jmm));
  const int kmin = std::max(0, -dm);
  const int kmax = std::min(jpm, jmmp);
  double sum = 0.0;
  for (int k = kmin; k <= kmax; ++k) {
    const double mag = std::exp(lnorm - log_factorial(jpm - k) - log_factorial(k) - log_factorial(dm + k) -
                                log_factorial(jmmp - k));
    const double term = mag * std::pow(c, j.twice() + (m.twice() - mp.twice()) / 2 - 2 * k) * std::pow(s, dm + 2 * k);
    sum += ((dm + k) % 2 == 0) ? term : -term;
  }
  return sum;
}

Complex wigner_D(HalfInteger j, HalfInteger mp, HalfInteger m, double phi, double theta, double gamma) {
  const double d = wigner_d(j, mp, m, theta);
  return std::polar(d, -(mp.value() * phi + m.value() * gamma));
}

CMatrix wigner_D_matrix(HalfInteger j, double phi, double theta, double gamma) {
  const auto ms = projections(j);
  const auto n = static_cast<Eigen::Index>(ms.size());
  CMatrix D(n, n);
  for (Eigen::Index a = 0; a < n; ++a)
    for (Eigen::Index b = 0; b < n; ++b)
      D(a, b) = wigner_D(j, ms[static_cast<std::size_t>(a)], ms[static_cast<std::size_t>(b)], phi, theta, gamma);
  return D;
}

double laguerre_assoc(int n, int k, double x) {
  if (n < 0) throw DomainError("Laguerre degree must be nonnegative");
  if (k < 0) throw DomainError("Laguerre order must be nonnegative");
  double l0 = 1.0;
  if (n == 0) return l0;
  double l1 = 1.0 + k - x;
  for (int i = 1; i < n; ++i) {
    const double l2 = ((2.0 * i + 1.0 + k - x) * l1 - (i + k) * l0) / (i + 1.0);
    l0 = l1;
    l1 = l2;
  }
  return l1;
}

std::vector<double> hermite_functions(int nmax, double x) {
  if (nmax < 0) throw DomainError("negative Hermite index");
  std::vector<double> h(static_cast<std::size_t>(nmax) + 1);
  h[0] = std::pow(kPi, -0.25) * std::exp(-0.5 * x * x);
  if (nmax >= 1) h[1] = std::sqrt(2.0) * x * h[0];
  for (int n = 1; n < nmax; ++n)
    h[static_cast<std::size_t>(n) + 1] = std::sqrt(2.0 / (n + 1)) * x * h[static_cast<std::size_t>(n)] -
                                         std::sqrt(static_cast<double>(n) / (n + 1)) * h[static_cast<std::size_t>(n) - 1];
  return h;
}

double hermite_function(int n, double x) { return hermite_functions(n, x).back(); }

QuadratureRule gauss_legendre(int npoints, double a, double b) {
  if (npoints < 1) throw DomainError("quadrature needs at least one point");
  if (!(a < b)) throw DomainError("degenerate quadrature interval");
  QuadratureRule q;
  q.lower = a;
  q.upper = b;
  q.nodes.resize(static_cast<std::size_t>(npoints));
  q.weights.resize(static_cast<std::size_t>(npoints));
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  const int n = npoints;
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double z = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int k = 0; k < n; ++k) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * k + 1.0) * z * p1 - k * p2) / (k + 1.0);
      }
      dp = n * (z * p0 - p1) / (z * z - 1.0);
      const double dz = p0 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    // recompute the derivative at the converged root
    double p0 = 1.0, p1 = 0.0;
    for (int k = 0; k < n; ++k) {
      const double p2 = p1;
      p1 = p0;
      p0 = ((2.0 * k + 1.0) * z * p1 - k * p2) / (k + 1.0);
    }
    dp = n * (z * p0 - p1) / (z * z - 1.0);
    const double w = 2.0 / ((1.0 - z * z) * dp * dp);
    const auto lo = static_cast<std::size_t>(i), hi = static_cast<std::size_t>(n - 1 - i);
    q.nodes[lo] = mid - half * z;
    q.nodes[hi] = mid + half * z;
    q.weights[lo] = q.weights[hi] = half * w;
  }
  if (n % 2 == 1) q.nodes[static_cast<std::size_t>(n / 2)] = mid;
  return q;
}

QuadratureRule uniform_periodic(int npoints, double period) {
  if (npoints < 1) throw DomainError("quadrature needs at least one point");
  if (!(period > 0)) throw DomainError("period must be positive");
  QuadratureRule q;
  q.lower = 0.0;
  q.upper = period;
  q.periodic = true;
  for (int i = 0; i < npoints; ++i) {
    q.nodes.push_back(period * i / npoints);
    q.weights.push_back(period / npoints);
  }
  return q;
}

}  // namespace tomo
