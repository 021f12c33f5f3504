#include "tomokit/fock_tomography.hpp"

#include <cmath>
#include <limits>

namespace tomo {

namespace {

constexpr double kLogOverflow = 690.7755278982137;  // ln(1e300)

void require_open_s(double s) {
  if (!(s > -1.0 && s < 1.0)) throw DomainError("s must lie in (-1, 1), got " + std::to_string(s));
}

// T elements with core r^{a^dag a}; r = (s+1)/(s-1) for T(alpha, s).
CMatrix t_block(Complex alpha, double r, int dim) {
  const double c = r - 1.0;
  const Complex z = -c * alpha;
  const double az = std::abs(z);
  const double phase = std::arg(z);
  const long double lz = az > 0 ? std::log(static_cast<long double>(az)) : 0.0L;
  const long double lr = std::log(static_cast<long double>(std::abs(r)));
  const long double lead = static_cast<long double>(c) * std::norm(alpha);
  CMatrix t(dim, dim);
  for (int m = 0; m < dim; ++m)
    for (int n = 0; n < dim; ++n) {
      long double sum = 0.0L;
      const int pmax = std::min(m, n);
      const int pmin = az > 0 ? 0 : pmax;  // z = 0 leaves only the p = m = n term
      if (az == 0 && m != n) {
        t(m, n) = 0.0;
        continue;
      }
      for (int p = pmin; p <= pmax; ++p) {
        const long double lg = lead + 0.5L * (log_factorial(m) + log_factorial(n)) + (m + n - 2 * p) * lz + p * lr -
                               log_factorial(m - p) - log_factorial(n - p) - log_factorial(p);
        const long double term = std::exp(lg);
        sum += (r < 0 && p % 2 == 1) ? -term : term;
      }
      t(m, n) = std::polar(static_cast<double>(sum), phase * (m - n));
    }
  return t;
}

double core_ratio(double s) { return (s + 1.0) / (s - 1.0); }

}  // namespace

FockSpace::FockSpace(int nmax) : nmax_(nmax) {
  if (nmax < 1) throw DomainError("Fock truncation nmax must be at least 1");
}

CMatrix FockSpace::annihilation() const {
  CMatrix a = CMatrix::Zero(dim(), dim());
  for (int n = 1; n < dim(); ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return a;
}

CMatrix displacement_block(Complex alpha, int rows, int cols) {
  const double x = std::norm(alpha);
  const double r = std::abs(alpha);
  const double lr = r > 0 ? std::log(r) : 0.0;
  const double ph = std::arg(alpha);
  CMatrix d(rows, cols);
  for (int m = 0; m < rows; ++m)
    for (int n = 0; n < cols; ++n) {
      const int hi = std::max(m, n), lo = std::min(m, n), k = hi - lo;
      if (r == 0) {
        d(m, n) = (k == 0) ? 1.0 : 0.0;
        continue;
      }
      const double mag = std::exp(0.5 * (log_factorial(lo) - log_factorial(hi)) - 0.5 * x + k * lr) *
                         laguerre_assoc(lo, k, x);
      // m >= n: alpha^k; m < n: (-conj(alpha))^k
      const double angle = (m >= n) ? k * ph : k * (kPi - ph);
      d(m, n) = std::polar(mag, angle);
    }
  return d;
}

OperatorMatrix displacement_matrix(Complex alpha, const FockSpace& space) {
  return OperatorMatrix(displacement_block(alpha, space.dim(), space.dim()));
}

DisplacementQuality displacement_quality(Complex alpha, const FockSpace& space, double tol) {
  const int n = space.dim();
  const CMatrix d = displacement_block(alpha, n, n);
  DisplacementQuality q;
  q.unitarity_defect = (d.adjoint() * d - CMatrix::Identity(n, n)).norm();
  // weight of each column on the states just above the truncation
  const int extra = 64 + static_cast<int>(std::ceil(std::norm(alpha) + 10 * std::abs(alpha)));
  const CMatrix tail = displacement_block(alpha, n + extra, n).bottomRows(extra);
  while (q.reliable_dim < n && tail.col(q.reliable_dim).squaredNorm() <= tol) ++q.reliable_dim;
  return q;
}

CVector fock_state(int n, const FockSpace& space) {
  if (n < 0 || n > space.nmax()) throw DomainError("number state out of range");
  return CVector::Unit(space.dim(), n);
}

CVector coherent_state(Complex alpha, const FockSpace& space) {
  CVector v = displacement_block(alpha, space.dim(), 1).col(0);
  return v / v.norm();
}

double photon_tomogram(const OperatorMatrix& rho, int n, Complex alpha, const FockSpace& space) {
  if (rho.dim() != space.dim())
    throw DimensionError("operator dim " + std::to_string(rho.dim()) + " does not match Fock dimension " +
                         std::to_string(space.dim()));
  if (n < 0 || n > space.nmax()) throw DomainError("photon number " + std::to_string(n) + " out of range");
  const CVector col = displacement_block(alpha, space.dim(), space.dim()).col(n);
  return (col.adjoint() * rho.entries() * col)(0).real();
}

OperatorMatrix t_operator(Complex alpha, double s, const FockSpace& space) {
  require_open_s(s);
  return OperatorMatrix(t_block(alpha, core_ratio(s), space.dim()));
}

OperatorMatrix t_operator_truncated(Complex alpha, double s, const FockSpace& space) {
  require_open_s(s);
  const int n = space.dim();
  const CMatrix d = displacement_block(alpha, n, n);
  Eigen::VectorXcd core(n);
  const double r = core_ratio(s);
  for (int k = 0; k < n; ++k) core(k) = std::pow(r, k);
  return OperatorMatrix(d * core.asDiagonal() * d.adjoint());
}

double max_safe_s(int nmax) { return std::tanh(kLogOverflow / (2.0 * std::max(nmax, 1))); }

static double kernel_prefactor(int n, double s, int nmax) {
  const double q = core_ratio(s);
  if (nmax * std::log(std::abs(q)) > kLogOverflow)
    throw DomainError("kernel prefactor overflows at nmax = " + std::to_string(nmax) + "; use -1 < s <= " +
                      std::to_string(max_safe_s(nmax)));
  return 2.0 / (1.0 - s) * std::pow(q, n);
}

OperatorMatrix photon_kernel(int n, Complex alpha, double s, const FockSpace& space) {
  require_open_s(s);
  if (n < 0 || n > space.nmax()) throw DomainError("photon number " + std::to_string(n) + " out of range");
  const double pre = kernel_prefactor(n, s, space.nmax());
  return OperatorMatrix(pre * t_block(-alpha, core_ratio(-s), space.dim()));
}

PolarGrid PolarGrid::gauss(double radius, int nradial, int nangular) {
  if (!(radius > 0)) throw DomainError("grid radius must be positive");
  if (nangular < 1) throw DomainError("angular node count must be positive");
  const auto rule = gauss_legendre(nradial, 0.0, radius);
  PolarGrid g;
  g.radius = radius;
  g.angular_count = nangular;
  g.radial_nodes = rule.nodes;
  for (std::size_t i = 0; i < rule.size(); ++i) g.radial_weights.push_back(rule.weights[i] * rule.nodes[i]);
  return g;
}

Complex PolarGrid::node(std::size_t k) const {
  const auto na = static_cast<std::size_t>(angular_count);
  return std::polar(radial_nodes[k / na], 2 * kPi * static_cast<double>(k % na) / angular_count);
}

double PolarGrid::weight(std::size_t k) const {
  return radial_weights[k / static_cast<std::size_t>(angular_count)] * 2 * kPi / angular_count;
}

PhotonTomogram photon_tomogram_grid(const OperatorMatrix& rho, const FockSpace& space, const PolarGrid& grid, int ncut,
                                    Execution exec) {
  if (rho.dim() != space.dim())
    throw DimensionError("operator dim " + std::to_string(rho.dim()) + " does not match Fock dimension " +
                         std::to_string(space.dim()));
  if (ncut < 0 || ncut > space.nmax()) throw DomainError("ncut must lie in [0, nmax]");
  PhotonTomogram t{space, ncut, grid, {}};
  const std::size_t nodes = grid.size();
  t.values.assign(static_cast<std::size_t>(ncut) + 1, std::vector<double>(nodes));
  for_each_index(
      nodes,
      [&](std::size_t k) {
        const CMatrix d = displacement_block(grid.node(k), space.dim(), ncut + 1);
        const CMatrix rd = rho.entries() * d;
        for (int n = 0; n <= ncut; ++n) t.values[static_cast<std::size_t>(n)][k] = d.col(n).dot(rd.col(n)).real();
      },
      exec);
  return t;
}

PhotonReconstruction photon_reconstruct(const PhotonTomogram& tom, double s, int output_nmax, Execution exec) {
  require_open_s(s);
  const int out_nmax = output_nmax < 0 ? tom.space.nmax() : output_nmax;
  if (out_nmax < 1) throw DomainError("output truncation must be at least 1");
  const std::size_t nodes = tom.grid.size();
  if (tom.values.size() != static_cast<std::size_t>(tom.ncut) + 1)
    throw DimensionError("tomogram rows do not cover n = 0..ncut");
  for (const auto& row : tom.values)
    if (row.size() != nodes) throw DimensionError("tomogram row length differs from the grid size");
  const double q = core_ratio(s);
  if (tom.ncut * std::log(std::abs(q)) > kLogOverflow)
    throw DomainError("kernel prefactor overflows at ncut = " + std::to_string(tom.ncut) + "; use -1 < s <= " +
                      std::to_string(max_safe_s(tom.ncut)));
  const double pre = 2.0 / (1.0 - s) * 2.0 / (1.0 + s);
  const double r = core_ratio(-s);
  const int dim = out_nmax + 1;

  PhotonReconstruction out;
  CMatrix sum = reduce_sum(
      nodes, CMatrix(CMatrix::Zero(dim, dim)),
      [&](std::size_t k) -> CMatrix {
        double f = 0.0, qn = 1.0;
        for (int n = 0; n <= tom.ncut; ++n, qn *= q) f += qn * tom.values[static_cast<std::size_t>(n)][k];
        return (tom.grid.weight(k) / kPi * pre * f) * t_block(tom.grid.node(k), r, dim);
      },
      exec);
  sum = (sum + sum.adjoint()).eval() * 0.5;
  out.rho = OperatorMatrix(std::move(sum));

  double inside = 0.0, lost = 0.0;
  for (std::size_t k = 0; k < nodes; ++k) {
    const double w = tom.grid.weight(k) / kPi * tom.values[0][k];
    double mass = 0.0;
    for (const auto& row : tom.values) mass += row[k];
    inside += w;
    lost += w * (1.0 - mass);
  }
  out.radial_loss = 1.0 - inside;
  out.ncut_loss = lost;
  if (out.radial_loss > 1e-3)
    out.warnings.push_back("grid radius " + std::to_string(tom.grid.radius) +
                           " misses an estimated Husimi weight of " + std::to_string(out.radial_loss));
  if (out.ncut_loss > 1e-3)
    out.warnings.push_back("photon-number cut " + std::to_string(tom.ncut) + " misses an estimated weight of " +
                           std::to_string(out.ncut_loss));
  if (s > 0) out.warnings.push_back("s > 0 amplifies the photon-number cut error");
  return out;
}

Complex kernel_position_element(double x, double y, int n, Complex alpha, double s) {
  require_open_s(s);
  if (n < 0) throw DomainError("photon number must be nonnegative");
  const double q = core_ratio(s);
  if (n * std::log(std::abs(q)) > kLogOverflow) throw DomainError("kernel prefactor overflows");
  // T(-alpha, -s) has core r^{a^dag a} with r < 0; tau = i ln r = pi + i ln|r|
  const double r = core_ratio(-s);
  const Complex I(0, 1);
  const Complex tau(kPi, std::log(std::abs(r)));
  const Complex st = std::sin(tau), ct = std::cos(tau);
  if (std::abs(st) < 1e-12)
    throw DomainError("sin(tau) vanishes at s = " + std::to_string(s) + ": the position kernel is a distribution there");
  const double nu = std::sqrt(2.0) * alpha.real();
  const double mu = -std::sqrt(2.0) * alpha.imag();
  const double xs = x + nu, ys = y + nu;
  const Complex root = std::sqrt(2 * kPi) * std::polar(1.0, kPi / 4) * std::sqrt(st);
  const Complex core = std::exp(I * tau / 2.0) / root * std::exp(I * ((xs * xs + ys * ys) * ct - 2.0 * xs * ys) / (2.0 * st));
  return 2.0 / (1.0 - s) * std::pow(q, n) * std::polar(1.0, mu * (x - y)) * core;
}

Complex kernel_position_element_fock(double x, double y, int n, Complex alpha, double s, const FockSpace& space) {
  const CMatrix k = photon_kernel(n, alpha, s, space).entries();
  const auto hx = hermite_functions(space.nmax(), x);
  const auto hy = hermite_functions(space.nmax(), y);
  const Eigen::Map<const Eigen::VectorXd> vx(hx.data(), space.dim()), vy(hy.data(), space.dim());
  return (vx.cast<Complex>().transpose() * k * vy.cast<Complex>())(0);
}

}  // namespace tomo
