#include "tomokit/symplectic_tomography.hpp"

#include <cmath>
#include <map>

#include <unsupported/Eigen/FFT>

namespace tomo {

UniformGrid::UniformGrid(double lo, double hi, int n) : min(lo), max(hi), count(n) {
  if (n < 2) throw DomainError("uniform grid needs at least two points");
  if (!(lo < hi)) throw DomainError("uniform grid needs min < max");
}

std::vector<double> UniformGrid::points() const {
  std::vector<double> p(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) p[static_cast<std::size_t>(i)] = at(i);
  return p;
}

std::vector<double> UniformGrid::weights() const {
  std::vector<double> w(static_cast<std::size_t>(count), step());
  w.front() *= 0.5;
  w.back() *= 0.5;
  return w;
}

GridWavefunction::GridWavefunction(UniformGrid g, std::vector<Complex> v) : grid(g), values(std::move(v)) {
  if (static_cast<int>(values.size()) != grid.count) throw DimensionError("wavefunction length differs from grid size");
}

double GridWavefunction::norm_squared() const {
  double s = 0.0;
  for (const auto& v : values) s += std::norm(v);
  return s * grid.step();
}

void GridWavefunction::normalize() {
  const double n = norm_squared();
  if (!(n > 0)) throw DomainError("cannot normalize a zero wavefunction");
  const double f = 1.0 / std::sqrt(n);
  for (auto& v : values) v *= f;
}

GridWavefunction GridWavefunction::oscillator(int n, const UniformGrid& grid) {
  std::vector<Complex> v;
  for (int i = 0; i < grid.count; ++i) v.emplace_back(hermite_function(n, grid.at(i)));
  return {grid, std::move(v)};
}

std::vector<Complex> GridWavefunction::shifted(double shift) const {
  const auto n = values.size();
  Eigen::FFT<double> fft;
  std::vector<Complex> spectrum;
  fft.fwd(spectrum, values);
  const double base = 2 * kPi / (static_cast<double>(n) * grid.step());
  for (std::size_t k = 0; k < n; ++k) {
    const auto kk = static_cast<double>(k);
    const auto nn = static_cast<double>(n);
    if (2 * k < n)
      spectrum[k] *= std::polar(1.0, base * kk * shift);
    else if (2 * k > n)
      spectrum[k] *= std::polar(1.0, base * (kk - nn) * shift);
    else
      spectrum[k] *= std::cos(base * kk * shift);
  }
  std::vector<Complex> out;
  fft.inv(out, spectrum);
  return out;
}

Complex symplectic_eigenfunction(double q, double x, double mu, double nu) {
  if (nu == 0.0) throw DomainError("nu = 0 is the position-basis limit, which is not covered");
  return std::polar(1.0 / std::sqrt(2 * kPi * std::abs(nu)), -(mu * q * q / (2 * nu) - x * q / nu));
}

double symplectic_tomogram_psi(const GridWavefunction& psi, double x, double mu, double nu) {
  if (nu == 0.0) throw DomainError("nu = 0 is the position-basis limit, which is not covered");
  const auto& g = psi.grid;
  const double dq = g.step();
  const double qext = std::max(std::abs(g.min), std::abs(g.max));
  const double chirp = std::abs(mu) * qext * dq / (2 * std::abs(nu));
  if (chirp >= kPi / 4) {
    const double need = (g.max - g.min) * std::abs(mu) * qext * 2.0 / (kPi * std::abs(nu)) + 1.0;
    throw DomainError("grid does not resolve the chirp phase at mu = " + std::to_string(mu) + ", nu = " +
                      std::to_string(nu) + "; need more than " + std::to_string(static_cast<long>(std::ceil(need))) +
                      " points");
  }
  const auto w = g.weights();
  Complex acc = 0.0;
  for (int i = 0; i < g.count; ++i)
    acc += w[static_cast<std::size_t>(i)] * std::conj(symplectic_eigenfunction(g.at(i), x, mu, nu)) *
           psi.values[static_cast<std::size_t>(i)];
  return std::norm(acc);
}

std::vector<MuNuNode> SymplecticLayout::nodes() const {
  const auto rule = gauss_legendre(mu_count, -mu_max, mu_max);
  const int n = ygrid.count;
  const double dy = ygrid.step();
  std::vector<MuNuNode> out;
  for (int k = -(n - 1); k <= n; ++k)
    for (std::size_t a = 0; a < rule.size(); ++a) out.push_back({rule.nodes[a], (k - 0.5) * dy, rule.weights[a]});
  return out;
}

double SymplecticTomogram::x_at(std::size_t node, int i) const {
  const double x = xgrid.at(i);
  if (!scaled_x) return x;
  return x * std::hypot(nodes[node].mu, nodes[node].nu);
}

namespace {

// Band-limited resampling of psi onto a grid f times finer, periodic over count * step.
std::vector<Complex> upsample(const std::vector<Complex>& v, int f) {
  if (f == 1) return v;
  const auto n = v.size();
  const std::size_t m = n * static_cast<std::size_t>(f);
  Eigen::FFT<double> fft;
  std::vector<Complex> spectrum;
  fft.fwd(spectrum, v);
  std::vector<Complex> pad(m, Complex(0.0));
  const std::size_t half = n / 2;
  for (std::size_t k = 0; k < (n + 1) / 2; ++k) pad[k] = spectrum[k];
  for (std::size_t k = 1; k <= half; ++k) pad[m - k] = spectrum[n - k];
  if (n % 2 == 0) {
    // split the Nyquist bin between +/- frequencies
    pad[half] = 0.5 * spectrum[half];
    pad[m - half] = 0.5 * spectrum[half];
  }
  std::vector<Complex> out;
  fft.inv(out, pad);
  for (auto& z : out) z *= static_cast<double>(f);
  return out;
}

int oversampling(const UniformGrid& g, double mu, double nu, double xmax) {
  const double dq = g.step();
  const double qext = std::max(std::abs(g.min), std::abs(g.max));
  const double omega = (std::abs(mu) * qext + xmax) / std::abs(nu);
  const double need = 1.25 * (omega + kPi / dq);
  int f = 1;
  while (2 * kPi * f / dq <= need && f < (1 << 12)) f *= 2;
  return f;
}

}  // namespace

SymplecticTomogram symplectic_tomogram_grid(const GridWavefunction& psi, const SymplecticLayout& layout, Execution exec) {
  SymplecticTomogram t;
  t.xgrid = layout.xgrid;
  t.scaled_x = layout.scaled_x;
  t.ygrid = layout.ygrid;
  t.nodes = layout.nodes();
  const std::size_t nn = t.nodes.size();
  const int nx = t.xgrid.count;
  t.values.assign(nn, std::vector<double>(static_cast<std::size_t>(nx)));

  const auto& g = psi.grid;
  const double xabs = std::max(std::abs(t.xgrid.min), std::abs(t.xgrid.max));
  std::vector<int> factor(nn);
  std::map<int, std::vector<Complex>> fine;
  for (std::size_t k = 0; k < nn; ++k) {
    const double xmax = t.scaled_x ? xabs * std::hypot(t.nodes[k].mu, t.nodes[k].nu) : xabs;
    factor[k] = oversampling(g, t.nodes[k].mu, t.nodes[k].nu, xmax);
    fine.try_emplace(factor[k]);
  }
  for (auto& [f, v] : fine) v = upsample(psi.values, f);

  for_each_index(
      nn,
      [&](std::size_t k) {
        const double mu = t.nodes[k].mu, nu = t.nodes[k].nu;
        const auto& v = fine.at(factor[k]);
        const double dq = g.step() / factor[k];
        const double pre = dq / std::sqrt(2 * kPi * std::abs(nu));
        std::vector<Complex> chirped(v.size());
        for (std::size_t i = 0; i < v.size(); ++i) {
          const double q = g.min + static_cast<double>(i) * dq;
          chirped[i] = std::polar(1.0, mu * q * q / (2 * nu)) * v[i];
        }
        for (int ix = 0; ix < nx; ++ix) {
          const double x = t.x_at(k, ix);
          const Complex step = std::polar(1.0, -x * dq / nu);
          Complex ph, acc = 0.0;
          for (std::size_t i = 0; i < v.size(); ++i) {
            if (i % 256 == 0) ph = std::polar(1.0, -x * (g.min + static_cast<double>(i) * dq) / nu);
            acc += ph * chirped[i];
            ph *= step;
          }
          t.values[k][static_cast<std::size_t>(ix)] = std::norm(pre * acc);
        }
      },
      exec);
  return t;
}

SymplecticTomogram mix_tomograms(const std::vector<SymplecticTomogram>& parts, const std::vector<double>& weights) {
  if (parts.empty() || parts.size() != weights.size()) throw DimensionError("mixture needs one weight per tomogram");
  SymplecticTomogram out = parts.front();
  for (auto& row : out.values)
    for (auto& v : row) v = 0.0;
  for (std::size_t p = 0; p < parts.size(); ++p) {
    if (parts[p].values.size() != out.values.size()) throw DimensionError("tomograms use different layouts");
    for (std::size_t k = 0; k < out.values.size(); ++k)
      for (std::size_t i = 0; i < out.values[k].size(); ++i) out.values[k][i] += weights[p] * parts[p].values[k][i];
  }
  return out;
}

double DensityKernel::trace() const {
  double s = 0.0;
  for (Eigen::Index i = 0; i < values.rows(); ++i) s += values(i, i).real();
  return s * ygrid.step();
}

DensityKernel symplectic_reconstruct(const SymplecticTomogram& tom, Execution exec) {
  const int n = tom.ygrid.count;
  const double dy = tom.ygrid.step();
  const double h = 0.5 * dy;
  const std::size_t nn = tom.nodes.size();
  if (tom.values.size() != nn) throw DimensionError("tomogram rows do not match the node count");

  // shell k holds nu = (k - 1/2) dy
  std::map<int, std::vector<std::size_t>> shells;
  for (std::size_t k = 0; k < nn; ++k) {
    const double nu = tom.nodes[k].nu;
    const double kk = (nu + h) / dy;
    const long shell = std::lround(kk);
    if (std::abs(kk - static_cast<double>(shell)) > 1e-9)
      throw DomainError("nu = " + std::to_string(nu) + " is not aligned with the y-grid differences (step " +
                        std::to_string(dy) + ")");
    shells[static_cast<int>(shell)].push_back(k);
  }
  for (int k = -(n - 1); k <= n - 1; ++k)
    if (!shells.count(k)) throw DomainError("no tomogram nodes on the nu shell " + std::to_string((k - 0.5) * dy));

  const auto wx = tom.xgrid.weights();
  for (const auto& row : tom.values)
    if (row.size() != wx.size()) throw DimensionError("tomogram row length differs from the X grid");
  std::vector<Complex> chi(nn);
  for_each_index(
      nn,
      [&](std::size_t k) {
        const double scale = tom.scaled_x ? std::hypot(tom.nodes[k].mu, tom.nodes[k].nu) : 1.0;
        Complex acc = 0.0;
        for (int i = 0; i < tom.xgrid.count; ++i) {
          const double x = tom.x_at(k, i);
          acc += wx[static_cast<std::size_t>(i)] * scale * tom.values[k][static_cast<std::size_t>(i)] * std::polar(1.0, x);
        }
        chi[k] = acc;
      },
      exec);

  // chi(-mu, -nu) = conj chi(mu, nu) for a real tomogram; -nu lies on shell 1 - k
  std::vector<Complex> sym(chi);
  double herm = 0.0;
  for (const auto& [shell, idx] : shells) {
    auto it = shells.find(1 - shell);
    if (it == shells.end()) continue;
    for (auto a : idx)
      for (auto b : it->second)
        if (std::abs(tom.nodes[a].mu + tom.nodes[b].mu) <= 1e-12 * (1.0 + std::abs(tom.nodes[a].mu))) {
          sym[a] = 0.5 * (chi[a] + std::conj(chi[b]));
          herm = std::max(herm, std::abs(chi[a] - std::conj(chi[b])));
          break;
        }
  }

  DensityKernel out;
  out.ygrid = tom.ygrid;
  out.offset = h;
  out.values = CMatrix::Zero(n, n);
  out.hermiticity_residual = herm;
  for_each_index(
      static_cast<std::size_t>(n),
      [&](std::size_t ii) {
        const int i = static_cast<int>(ii);
        const double y = tom.ygrid.at(i);
        for (int j = 0; j < n; ++j) {
          const double yp = tom.ygrid.at(j) + h;
          Complex acc = 0.0;
          for (auto k : shells.at(i - j))
            acc += tom.nodes[k].weight * sym[k] * std::polar(1.0, -tom.nodes[k].mu * (y + yp) / 2);
          out.values(i, j) = acc / (2 * kPi);
        }
      },
      exec);
  return out;
}

Complex delta_identity_probe(double y, double yp, double q, double qp, const DeltaProbeGrids& grids) {
  const double nu = y - yp;
  if (nu == 0.0) throw DomainError("the probe needs y != y' (nu = y - y' must be nonzero)");
  const double a = 1.0 - (q - qp) / nu;
  const double b = (q * q - qp * qp) / (2 * nu) - yp - nu / 2;
  const auto wx = grids.xgrid.weights();
  Complex ix = 0.0;
  for (int i = 0; i < grids.xgrid.count; ++i) ix += wx[static_cast<std::size_t>(i)] * std::polar(1.0, grids.xgrid.at(i) * a);
  Complex im = grids.mu_rule.integrate([&](double mu) { return std::polar(1.0, mu * b); });
  return ix * im / (4 * kPi * kPi * std::abs(nu));
}

PauliResult pauli_counterexample(Complex alpha, double beta, const UniformGrid& grid) {
  if (!(alpha.real() > 0)) throw DomainError("Pauli pair needs Re(alpha) > 0");
  const int n = grid.count;
  std::vector<Complex> v1, v2;
  for (int i = 0; i < n; ++i) {
    const double x = grid.at(i);
    v1.push_back(std::exp(-alpha * x * x + Complex(0, beta * x)));
    v2.push_back(std::exp(-std::conj(alpha) * x * x + Complex(0, beta * x)));
  }
  GridWavefunction p1(grid, v1), p2(grid, v2);
  p1.normalize();
  p2.normalize();
  PauliResult r;
  const double dx = grid.step();
  Complex overlap = 0.0;
  for (int i = 0; i < n; ++i) {
    const auto k = static_cast<std::size_t>(i);
    r.marginal_gap_q = std::max(r.marginal_gap_q, std::abs(std::norm(p1.values[k]) - std::norm(p2.values[k])));
    overlap += std::conj(p1.values[k]) * p2.values[k] * dx;
  }
  r.fidelity = std::norm(overlap);
  // direct transform on the frequencies resolved by the grid
  const double pmax = kPi / dx;
  for (int k = 0; k < n; ++k) {
    const double p = -pmax + 2 * pmax * k / n;
    Complex f1 = 0.0, f2 = 0.0;
    for (int i = 0; i < n; ++i) {
      const Complex e = std::polar(dx / std::sqrt(2 * kPi), -p * grid.at(i));
      f1 += e * p1.values[static_cast<std::size_t>(i)];
      f2 += e * p2.values[static_cast<std::size_t>(i)];
    }
    r.marginal_gap_p = std::max(r.marginal_gap_p, std::abs(std::norm(f1) - std::norm(f2)));
  }
  return r;
}

SqueezeParameters squeeze_parameters(double mu, double nu) {
  if (mu == 0.0 && nu == 0.0) throw DomainError("(mu, nu) = (0, 0) has no squeeze parameters");
  const double disc = 1.0 - 4.0 * mu * mu * nu * nu;
  if (disc < 0) throw DomainError("no real squeeze parameters when |mu nu| > 1/2");
  // u = e^{2 lambda} solves nu^2 u^2 - u + mu^2 = 0
  // of the two roots take the one closer to no squeezing (|lambda| smallest)
  double u;
  if (nu == 0.0) {
    u = mu * mu;
  } else {
    const double lo = 2.0 * mu * mu / (1.0 + std::sqrt(disc));
    const double hi = (1.0 + std::sqrt(disc)) / (2.0 * nu * nu);
    u = (lo > 0 && std::abs(std::log(lo)) <= std::abs(std::log(hi))) ? lo : hi;
  }
  const double su = std::sqrt(u);
  return {0.5 * std::log(u), std::atan2(nu * su, mu / su)};
}

OperatorMatrix squeeze_unitary(double mu, double nu, const FockSpace& space) {
  const auto p = squeeze_parameters(mu, nu);
  const CMatrix a = space.annihilation();
  const CMatrix ad = a.adjoint();
  const Complex I(0, 1);
  // QP + PQ = i (a^dag^2 - a^2); (Q^2 + P^2)/2 = a^dag a + 1/2
  const CMatrix g1 = I * (ad * ad - a * a);
  Eigen::SelfAdjointEigenSolver<CMatrix> es((g1 + g1.adjoint()) * 0.5);
  Eigen::VectorXcd ph(space.dim());
  for (int k = 0; k < space.dim(); ++k) ph(k) = std::polar(1.0, -0.5 * p.lambda * es.eigenvalues()(k));
  const CMatrix s1 = es.eigenvectors() * ph.asDiagonal() * es.eigenvectors().adjoint();
  Eigen::VectorXcd rot(space.dim());
  for (int k = 0; k < space.dim(); ++k) rot(k) = std::polar(1.0, -p.theta * (k + 0.5));
  return OperatorMatrix(rot.asDiagonal() * s1);
}

SqueezeCommutantReport squeeze_commutant_check(double mu, double nu, const FockSpace& space) {
  SqueezeCommutantReport r;
  r.params = squeeze_parameters(mu, nu);
  const CMatrix s = squeeze_unitary(mu, nu, space).entries();
  Eigen::VectorXd num(space.dim()), par(space.dim());
  for (int k = 0; k < space.dim(); ++k) {
    num(k) = k;
    par(k) = (k % 2 == 0) ? 1.0 : -1.0;
  }
  const CMatrix asq = s * num.asDiagonal() * s.adjoint();
  const CMatrix pi = par.asDiagonal();
  r.parity_commutator_norm = (asq * pi - pi * asq).norm();
  return r;
}

static int numeric_rank(const CMatrix& m) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<CMatrix> svd(m);
  const auto& sv = svd.singularValues();
  int r = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > 1e-10 * sv(0)) ++r;
  return r;
}

SqueezeRankProbe squeeze_rank_probe(int block_dim, const std::vector<std::pair<double, double>>& munu,
                                    const FockSpace& space) {
  if (block_dim < 2 || block_dim > space.dim()) throw DomainError("rank-probe block must fit inside the Fock space");
  SqueezeRankProbe p;
  p.block_dim = block_dim;
  p.full_target = block_dim * block_dim;
  const int de = (block_dim + 1) / 2;
  p.even_target = de * de;
  std::vector<CVector> full, even;
  for (const auto& [mu, nu] : munu) {
    const CMatrix s = squeeze_unitary(mu, nu, space).entries();
    for (int n = 0; n < block_dim; ++n) {
      const CVector v = s.col(n).head(block_dim);
      CMatrix pr = v * v.adjoint();
      full.push_back(Eigen::Map<CVector>(pr.data(), pr.size()));
      if (n % 2 == 0) {
        CVector ve(de);
        for (int k = 0; k < de; ++k) ve(k) = v(2 * k);
        CMatrix pe = ve * ve.adjoint();
        even.push_back(Eigen::Map<CVector>(pe.data(), pe.size()));
      }
    }
  }
  auto stack = [](const std::vector<CVector>& vs, Eigen::Index len) {
    CMatrix m(static_cast<Eigen::Index>(vs.size()), len);
    for (std::size_t i = 0; i < vs.size(); ++i) m.row(static_cast<Eigen::Index>(i)) = vs[i].transpose();
    return m;
  };
  p.full_rank = numeric_rank(stack(full, p.full_target));
  p.even_rank = numeric_rank(stack(even, p.even_target));
  return p;
}

}  // namespace tomo
