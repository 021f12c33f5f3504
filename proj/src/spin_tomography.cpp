#include "tomokit/spin_tomography.hpp"

#include <cmath>
#include <set>

namespace tomo {

SphereDirection::SphereDirection(double th, double ph) : theta(th), phi(ph) {
  if (!(th >= 0.0 && th <= kPi)) throw DomainError("theta outside [0, pi]: " + std::to_string(th));
  if (!std::isfinite(ph)) throw DomainError("phi is not finite");
  phi = std::fmod(ph, 2 * kPi);
  if (phi < 0) phi += 2 * kPi;
  if (th == 0.0 || th == kPi) phi = 0.0;
}

std::array<double, 3> SphereDirection::unit_vector() const {
  return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
}

SphereQuadrature SphereQuadrature::make(int ntheta, int nphi) {
  return {gauss_legendre(ntheta, -1.0, 1.0), uniform_periodic(nphi, 2 * kPi)};
}

std::vector<SphereNode> SphereQuadrature::nodes() const {
  std::vector<SphereNode> out;
  out.reserve(cos_theta.size() * phi.size());
  for (std::size_t i = 0; i < cos_theta.size(); ++i)
    for (std::size_t k = 0; k < phi.size(); ++k)
      out.push_back({std::acos(cos_theta.nodes[i]), phi.nodes[k], cos_theta.weights[i], phi.weights[k]});
  return out;
}

OperatorMatrix spin_half_family(const SphereDirection& dir) {
  const double c = std::cos(dir.theta), s = std::sin(dir.theta);
  CMatrix a(2, 2);
  a << c, std::polar(s, -dir.phi), std::polar(s, dir.phi), -c;
  return OperatorMatrix(std::move(a));
}

RankOneProjector spin_half_projector(const SphereDirection& dir) {
  CVector v(2);
  v << std::polar(std::cos(0.5 * dir.theta), -0.5 * dir.phi), std::polar(std::sin(0.5 * dir.theta), 0.5 * dir.phi);
  return projector_from_vector(v);
}

OperatorMatrix spin_half_kernel(const SphereDirection& dir) {
  const double c = std::cos(dir.theta), s = std::sin(dir.theta);
  CMatrix k(2, 2);
  k << 1.0 + 3.0 * c, std::polar(3.0 * s, -dir.phi), std::polar(3.0 * s, dir.phi), 1.0 - 3.0 * c;
  return OperatorMatrix(k / (4 * kPi));
}

OperatorMatrix spin_half_unitary(const SphereDirection& dir) {
  const double c = std::cos(0.5 * dir.theta), s = std::sin(0.5 * dir.theta);
  CMatrix u(2, 2);
  u << std::polar(c, -0.5 * dir.phi), std::polar(s, -0.5 * dir.phi), std::polar(s, 0.5 * dir.phi),
      -std::polar(c, 0.5 * dir.phi);
  return OperatorMatrix(std::move(u));
}

OperatorMatrix spin_half_reconstruct(const SphereQuadrature& quad, std::span<const std::optional<double>> values,
                                     Execution exec) {
  const auto nodes = quad.nodes();
  std::vector<std::size_t> missing;
  for (std::size_t k = 0; k < nodes.size(); ++k)
    if (k >= values.size() || !values[k]) missing.push_back(k);
  if (!missing.empty()) {
    std::string msg = "missing tomogram values at nodes";
    for (std::size_t i = 0; i < missing.size() && i < 20; ++i) msg += " " + std::to_string(missing[i]);
    if (missing.size() > 20) msg += " ...";
    throw MissingNodesError(msg, std::move(missing));
  }
  if (values.size() != nodes.size()) throw DimensionError("more tomogram values than quadrature nodes");
  const CMatrix sum = reduce_sum(
      nodes.size(), CMatrix(CMatrix::Zero(2, 2)),
      [&](std::size_t k) -> CMatrix {
        return nodes[k].weight() * *values[k] * spin_half_kernel(nodes[k].direction()).entries();
      },
      exec);
  return OperatorMatrix(sum);
}

OperatorMatrix spin_half_reconstruct(const SphereQuadrature& quad, const std::function<double(const SphereDirection&)>& value,
                                     Execution exec) {
  const auto nodes = quad.nodes();
  std::vector<std::optional<double>> v;
  v.reserve(nodes.size());
  for (const auto& n : nodes) v.emplace_back(value(n.direction()));
  return spin_half_reconstruct(quad, std::span<const std::optional<double>>(v), exec);
}

namespace {

// max over the matrix units E_ab of |sum_w outer(node) Tr(inner(node) E_ab) - E_ab|
template <class Outer, class Inner>
double identity_residual(const SphereQuadrature& quad, Outer outer, Inner inner, Execution exec) {
  const auto nodes = quad.nodes();
  double worst = 0.0;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      CMatrix e = CMatrix::Zero(2, 2);
      e(a, b) = 1.0;
      const CMatrix sum = reduce_sum(
          nodes.size(), CMatrix(CMatrix::Zero(2, 2)),
          [&](std::size_t k) -> CMatrix {
            const auto d = nodes[k].direction();
            return nodes[k].weight() * (inner(d) * e).trace() * outer(d);
          },
          exec);
      worst = std::max(worst, (sum - e).cwiseAbs().maxCoeff());
    }
  return worst;
}

}  // namespace

double dual_identity_check(const SphereQuadrature& quad, Execution exec) {
  return identity_residual(
      quad, [](const SphereDirection& d) { return spin_half_projector(d).matrix.entries(); },
      [](const SphereDirection& d) { return spin_half_kernel(d).entries(); }, exec);
}

double kernel_identity_check(const SphereQuadrature& quad, Execution exec) {
  return identity_residual(
      quad, [](const SphereDirection& d) { return spin_half_kernel(d).entries(); },
      [](const SphereDirection& d) { return spin_half_projector(d).matrix.entries(); }, exec);
}

CMatrix spin_rotation(HalfInteger j, const SphereDirection& dir) { return wigner_D_matrix(j, dir.phi, dir.theta, 0.0); }

SpinKernelTable::SpinKernelTable(HalfInteger j, EulerConvention conv) : j_(j), conv_(conv), nL_(j.twice() + 1) {
  if (j.twice() < 0) throw DomainError("negative spin");
  const auto ms = projections(j);
  const int n = dim();
  a_.assign(static_cast<std::size_t>(nL_ * n), 0.0);
  b_.assign(static_cast<std::size_t>(nL_ * n * n), 0.0);
  for (int L = 0; L < nL_; ++L) {
    const auto hL = HalfInteger::from_int(L);
    const double w = (2.0 * L + 1) * (2.0 * L + 1) / (4 * kPi);
    for (int mi = 0; mi < n; ++mi) {
      const auto m = ms[static_cast<std::size_t>(mi)];
      const int jm = (j.twice() - m.twice()) / 2;
      const double sign = (jm % 2 == 0) ? 1.0 : -1.0;
      a_[static_cast<std::size_t>(L * n + mi)] = w * sign * wigner_3j(j, j, hL, m, -m, HalfInteger());
    }
    for (int p = 0; p < n; ++p)
      for (int q = 0; q < n; ++q) {
        const auto sp = ms[static_cast<std::size_t>(p)], spp = ms[static_cast<std::size_t>(q)];
        const auto M = spp - sp;
        if (std::abs(M.twice()) > 2 * L) continue;
        const int ph = (j.twice() - sp.twice() + M.twice()) / 2;
        const double sign = (ph % 2 == 0) ? 1.0 : -1.0;
        b_[static_cast<std::size_t>((L * n + p) * n + q)] = sign * wigner_3j(j, j, hL, sp, -spp, M);
      }
  }
}

// (L, M + L) -> gamma-averaged D^L_{0M}
std::vector<Complex> SpinKernelTable::angular(const SphereDirection& dir) const {
  const int width = 2 * nL_ - 1;
  std::vector<Complex> f(static_cast<std::size_t>(nL_ * width), Complex(0.0));
  for (int L = 0; L < nL_; ++L) {
    const auto hL = HalfInteger::from_int(L);
    for (int M = -L; M <= L; ++M) {
      Complex v = 0.0;
      if (conv_ == EulerConvention::passive_conjugate)
        v = std::polar(wigner_d(hL, HalfInteger::from_int(M), HalfInteger(), dir.theta), M * dir.phi);
      else if (M == 0)
        v = wigner_d(hL, HalfInteger(), HalfInteger(), dir.theta);
      f[static_cast<std::size_t>(L * width + M + nL_ - 1)] = v;
    }
  }
  return f;
}

std::vector<CMatrix> SpinKernelTable::kernels(const SphereDirection& dir) const {
  const int n = dim();
  const int width = 2 * nL_ - 1;
  const auto f = angular(dir);
  // B_L(s', s'') f_L(M), shared by all m
  std::vector<CMatrix> bf(static_cast<std::size_t>(nL_), CMatrix::Zero(n, n));
  for (int L = 0; L < nL_; ++L)
    for (int p = 0; p < n; ++p)
      for (int q = 0; q < n; ++q) {
        const int M = p - q;  // index order runs from +j down, so s'' - s' = p - q
        if (std::abs(M) > L) continue;
        bf[static_cast<std::size_t>(L)](p, q) =
            b_[static_cast<std::size_t>((L * n + p) * n + q)] * f[static_cast<std::size_t>(L * width + M + nL_ - 1)];
      }
  std::vector<CMatrix> out(static_cast<std::size_t>(n), CMatrix::Zero(n, n));
  for (int mi = 0; mi < n; ++mi)
    for (int L = 0; L < nL_; ++L) {
      const double a = a_[static_cast<std::size_t>(L * n + mi)];
      if (a != 0.0) out[static_cast<std::size_t>(mi)] += a * bf[static_cast<std::size_t>(L)];
    }
  return out;
}

CMatrix SpinKernelTable::kernel(int m_index, const SphereDirection& dir) const {
  if (m_index < 0 || m_index >= dim()) throw DomainError("projection index out of range");
  return kernels(dir)[static_cast<std::size_t>(m_index)];
}

OperatorMatrix spin_j_kernel(HalfInteger j, HalfInteger m, const SphereDirection& dir, EulerConvention conv) {
  if (j.twice() < 0) throw DomainError("negative spin");
  if (std::abs(m.twice()) > j.twice() || (j.twice() - m.twice()) % 2 != 0)
    throw DomainError("projection " + m.str() + " out of range for j = " + j.str());
  const SpinKernelTable table(j, conv);
  return OperatorMatrix(table.kernel((j.twice() - m.twice()) / 2, dir));
}

SpinTomogramGrid spin_j_tomogram(const OperatorMatrix& rho, HalfInteger j, std::span<const SphereNode> nodes,
                                 Execution exec) {
  if (j.twice() < 0) throw DomainError("negative spin");
  const int n = j.twice() + 1;
  if (rho.dim() != n)
    throw DimensionError("operator dim " + std::to_string(rho.dim()) + " does not match 2j+1 = " + std::to_string(n));
  SpinTomogramGrid g;
  g.j = j;
  g.nodes.assign(nodes.begin(), nodes.end());
  g.values.assign(nodes.size(), std::vector<double>(static_cast<std::size_t>(n)));
  for_each_index(
      nodes.size(),
      [&](std::size_t k) {
        const CMatrix r = spin_rotation(j, nodes[k].direction());
        const CMatrix t = r.adjoint() * rho.entries() * r;
        for (int m = 0; m < n; ++m) g.values[k][static_cast<std::size_t>(m)] = t(m, m).real();
      },
      exec);
  return g;
}

int default_sphere_nodes(HalfInteger j) { return 8 * (j.twice() + 1); }

SpinReconstruction spin_j_reconstruct(const SpinTomogramGrid& grid, Execution exec, EulerConvention conv) {
  const int n = grid.j.twice() + 1;
  if (grid.values.size() != grid.nodes.size()) throw DimensionError("tomogram rows do not match node count");
  for (const auto& row : grid.values)
    if (static_cast<int>(row.size()) != n) throw DimensionError("tomogram row length differs from 2j+1");
  SpinReconstruction out;
  std::set<double> thetas, phis;
  for (const auto& nd : grid.nodes) {
    thetas.insert(nd.theta);
    phis.insert(nd.phi);
  }
  const std::size_t need = 2 * static_cast<std::size_t>(n);
  if (thetas.size() < need || phis.size() < need)
    out.warnings.push_back("under-resolved quadrature: " + std::to_string(thetas.size()) + " theta x " +
                           std::to_string(phis.size()) + " phi nodes, need at least " + std::to_string(need) +
                           " each for j = " + grid.j.str());
  const SpinKernelTable table(grid.j, conv);
  CMatrix sum = reduce_sum(
      grid.nodes.size(), CMatrix(CMatrix::Zero(n, n)),
      [&](std::size_t k) -> CMatrix {
        const auto ks = table.kernels(grid.nodes[k].direction());
        CMatrix acc = CMatrix::Zero(n, n);
        for (int m = 0; m < n; ++m) acc += grid.values[k][static_cast<std::size_t>(m)] * ks[static_cast<std::size_t>(m)];
        return grid.nodes[k].weight() * acc;
      },
      exec);
  out.rho = OperatorMatrix(std::move(sum));
  return out;
}

}  // namespace tomo
