// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

#include "tomokit/fock_tomography.hpp"
#include "tomokit/spin_tomography.hpp"
#include "tomokit/symplectic_tomography.hpp"
#include "tomokit/tomographic_sets.hpp"

using namespace tomo;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double a, double b = 0, double c = 0, double d = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

int failures = 0;

void criterion(int id, const char* name, double time_limit, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("threw: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::string timing = fmt("%.2f s", secs);
  if (time_limit > 0) {
    timing += fmt(" (limit %.0f s)", time_limit);
    if (secs >= time_limit) {
      o.pass = false;
      o.detail += "; over the time limit";
    }
  }
  if (!o.pass) ++failures;
  std::printf("%s %2d %-28s %s [%s]\n", o.pass ? "PASS" : "FAIL", id, name, o.detail.c_str(), timing.c_str());
  std::fflush(stdout);
}

TomographicSet qutrit_set() {
  std::vector<RankOneProjector> ps;
  for (int i = 0; i < 3; ++i) ps.push_back(projector_from_vector(CVector::Unit(3, i)));
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j)
      for (Complex ph : {Complex(1, 0), Complex(0, 1)}) {
        CVector v = CVector::Zero(3);
        v(i) = 1.0;
        v(j) = ph;
        ps.push_back(projector_from_vector(v));
      }
  return TomographicSet(3, std::move(ps));
}

CMatrix exact_spin_half_kernel(const SphereDirection& d) {
  const Complex I(0, 1);
  CMatrix k(2, 2);
  k << 1 + 3 * std::cos(d.theta), 3.0 * std::exp(-I * d.phi) * std::sin(d.theta),
      3.0 * std::exp(I * d.phi) * std::sin(d.theta), 1 - 3 * std::cos(d.theta);
  return k / (4 * kPi);
}

OperatorMatrix spin_half_reference(const OperatorMatrix& a) {
  const auto quad = SphereQuadrature::make(16, 16);
  return spin_half_reconstruct(quad, [&](const SphereDirection& d) {
    return (spin_half_projector(d).matrix.entries() * a.entries()).trace().real();
  });
}

OperatorMatrix pure(const CVector& v) { return OperatorMatrix(v * v.adjoint()); }

}  // namespace

int main() {
  criterion(1, "finite round trip", 10, [] {
    double worst = 0.0;
    for (int n = 2; n <= 5; ++n) {
      Rng rng(100 + static_cast<std::uint64_t>(n));
      const auto set = random_minimal_set(n, rng, 1e6);
      const auto kernel = gram_schmidt(set);
      for (int k = 0; k < 50; ++k) {
        const auto rho = random_density_matrix(n, 1000 * static_cast<std::uint64_t>(n) + static_cast<std::uint64_t>(k));
        worst = std::max(worst, (reconstruct(tomogram(rho, set), kernel).entries() - rho.entries()).norm());
      }
    }
    return Outcome{worst < 1e-8, fmt("max Frobenius error %.2e (< 1e-8), n = 2..5, 50 states each", worst)};
  });

  criterion(2, "biorthogonality", 0, [] {
    const auto set = qutrit_set();
    const auto kernel = gram_schmidt(set);
    double worst = 0.0;
    for (std::size_t l = 0; l < set.size(); ++l)
      for (std::size_t k = 0; k < set.size(); ++k) {
        const Complex t = (kernel.duals[l].entries() * set[k].matrix.entries()).trace();
        worst = std::max(worst, std::abs(t - (l == k ? 1.0 : 0.0)));
      }
    return Outcome{worst < 1e-8, fmt("max |Tr(K_l P_k) - delta_lk| = %.2e (< 1e-8)", worst)};
  });

  criterion(3, "skewness criterion", 0, [] {
    Rng rng(2024);
    auto su2 = [&] {
      const CVector ab = random_unit_vector(2, rng);
      CMatrix u(2, 2);
      u << ab(0), ab(1), -std::conj(ab(1)), std::conj(ab(0));
      return OperatorMatrix(u);
    };
    int agree = 0, skew = 0;
    for (int t = 0; t < 200; ++t) {
      const auto u1 = su2(), u2 = su2();
      const bool s = skew_pair_check(u1, u2).skew;
      Eigen::JacobiSVD<CMatrix> svd(projector_vector_matrix(skew_pair_set(u1, u2)));
      const auto& sv = svd.singularValues();
      int rank = 0;
      for (Eigen::Index i = 0; i < sv.size(); ++i) rank += sv(i) > 1e-10 * sv(0);
      agree += (s == (rank == 4));
      skew += s;
    }
    return Outcome{agree == 200, fmt("%.0f of 200 pairs agree with the SVD rank test (%.0f skew)", agree, skew)};
  });

  criterion(4, "spin-1/2 identity", 5, [] {
    const auto quad = SphereQuadrature::make(16, 16);
    const auto nodes = quad.nodes();
    double kernel_gap = 0.0;
    for (const auto& n : nodes)
      kernel_gap = std::max(kernel_gap, (spin_half_kernel(n.direction()).entries() - exact_spin_half_kernel(n.direction()))
                                            .cwiseAbs()
                                            .maxCoeff());
    Rng rng(4);
    double kernel_outside = 0.0, projector_outside = 0.0;
    for (int t = 0; t < 20; ++t) {
      const auto a = random_hermitian(2, rng);
      CMatrix s1 = CMatrix::Zero(2, 2), s2 = CMatrix::Zero(2, 2);
      for (const auto& n : nodes) {
        const CMatrix p = spin_half_projector(n.direction()).matrix.entries();
        const CMatrix k = exact_spin_half_kernel(n.direction());
        s1 += n.weight() * (p * a.entries()).trace() * k;
        s2 += n.weight() * (k * a.entries()).trace() * p;
      }
      kernel_outside = std::max(kernel_outside, (s1 - a.entries()).cwiseAbs().maxCoeff());
      projector_outside = std::max(projector_outside, (s2 - a.entries()).cwiseAbs().maxCoeff());
    }
    const bool pass = kernel_outside < 1e-8 && projector_outside < 1e-8 && kernel_gap < 1e-12;
    return Outcome{pass, fmt("kernel outside %.2e, projector outside %.2e (< 1e-8); library kernel vs exact %.1e",
                             kernel_outside, projector_outside, kernel_gap)};
  });

  criterion(5, "spin-j kernel", 0, [] {
    double worst = 0.0, vs_half = 0.0;
    std::string per_j;
    for (const char* js : {"1/2", "1", "3/2"}) {
      const auto j = HalfInteger::parse(js);
      const int nodes = 8 * (j.twice() + 1);
      const auto quad = SphereQuadrature::make(nodes, nodes);
      double wj = 0.0;
      for (int k = 0; k < 10; ++k) {
        const auto rho = random_density_matrix(j.twice() + 1, 500 + 10 * static_cast<std::uint64_t>(j.twice()) + k);
        const auto rec = spin_j_reconstruct(spin_j_tomogram(rho, j, quad)).rho;
        wj = std::max(wj, (rec.entries() - rho.entries()).norm());
        if (j.twice() == 1) vs_half = std::max(vs_half, max_abs_diff(rec, spin_half_reference(rho)));
      }
      worst = std::max(worst, wj);
      per_j += fmt(" %.1e", wj);
    }
    return Outcome{worst < 1e-6 && vs_half < 1e-6,
                   "round-trip errors (j = 1/2, 1, 3/2)" + per_j + " (< 1e-6); j = 1/2 vs spin-1/2 path " +
                       fmt("%.1e (< 1e-6)", vs_half)};
  });

  criterion(6, "photon-number inversion", 60, [] {
    const FockSpace space(32);
    const auto grid = PolarGrid::gauss(4.0, 24, 24);
    const std::vector<std::pair<const char*, OperatorMatrix>> states{
        {"|0>", pure(fock_state(0, space))}, {"|1>", pure(fock_state(1, space))}, {"coherent", pure(coherent_state(1.0, space))}};
    double min_fid = 1.0, worst_trace = 0.0, worst_gap = 0.0;
    for (const auto& [name, rho] : states) {
      const auto tom = photon_tomogram_grid(rho, space, grid, space.nmax());
      const auto r0 = photon_reconstruct(tom, 0.0, 8);
      const auto r3 = photon_reconstruct(tom, -0.3, 8);
      min_fid = std::min(min_fid, fidelity(r0.rho, resize_operator(rho, 9)));
      worst_trace = std::max(worst_trace, std::abs(r0.rho.trace().real() - 1.0));
      worst_gap = std::max(worst_gap, max_abs_diff(r0.rho, r3.rho));
    }
    const bool pass = min_fid > 0.99 && worst_trace <= 0.02 && worst_gap < 0.02;
    return Outcome{pass, fmt("min fidelity %.5f (> 0.99), max |trace - 1| %.1e (<= 0.02), s = 0 vs -0.3 gap %.1e (< 0.02)",
                             min_fid, worst_trace, worst_gap)};
  });

  criterion(7, "photon kernel cross-check", 0, [] {
    const FockSpace space(40);
    double worst = 0.0;
    int evaluated = 0;
    std::string failure;
    for (int a = 0; a < 5; ++a)
      for (int b = 0; b < 5; ++b) {
        const double x = -1.6 + 0.8 * a, y = -1.2 + 0.7 * b;
        try {
          const Complex closed = kernel_position_element(x, y, 0, 0.0, 0.0);
          worst = std::max(worst, std::abs(closed - kernel_position_element_fock(x, y, 0, 0.0, 0.0, space)));
          ++evaluated;
        } catch (const DomainError& e) {
          if (failure.empty()) failure = e.what();
        }
      }
    if (evaluated < 25)
      return Outcome{false, fmt("closed form evaluated at %.0f of 25 points: ", evaluated) + failure};
    return Outcome{worst < 1e-4, fmt("max gap %.2e (< 1e-4) at 25 points", worst)};
  });

  criterion(8, "symplectic reconstruction", 30, [] {
    const SymplecticLayout layout;
    const auto psi = GridWavefunction::oscillator(0, layout.ygrid);
    const auto k = symplectic_reconstruct(symplectic_tomogram_grid(psi, layout));
    double err = 0.0;
    for (int i = 0; i < k.ygrid.count; ++i)
      for (int j = 0; j < k.ygrid.count; ++j) {
        const double y = k.ygrid.at(i), yp = k.ygrid.at(j) + k.offset;
        err = std::max(err, std::abs(k.values(i, j) - std::exp(-(y * y + yp * yp) / 2) / std::sqrt(kPi)));
      }
    const double tr = k.trace();
    return Outcome{err < 1e-2 && std::abs(tr - 1) < 1e-2,
                   fmt("max-abs error %.2e (< 1e-2), trace %.6f (within 1e-2 of 1) on a %.0f-point grid", err, tr,
                       k.ygrid.count)};
  });

  criterion(9, "Pauli counterexample", 0, [] {
    const Complex alpha(1.0, 1.0);
    const auto r = pauli_counterexample(alpha, 0.0, UniformGrid(-10, 10, 512));
    // overlap of the normalized Gaussians by Gauss-Legendre quadrature
    const auto rule = gauss_legendre(200, -10, 10);
    const Complex ov = rule.integrate([&](double x) { return std::exp(-2.0 * std::conj(alpha) * x * x); });
    const double nn = rule.integrate([&](double x) { return std::exp(-2.0 * alpha.real() * x * x); });
    const double oracle = std::norm(ov) / (nn * nn);
    const bool pass = r.marginal_gap_q < 1e-12 && r.marginal_gap_p < 1e-12 && std::abs(r.fidelity - 0.70711) <= 1e-4 &&
                      std::abs(oracle - 0.70711) <= 1e-4 && std::abs(r.fidelity - oracle) <= 1e-4;
    return Outcome{pass, fmt("gaps q %.1e, p %.1e (< 1e-12), fidelity %.6f, oracle %.6f (0.70711 +- 1e-4)",
                             r.marginal_gap_q, r.marginal_gap_p, r.fidelity, oracle)};
  });

  criterion(10, "squeeze commutant", 0, [] {
    const FockSpace space(40);
    Rng rng(10);
    std::uniform_real_distribution<double> u(-1.5, 1.5);
    double worst = 0.0;
    int done = 0;
    while (done < 5) {
      const double mu = u(rng), nu = u(rng);
      if (std::abs(mu * nu) > 0.5 || (mu == 0 && nu == 0)) continue;
      worst = std::max(worst, squeeze_commutant_check(mu, nu, space).parity_commutator_norm);
      ++done;
    }
    return Outcome{worst < 1e-8, fmt("max ||[A_sq, parity]|| = %.2e (< 1e-8) over 5 (mu, nu), nmax = 40", worst)};
  });

  criterion(11, "sphere POVM", 0, [] {
    const auto quad = SphereQuadrature::make(32, 32);
    std::vector<RankOneProjector> ps;
    std::vector<double> w;
    for (const auto& n : quad.nodes()) {
      ps.push_back(spin_half_projector(n.direction()));
      w.push_back(2 * n.weight() / (4 * kPi));
    }
    const double gap = povm_check(TomographicSet(2, std::move(ps)), w);
    return Outcome{gap < 1e-6, fmt("||sum w P - 1|| = %.2e (< 1e-6) at 32x32 nodes", gap)};
  });

  std::printf("%d of 11 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
