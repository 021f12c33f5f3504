#pragma once

#include <array>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tomokit/execution.hpp"
#include "tomokit/operator_space.hpp"
#include "tomokit/special_functions.hpp"

namespace tomo {

struct SphereDirection {
  double theta = 0.0;
  double phi = 0.0;

  SphereDirection() = default;
  // theta must lie in [0, pi]; phi is wrapped into [0, 2pi) and set to 0 at the poles.
  SphereDirection(double theta, double phi);
  std::array<double, 3> unit_vector() const;
};

struct SphereNode {
  double theta = 0.0;
  double phi = 0.0;
  double wtheta = 0.0;  // includes sin(theta)
  double wphi = 0.0;
  SphereDirection direction() const { return {theta, phi}; }
  double weight() const { return wtheta * wphi; }
};

// Gauss-Legendre in cos(theta) times the uniform rule in phi.
struct SphereQuadrature {
  QuadratureRule cos_theta;
  QuadratureRule phi;

  static SphereQuadrature make(int ntheta, int nphi);
  std::vector<SphereNode> nodes() const;
};

// How the gamma-average of D^{L}_{0M} in the spin-j kernel is taken.
//   active_zyz: D_{0M}(phi, theta, gamma) as defined by wigner_D; only M = 0 survives.
//   passive_conjugate: conj(D^L_{M0}(phi, theta, gamma)) = exp(i M phi) d^L_{M0}(theta).
enum class EulerConvention { active_zyz, passive_conjugate };
inline constexpr EulerConvention kSpinKernelConvention = EulerConvention::passive_conjugate;

OperatorMatrix spin_half_family(const SphereDirection& dir);
RankOneProjector spin_half_projector(const SphereDirection& dir);
OperatorMatrix spin_half_kernel(const SphereDirection& dir);
// Maps the fiducial basis onto the eigenbasis of spin_half_family(dir).
OperatorMatrix spin_half_unitary(const SphereDirection& dir);

struct MissingNodesError : Error {
  MissingNodesError(const std::string& what, std::vector<std::size_t> missing) : Error(what), missing(std::move(missing)) {}
  std::vector<std::size_t> missing;
};

// values[k] belongs to quad.nodes()[k]; absent entries raise MissingNodesError.
OperatorMatrix spin_half_reconstruct(const SphereQuadrature& quad, std::span<const std::optional<double>> values,
                                     Execution exec = Execution::parallel);
OperatorMatrix spin_half_reconstruct(const SphereQuadrature& quad, const std::function<double(const SphereDirection&)>& value,
                                     Execution exec = Execution::parallel);

// Projectors outside, kernel inside the trace, applied to the standard basis of 2x2 matrices.
double dual_identity_check(const SphereQuadrature& quad, Execution exec = Execution::parallel);
// Kernel outside, projectors inside.
double kernel_identity_check(const SphereQuadrature& quad, Execution exec = Execution::parallel);

// R(theta, phi) = D^j(phi, theta, 0)
CMatrix spin_rotation(HalfInteger j, const SphereDirection& dir);

// Coefficient tables of the spin-j kernel, independent of direction.
class SpinKernelTable {
 public:
  explicit SpinKernelTable(HalfInteger j, EulerConvention conv = kSpinKernelConvention);
  HalfInteger j() const { return j_; }
  int dim() const { return j_.twice() + 1; }
  // All kernels K(m, dir) in projections(j) order.
  std::vector<CMatrix> kernels(const SphereDirection& dir) const;
  CMatrix kernel(int m_index, const SphereDirection& dir) const;

 private:
  std::vector<Complex> angular(const SphereDirection& dir) const;

  HalfInteger j_;
  EulerConvention conv_;
  int nL_;
  std::vector<double> a_;  // (L, m) -> (2L+1)^2/(4 pi) (-1)^{j-m} 3j(j j L; m -m 0)
  std::vector<double> b_;  // (L, s', s'') -> (-1)^{j-s'+M} 3j(j j L; s' -s'' M), M = s'' - s'
};

OperatorMatrix spin_j_kernel(HalfInteger j, HalfInteger m, const SphereDirection& dir,
                             EulerConvention conv = kSpinKernelConvention);

struct SpinTomogramGrid {
  HalfInteger j;
  std::vector<SphereNode> nodes;
  std::vector<std::vector<double>> values;  // [node][m index]
};

SpinTomogramGrid spin_j_tomogram(const OperatorMatrix& rho, HalfInteger j, std::span<const SphereNode> nodes,
                                 Execution exec = Execution::parallel);
inline SpinTomogramGrid spin_j_tomogram(const OperatorMatrix& rho, HalfInteger j, const SphereQuadrature& quad,
                                        Execution exec = Execution::parallel) {
  const auto nodes = quad.nodes();
  return spin_j_tomogram(rho, j, std::span<const SphereNode>(nodes), exec);
}

struct SpinReconstruction {
  OperatorMatrix rho;
  std::vector<std::string> warnings;
};

SpinReconstruction spin_j_reconstruct(const SpinTomogramGrid& grid, Execution exec = Execution::parallel,
                                      EulerConvention conv = kSpinKernelConvention);

int default_sphere_nodes(HalfInteger j);

}  // namespace tomo
