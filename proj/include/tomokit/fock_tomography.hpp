#pragma once

#include <string>
#include <vector>

#include "tomokit/execution.hpp"
#include "tomokit/operator_space.hpp"
#include "tomokit/special_functions.hpp"

namespace tomo {

class FockSpace {
 public:
  explicit FockSpace(int nmax);
  int nmax() const { return nmax_; }
  int dim() const { return nmax_ + 1; }
  CMatrix annihilation() const;

 private:
  int nmax_;
};

// <m|D(alpha)|n> for m in [0, rows), n in [0, cols) from the Laguerre closed form.
CMatrix displacement_block(Complex alpha, int rows, int cols);
OperatorMatrix displacement_matrix(Complex alpha, const FockSpace& space);

struct DisplacementQuality {
  double unitarity_defect = 0.0;  // Frobenius norm of D^dag D - 1 on the truncated space
  int reliable_dim = 0;           // leading columns whose weight outside the space is below tol
};
DisplacementQuality displacement_quality(Complex alpha, const FockSpace& space, double tol = 1e-16);

CVector fock_state(int n, const FockSpace& space);
// Truncated coherent state, renormalized on the space.
CVector coherent_state(Complex alpha, const FockSpace& space);

double photon_tomogram(const OperatorMatrix& rho, int n, Complex alpha, const FockSpace& space);

// Matrix elements of D(alpha) ((s+1)/(s-1))^{a^dag a} D^dag(alpha) between the
// first dim() number states, evaluated as the finite normal-ordered sum, so no
// truncation of the intermediate sum over number states enters.
OperatorMatrix t_operator(Complex alpha, double s, const FockSpace& space);
// The same operator as the product of truncated matrices.
OperatorMatrix t_operator_truncated(Complex alpha, double s, const FockSpace& space);

// Largest s > 0 for which |(s+1)/(s-1)|^nmax stays below 1e300.
double max_safe_s(int nmax);

// (2/(1-s)) ((s+1)/(s-1))^n T(-alpha, -s)
OperatorMatrix photon_kernel(int n, Complex alpha, double s, const FockSpace& space);

struct PolarGrid {
  double radius = 4.0;
  std::vector<double> radial_nodes;
  std::vector<double> radial_weights;  // include the factor r of r dr
  int angular_count = 24;

  static PolarGrid gauss(double radius, int nradial, int nangular);
  std::size_t size() const { return radial_nodes.size() * static_cast<std::size_t>(angular_count); }
  Complex node(std::size_t k) const;
  double weight(std::size_t k) const;  // r dr dtheta, without the 1/pi
};

struct PhotonTomogram {
  FockSpace space{32};
  int ncut = 32;
  PolarGrid grid;
  std::vector<std::vector<double>> values;  // [n][node], n = 0..ncut
};

PhotonTomogram photon_tomogram_grid(const OperatorMatrix& rho, const FockSpace& space, const PolarGrid& grid, int ncut,
                                    Execution exec = Execution::parallel);

struct PhotonReconstruction {
  OperatorMatrix rho;
  double radial_loss = 0.0;  // Husimi weight outside the grid radius
  double ncut_loss = 0.0;    // Husimi-weighted tomogram mass above ncut
  std::vector<std::string> warnings;
};

// Reconstruction on the first output_nmax+1 number states (tomogram space
// when negative). The tomogram node alpha is paired with the kernel at -alpha,
// and the kernel is rescaled by 2/(1+s); see README for the normalization.
PhotonReconstruction photon_reconstruct(const PhotonTomogram& tom, double s, int output_nmax = -1,
                                        Execution exec = Execution::parallel);

// <x|K^(s)(n, alpha)|y> from the oscillator-kernel closed form.
Complex kernel_position_element(double x, double y, int n, Complex alpha, double s);
// The same element by resumming the number-basis kernel with Hermite functions.
Complex kernel_position_element_fock(double x, double y, int n, Complex alpha, double s, const FockSpace& space);

}  // namespace tomo
