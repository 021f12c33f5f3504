#pragma once

#include <string>
#include <vector>

#include "tomokit/execution.hpp"
#include "tomokit/fock_tomography.hpp"
#include "tomokit/operator_space.hpp"
#include "tomokit/special_functions.hpp"

namespace tomo {

struct UniformGrid {
  double min = 0.0;
  double max = 0.0;
  int count = 0;

  UniformGrid() = default;
  UniformGrid(double min, double max, int count);
  double step() const { return (max - min) / (count - 1); }
  double at(int i) const { return min + i * step(); }
  std::vector<double> points() const;
  // trapezoid weights
  std::vector<double> weights() const;
};

struct GridWavefunction {
  UniformGrid grid;
  std::vector<Complex> values;

  GridWavefunction() = default;
  GridWavefunction(UniformGrid grid, std::vector<Complex> values);
  double norm_squared() const;  // sum |psi|^2 dq
  void normalize();

  static GridWavefunction oscillator(int n, const UniformGrid& grid);
  // psi(q_i + shift) by band-limited (trigonometric) interpolation
  std::vector<Complex> shifted(double shift) const;
};

// (2 pi |nu|)^{-1/2} exp(-i (mu q^2 / (2 nu) - X q / nu)); nu = 0 is rejected.
Complex symplectic_eigenfunction(double q, double x, double mu, double nu);

// |int conj(<q|X mu nu>) psi(q) dq|^2 by the trapezoid rule on the wavefunction grid.
double symplectic_tomogram_psi(const GridWavefunction& psi, double x, double mu, double nu);

struct MuNuNode {
  double mu = 0.0;
  double nu = 0.0;
  double weight = 0.0;  // mu-quadrature weight
};

// Sampling plan for tomograms meant for reconstruction on ygrid. The nu
// values are y_i - y'_j with y'_j = y_j + dy/2, so nu = (k - 1/2) dy is never 0.
struct SymplecticLayout {
  UniformGrid ygrid{-8.0, 8.0, 128};
  UniformGrid xgrid{-6.0, 6.0, 96};
  // X samples are xgrid * sqrt(mu^2 + nu^2) instead of xgrid itself
  bool scaled_x = true;
  int mu_count = 64;
  double mu_max = 6.0;

  std::vector<MuNuNode> nodes() const;
};

struct SymplecticTomogram {
  UniformGrid xgrid;
  bool scaled_x = true;
  UniformGrid ygrid;
  std::vector<MuNuNode> nodes;
  std::vector<std::vector<double>> values;  // [node][x]

  double x_at(std::size_t node, int i) const;
};

// Evaluates the tomogram of psi at every layout node. psi is resampled by
// band-limited interpolation where needed so that the chirp is resolved.
SymplecticTomogram symplectic_tomogram_grid(const GridWavefunction& psi, const SymplecticLayout& layout,
                                            Execution exec = Execution::parallel);
// Mixture of tomograms, sum_k p_k W_k, on a common layout.
SymplecticTomogram mix_tomograms(const std::vector<SymplecticTomogram>& parts, const std::vector<double>& weights);

// rho(y_i, y_i + dy/2 + (j - i) dy) on the staggered grid.
struct DensityKernel {
  UniformGrid ygrid;
  double offset = 0.0;  // y'_j = y_j + offset
  CMatrix values;       // (i, j) -> rho(y_i, y'_j)
  double hermiticity_residual = 0.0;

  double trace() const;
};

DensityKernel symplectic_reconstruct(const SymplecticTomogram& tom, Execution exec = Execution::parallel);

struct DeltaProbeGrids {
  UniformGrid xgrid{-6.0, 6.0, 96};
  QuadratureRule mu_rule = gauss_legendre(64, -6.0, 6.0);
};

// Kernel I(y, y'; q, q') obtained by inserting the tomogram into the
// inversion formula with the X and mu integrals truncated to the grids.
Complex delta_identity_probe(double y, double yp, double q, double qp, const DeltaProbeGrids& grids = {});

struct PauliResult {
  double marginal_gap_q = 0.0;
  double marginal_gap_p = 0.0;
  double fidelity = 0.0;
};

PauliResult pauli_counterexample(Complex alpha, double beta, const UniformGrid& grid);

struct SqueezeParameters {
  double lambda = 0.0;
  double theta = 0.0;
};

// Solves mu = e^lambda cos(theta), nu = e^-lambda sin(theta); needs
// |mu nu| <= 1/2. Of the two solutions the one with smaller |lambda| is
// returned, which reduces to lambda = ln|mu| as nu -> 0.
SqueezeParameters squeeze_parameters(double mu, double nu);
// S = exp(-i theta (Q^2 + P^2)/2) exp(-i lambda/2 (QP + PQ)), the rotation acting
// after the squeeze, so that S^dag Q S = mu Q + nu P. Truncated to the Fock space.
OperatorMatrix squeeze_unitary(double mu, double nu, const FockSpace& space);

struct SqueezeCommutantReport {
  double parity_commutator_norm = 0.0;
  SqueezeParameters params;
};

SqueezeCommutantReport squeeze_commutant_check(double mu, double nu, const FockSpace& space);

struct SqueezeRankProbe {
  int block_dim = 0;
  int full_rank = 0;      // rank of S|n><n|S^dag cut to the block
  int full_target = 0;    // block_dim^2
  int even_rank = 0;      // same, even states in the even block
  int even_target = 0;
  bool full_complete() const { return full_rank == full_target; }
  bool even_complete() const { return even_rank == even_target; }
};

SqueezeRankProbe squeeze_rank_probe(int block_dim, const std::vector<std::pair<double, double>>& munu,
                                    const FockSpace& space);

}  // namespace tomo
