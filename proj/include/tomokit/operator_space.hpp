#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "tomokit/core.hpp"

namespace tomo {

inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kProjectorTol = 1e-10;

// Dense complex square matrix. The Hermitian flag is computed once at
// construction and is only set when the entries are Hermitian to 1e-12.
class OperatorMatrix {
 public:
  OperatorMatrix() = default;
  explicit OperatorMatrix(CMatrix entries);

  static OperatorMatrix identity(int n);
  static OperatorMatrix zero(int n);

  int dim() const { return static_cast<int>(m_.rows()); }
  const CMatrix& entries() const { return m_; }
  Complex operator()(int i, int j) const { return m_(i, j); }
  bool hermitian_hint() const { return hermitian_; }

  Complex trace() const { return m_.trace(); }
  OperatorMatrix adjoint() const { return OperatorMatrix(m_.adjoint()); }
  // max |A_ij - conj(A_ji)|
  double hermiticity_residual() const;
  double max_abs() const;

  friend OperatorMatrix operator+(const OperatorMatrix& a, const OperatorMatrix& b);
  friend OperatorMatrix operator-(const OperatorMatrix& a, const OperatorMatrix& b);
  friend OperatorMatrix operator*(const OperatorMatrix& a, const OperatorMatrix& b);
  friend OperatorMatrix operator*(Complex c, const OperatorMatrix& a);

 private:
  CMatrix m_;
  bool hermitian_ = false;
};

double max_abs_diff(const OperatorMatrix& a, const OperatorMatrix& b);

struct RankOneProjector {
  CVector vector;
  OperatorMatrix matrix;
  int dim() const { return static_cast<int>(vector.size()); }
};

struct BlochPoint {
  std::vector<double> coeffs;
  // coordinates after the identity component
  std::vector<double> bloch_vector() const { return {coeffs.begin() + 1, coeffs.end()}; }
};

Complex hs_inner(const OperatorMatrix& a, const OperatorMatrix& b);

CVector mat_to_vec(const OperatorMatrix& a);
OperatorMatrix vec_to_mat(const CVector& v);

// Identity followed by the generalized Gell-Mann matrices: for each pair
// j<k the symmetric then the antisymmetric member, then the n-1 diagonal
// traceless members. Tr(tau_1^2) = n, Tr(tau_k^2) = 2 otherwise.
std::vector<OperatorMatrix> generator_basis(int n);
double generator_norm(int n, int k);

// alpha^k = Tr(tau_k A) / Tr(tau_k^2), so A = sum_k alpha^k tau_k.
CVector hermitian_basis_decompose(const OperatorMatrix& a);
OperatorMatrix hermitian_basis_compose(const CVector& coeffs);

RankOneProjector projector_from_vector(const CVector& v);
BlochPoint bloch_coordinates(const RankOneProjector& p);

using Rng = std::mt19937_64;

OperatorMatrix random_density_matrix(int n, std::uint64_t seed);
CVector random_unit_vector(int n, Rng& rng);
CMatrix random_unitary(int n, Rng& rng);
OperatorMatrix random_hermitian(int n, Rng& rng);

// Pads with zeros or cuts to the leading block.
OperatorMatrix resize_operator(const OperatorMatrix& a, int n);

// Uhlmann fidelity (Tr sqrt(sqrt(rho) sigma sqrt(rho)))^2 of the Hermitian
// parts, negative eigenvalues clipped. Smaller operand is zero-padded.
double fidelity(const OperatorMatrix& rho, const OperatorMatrix& sigma);

}  // namespace tomo
