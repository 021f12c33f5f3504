#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "tomokit/operator_space.hpp"

namespace tomo {

inline constexpr double kRankThreshold = 1e-10;
inline constexpr double kSkewTol = 1e-10;
inline constexpr double kUnitaryTol = 1e-10;

class TomographicSet {
 public:
  TomographicSet() = default;
  // Empty labels are filled with the projector indices.
  TomographicSet(int dim, std::vector<RankOneProjector> projectors, std::vector<std::string> labels = {});

  int dim() const { return dim_; }
  std::size_t size() const { return projectors_.size(); }
  const std::vector<RankOneProjector>& projectors() const { return projectors_; }
  const std::vector<std::string>& labels() const { return labels_; }
  const RankOneProjector& operator[](std::size_t k) const { return projectors_[k]; }
  std::uint64_t digest() const { return digest_; }

  TomographicSet subset(std::span<const std::size_t> indices) const;

 private:
  int dim_ = 0;
  std::vector<RankOneProjector> projectors_;
  std::vector<std::string> labels_;
  std::uint64_t digest_ = 0;
};

struct Tomogram {
  std::uint64_t set_digest = 0;
  std::vector<double> values;
};

struct GramKernel {
  // row j holds the coefficients of V_j = sum_k gamma_jk P_k
  CMatrix gamma;
  std::vector<OperatorMatrix> duals;
  std::uint64_t set_digest = 0;
};

struct MinimalityReport {
  bool minimal = false;
  int rank = 0;
  double condition_number = 0.0;
};

struct SkewReport {
  bool skew = false;
  double determinant_value = 0.0;
};

// Rows are mat_to_vec(P_k); one row per projector.
CMatrix projector_vector_matrix(const TomographicSet& set);

// Rank and condition number of any number of projectors.
MinimalityReport projector_rank(const TomographicSet& set);
MinimalityReport is_minimal_tomographic_set(const TomographicSet& set);

// Greedy pivoted selection of dim^2 linearly independent projectors.
// Returns an empty list when the set does not span the operator space.
std::vector<std::size_t> select_minimal_subset(const TomographicSet& set);

Tomogram tomogram(const OperatorMatrix& rho, const TomographicSet& set);
// Tr(P_k A) for arbitrary A.
std::vector<Complex> expectation_values(const OperatorMatrix& a, const TomographicSet& set);

GramKernel gram_schmidt(const TomographicSet& set);
double identity_check(const GramKernel& kernel, const TomographicSet& set);

OperatorMatrix reconstruct(const Tomogram& tom, const GramKernel& kernel);
OperatorMatrix reconstruct(std::span<const Complex> values, const GramKernel& kernel);

TomographicSet set_from_unitary_family(const RankOneProjector& p0, std::span<const OperatorMatrix> unitaries);

// Unitaries of the form [[a, b], [-conj(b), conj(a)]].
SkewReport skew_pair_check(const OperatorMatrix& u1, const OperatorMatrix& u2);
// Standard basis plus the columns of u1 and u2.
TomographicSet skew_pair_set(const OperatorMatrix& u1, const OperatorMatrix& u2);

double povm_check(const TomographicSet& set, std::span<const double> weights);

// dim^2 random pure states, resampled until the condition number is below max_condition.
TomographicSet random_minimal_set(int n, Rng& rng, double max_condition = 1e6);
TomographicSet basis_set(int n);

}  // namespace tomo
