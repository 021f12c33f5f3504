#include "tomokit/tomographic_sets.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace tomo {

TomographicSet::TomographicSet(int dim, std::vector<RankOneProjector> projectors, std::vector<std::string> labels)
    : dim_(dim), projectors_(std::move(projectors)), labels_(std::move(labels)) {
  if (dim_ < 1) throw DimensionError("tomographic set dimension must be positive");
  if (labels_.empty())
    for (std::size_t k = 0; k < projectors_.size(); ++k) labels_.push_back(std::to_string(k));
  if (labels_.size() != projectors_.size())
    throw DimensionError("label count " + std::to_string(labels_.size()) + " differs from projector count " +
                         std::to_string(projectors_.size()));
  Fnv1a h;
  h.add(static_cast<std::int64_t>(dim_));
  for (std::size_t k = 0; k < projectors_.size(); ++k) {
    const auto& p = projectors_[k];
    if (p.dim() != dim_ || p.matrix.dim() != dim_)
      throw DimensionError("projector " + std::to_string(k) + " has dim " + std::to_string(p.dim()) + ", expected " +
                           std::to_string(dim_));
    for (int i = 0; i < dim_; ++i) {
      h.add(p.vector(i).real());
      h.add(p.vector(i).imag());
    }
    h.add(labels_[k]);
  }
  digest_ = h.value();
}

TomographicSet TomographicSet::subset(std::span<const std::size_t> indices) const {
  std::vector<RankOneProjector> ps;
  std::vector<std::string> ls;
  for (auto k : indices) {
    if (k >= size()) throw DimensionError("subset index out of range");
    ps.push_back(projectors_[k]);
    ls.push_back(labels_[k]);
  }
  return TomographicSet(dim_, std::move(ps), std::move(ls));
}

CMatrix projector_vector_matrix(const TomographicSet& set) {
  const int n2 = set.dim() * set.dim();
  CMatrix m(static_cast<Eigen::Index>(set.size()), n2);
  for (std::size_t k = 0; k < set.size(); ++k) m.row(static_cast<Eigen::Index>(k)) = mat_to_vec(set[k].matrix).transpose();
  return m;
}

MinimalityReport projector_rank(const TomographicSet& set) {
  MinimalityReport r;
  if (set.size() == 0) return r;
  const CMatrix m = projector_vector_matrix(set);
  Eigen::JacobiSVD<CMatrix> svd(m);
  const auto& sv = svd.singularValues();
  const double smax = sv(0);
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > kRankThreshold * smax) ++r.rank;
  const double smin = sv(sv.size() - 1);
  r.condition_number = smin > 0 ? smax / smin : std::numeric_limits<double>::infinity();
  r.minimal = r.rank == set.dim() * set.dim() && static_cast<int>(set.size()) == r.rank;
  return r;
}

MinimalityReport is_minimal_tomographic_set(const TomographicSet& set) {
  const std::size_t need = static_cast<std::size_t>(set.dim()) * set.dim();
  if (set.size() < need)
    throw DimensionError("too few projectors: " + std::to_string(set.size()) + " < " + std::to_string(need));
  if (set.size() > need)
    throw DimensionError("too many projectors: " + std::to_string(set.size()) + " > " + std::to_string(need));
  return projector_rank(set);
}

std::vector<std::size_t> select_minimal_subset(const TomographicSet& set) {
  const int n2 = set.dim() * set.dim();
  if (static_cast<int>(set.size()) < n2) return {};
  const CMatrix cols = projector_vector_matrix(set).transpose();
  Eigen::ColPivHouseholderQR<CMatrix> qr(cols);
  qr.setThreshold(kRankThreshold);
  if (qr.rank() < n2) return {};
  std::vector<std::size_t> picked;
  for (int i = 0; i < n2; ++i) picked.push_back(static_cast<std::size_t>(qr.colsPermutation().indices()(i)));
  std::sort(picked.begin(), picked.end());
  return picked;
}

Tomogram tomogram(const OperatorMatrix& rho, const TomographicSet& set) {
  if (rho.dim() != set.dim())
    throw DimensionError("operator dim " + std::to_string(rho.dim()) + " does not match set dim " +
                         std::to_string(set.dim()));
  Tomogram t;
  t.set_digest = set.digest();
  t.values.reserve(set.size());
  for (const auto& p : set.projectors()) t.values.push_back((p.vector.adjoint() * rho.entries() * p.vector)(0).real());
  return t;
}

std::vector<Complex> expectation_values(const OperatorMatrix& a, const TomographicSet& set) {
  if (a.dim() != set.dim()) throw DimensionError("operator dim does not match set dim");
  std::vector<Complex> out;
  out.reserve(set.size());
  for (const auto& p : set.projectors()) out.push_back((p.vector.adjoint() * a.entries() * p.vector)(0));
  return out;
}

GramKernel gram_schmidt(const TomographicSet& set) {
  const auto rep = is_minimal_tomographic_set(set);
  if (!rep.minimal)
    throw RankDeficientError("projectors are linearly dependent, numerical rank " + std::to_string(rep.rank), rep.rank);
  const int n2 = set.dim() * set.dim();
  const CMatrix p = projector_vector_matrix(set).transpose();  // column k = |P_k>
  CMatrix v(n2, n2);
  CMatrix gamma = CMatrix::Zero(n2, n2);
  for (int j = 0; j < n2; ++j) {
    CVector w = p.col(j);
    CVector g = CVector::Zero(n2);
    g(j) = 1.0;
    for (int pass = 0; pass < 2; ++pass)
      for (int i = 0; i < j; ++i) {
        const Complex c = v.col(i).dot(w);
        w -= c * v.col(i);
        g -= c * gamma.row(i).transpose();
      }
    const double nrm = w.norm();
    v.col(j) = w / nrm;
    gamma.row(j) = g.transpose() / nrm;
  }
  GramKernel k;
  k.gamma = gamma;
  k.set_digest = set.digest();
  const CMatrix coeff = gamma.adjoint() * gamma;  // (l, k) -> sum_j conj(g_jl) g_jk
  for (int l = 0; l < n2; ++l) {
    CMatrix kl = CMatrix::Zero(set.dim(), set.dim());
    for (int q = 0; q < n2; ++q) kl += coeff(l, q) * set[static_cast<std::size_t>(q)].matrix.entries();
    k.duals.emplace_back(std::move(kl));
  }
  return k;
}

double identity_check(const GramKernel& kernel, const TomographicSet& set) {
  const int n2 = set.dim() * set.dim();
  if (kernel.duals.size() != set.size()) throw DimensionError("kernel and set sizes differ");
  CMatrix m = -CMatrix::Identity(n2, n2);
  for (std::size_t l = 0; l < set.size(); ++l) {
    if (kernel.duals[l].dim() != set.dim()) throw DimensionError("kernel and set dimensions differ");
    m += mat_to_vec(kernel.duals[l]) * mat_to_vec(set[l].matrix).adjoint();
  }
  return m.norm();
}

OperatorMatrix reconstruct(std::span<const Complex> values, const GramKernel& kernel) {
  if (values.size() != kernel.duals.size())
    throw DimensionError("tomogram has " + std::to_string(values.size()) + " values, kernel has " +
                         std::to_string(kernel.duals.size()) + " duals");
  if (values.empty()) throw DimensionError("empty kernel");
  const int n = kernel.duals.front().dim();
  CMatrix a = CMatrix::Zero(n, n);
  for (std::size_t l = 0; l < values.size(); ++l) a += values[l] * kernel.duals[l].entries();
  return OperatorMatrix(std::move(a));
}

OperatorMatrix reconstruct(const Tomogram& tom, const GramKernel& kernel) {
  if (tom.set_digest != kernel.set_digest) throw DimensionError("tomogram and kernel come from different sets");
  std::vector<Complex> v(tom.values.begin(), tom.values.end());
  return reconstruct(std::span<const Complex>(v), kernel);
}

TomographicSet set_from_unitary_family(const RankOneProjector& p0, std::span<const OperatorMatrix> unitaries) {
  std::vector<RankOneProjector> ps;
  for (std::size_t k = 0; k < unitaries.size(); ++k) {
    const auto& u = unitaries[k];
    if (u.dim() != p0.dim()) throw DimensionError("unitary " + std::to_string(k) + " has the wrong dimension");
    const double dev = (u.entries().adjoint() * u.entries() - CMatrix::Identity(u.dim(), u.dim())).cwiseAbs().maxCoeff();
    if (dev > kUnitaryTol) throw DomainError("unitary " + std::to_string(k) + " is not unitary (deviation " + std::to_string(dev) + ")");
    ps.push_back(projector_from_vector(u.entries() * p0.vector));
  }
  return TomographicSet(p0.dim(), std::move(ps));
}

static void require_su2_form(const OperatorMatrix& u, const char* name) {
  if (u.dim() != 2) throw DimensionError(std::string(name) + " must be 2x2");
  const CMatrix& m = u.entries();
  const double dev = (m.adjoint() * m - CMatrix::Identity(2, 2)).cwiseAbs().maxCoeff();
  if (dev > kUnitaryTol) throw DomainError(std::string(name) + " is not unitary");
  if (std::abs(m(1, 0) + std::conj(m(0, 1))) > kUnitaryTol || std::abs(m(1, 1) - std::conj(m(0, 0))) > kUnitaryTol)
    throw DomainError(std::string(name) + " is not of the form [[a, b], [-b*, a*]]");
}

SkewReport skew_pair_check(const OperatorMatrix& u1, const OperatorMatrix& u2) {
  require_su2_form(u1, "U1");
  require_su2_form(u2, "U2");
  const Complex a1 = u1(0, 0), b1 = u1(0, 1), a2 = u2(0, 0), b2 = u2(0, 1);
  SkewReport r;
  r.determinant_value = (a1 * b1 * std::conj(a2) * std::conj(b2)).imag();
  r.skew = std::abs(r.determinant_value) > kSkewTol;
  return r;
}

TomographicSet skew_pair_set(const OperatorMatrix& u1, const OperatorMatrix& u2) {
  require_su2_form(u1, "U1");
  require_su2_form(u2, "U2");
  std::vector<RankOneProjector> ps;
  ps.push_back(projector_from_vector(CVector::Unit(2, 0)));
  ps.push_back(projector_from_vector(CVector::Unit(2, 1)));
  for (const auto* u : {&u1, &u2})
    for (int c = 0; c < 2; ++c) ps.push_back(projector_from_vector(u->entries().col(c)));
  return TomographicSet(2, std::move(ps), {"e1", "e2", "U1e1", "U1e2", "U2e1", "U2e2"});
}

double povm_check(const TomographicSet& set, std::span<const double> weights) {
  if (weights.size() != set.size())
    throw DimensionError("weight count " + std::to_string(weights.size()) + " differs from set size " +
                         std::to_string(set.size()));
  CMatrix m = -CMatrix::Identity(set.dim(), set.dim());
  for (std::size_t k = 0; k < set.size(); ++k) m += weights[k] * set[k].matrix.entries();
  return m.norm();
}

TomographicSet random_minimal_set(int n, Rng& rng, double max_condition) {
  if (n < 1) throw DimensionError("dimension must be positive");
  for (int attempt = 0; attempt < 1000; ++attempt) {
    std::vector<RankOneProjector> ps;
    for (int k = 0; k < n * n; ++k) ps.push_back(projector_from_vector(random_unit_vector(n, rng)));
    TomographicSet s(n, std::move(ps));
    const auto rep = projector_rank(s);
    if (rep.minimal && rep.condition_number < max_condition) return s;
  }
  throw Error("could not sample a well-conditioned minimal set");
}

TomographicSet basis_set(int n) {
  std::vector<RankOneProjector> ps;
  for (int k = 0; k < n; ++k) ps.push_back(projector_from_vector(CVector::Unit(n, k)));
  return TomographicSet(n, std::move(ps));
}

}  // namespace tomo
