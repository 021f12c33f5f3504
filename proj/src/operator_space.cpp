#include "tomokit/operator_space.hpp"

#include <cmath>
#include <cstdio>

namespace tomo {

std::string hex_digest(std::uint64_t h) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

OperatorMatrix::OperatorMatrix(CMatrix entries) : m_(std::move(entries)) {
  if (m_.rows() != m_.cols()) throw DimensionError("operator matrix must be square");
  if (m_.rows() == 0) throw DimensionError("operator matrix must have positive dimension");
  hermitian_ = hermiticity_residual() <= kHermitianTol;
}

OperatorMatrix OperatorMatrix::identity(int n) { return OperatorMatrix(CMatrix::Identity(n, n)); }
OperatorMatrix OperatorMatrix::zero(int n) { return OperatorMatrix(CMatrix::Zero(n, n)); }

double OperatorMatrix::hermiticity_residual() const {
  if (m_.size() == 0) return 0.0;
  return (m_ - m_.adjoint()).cwiseAbs().maxCoeff();
}

double OperatorMatrix::max_abs() const { return m_.size() ? m_.cwiseAbs().maxCoeff() : 0.0; }

static void require_same_dim(const OperatorMatrix& a, const OperatorMatrix& b) {
  if (a.dim() != b.dim())
    throw DimensionError("incompatible operands: dim " + std::to_string(a.dim()) + " vs " +
                         std::to_string(b.dim()));
}

OperatorMatrix operator+(const OperatorMatrix& a, const OperatorMatrix& b) {
  require_same_dim(a, b);
  return OperatorMatrix(a.m_ + b.m_);
}
OperatorMatrix operator-(const OperatorMatrix& a, const OperatorMatrix& b) {
  require_same_dim(a, b);
  return OperatorMatrix(a.m_ - b.m_);
}
OperatorMatrix operator*(const OperatorMatrix& a, const OperatorMatrix& b) {
  require_same_dim(a, b);
  return OperatorMatrix(a.m_ * b.m_);
}
OperatorMatrix operator*(Complex c, const OperatorMatrix& a) { return OperatorMatrix(c * a.m_); }

double max_abs_diff(const OperatorMatrix& a, const OperatorMatrix& b) {
  require_same_dim(a, b);
  return (a.entries() - b.entries()).cwiseAbs().maxCoeff();
}

Complex hs_inner(const OperatorMatrix& a, const OperatorMatrix& b) {
  require_same_dim(a, b);
  return (a.entries().adjoint() * b.entries()).trace();
}

CVector mat_to_vec(const OperatorMatrix& a) {
  const int n = a.dim();
  CVector v(n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) v(i * n + j) = a(i, j);
  return v;
}

OperatorMatrix vec_to_mat(const CVector& v) {
  const auto len = v.size();
  const auto n = static_cast<int>(std::llround(std::sqrt(static_cast<double>(len))));
  if (len == 0 || static_cast<Eigen::Index>(n) * n != len)
    throw DimensionError("vector length " + std::to_string(len) + " is not a perfect square");
  CMatrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = v(i * n + j);
  return OperatorMatrix(std::move(m));
}

double generator_norm(int n, int k) { return k == 0 ? n : 2.0; }

std::vector<OperatorMatrix> generator_basis(int n) {
  if (n < 1) throw DimensionError("basis dimension must be positive");
  std::vector<OperatorMatrix> out;
  out.reserve(static_cast<std::size_t>(n) * n);
  out.push_back(OperatorMatrix::identity(n));
  const Complex I(0, 1);
  for (int j = 0; j < n; ++j)
    for (int k = j + 1; k < n; ++k) {
      CMatrix s = CMatrix::Zero(n, n), a = CMatrix::Zero(n, n);
      s(j, k) = s(k, j) = 1.0;
      a(j, k) = -I;
      a(k, j) = I;
      out.emplace_back(std::move(s));
      out.emplace_back(std::move(a));
    }
  for (int l = 1; l < n; ++l) {
    CMatrix d = CMatrix::Zero(n, n);
    const double c = std::sqrt(2.0 / (l * (l + 1.0)));
    for (int j = 0; j < l; ++j) d(j, j) = c;
    d(l, l) = -l * c;
    out.emplace_back(std::move(d));
  }
  return out;
}

CVector hermitian_basis_decompose(const OperatorMatrix& a) {
  const int n = a.dim();
  CVector c(n * n);
  const Complex I(0, 1);
  int idx = 0;
  c(idx++) = a.trace() / static_cast<double>(n);
  for (int j = 0; j < n; ++j)
    for (int k = j + 1; k < n; ++k) {
      c(idx++) = (a(j, k) + a(k, j)) / 2.0;
      c(idx++) = I * (a(j, k) - a(k, j)) / 2.0;
    }
  for (int l = 1; l < n; ++l) {
    const double w = std::sqrt(2.0 / (l * (l + 1.0)));
    Complex s = 0;
    for (int j = 0; j < l; ++j) s += a(j, j);
    c(idx++) = w * (s - static_cast<double>(l) * a(l, l)) / 2.0;
  }
  return c;
}

OperatorMatrix hermitian_basis_compose(const CVector& coeffs) {
  const auto len = coeffs.size();
  const auto n = static_cast<int>(std::llround(std::sqrt(static_cast<double>(len))));
  if (len == 0 || static_cast<Eigen::Index>(n) * n != len)
    throw DimensionError("coefficient count " + std::to_string(len) + " is not a perfect square");
  const Complex I(0, 1);
  CMatrix m = CMatrix::Identity(n, n) * coeffs(0);
  int idx = 1;
  for (int j = 0; j < n; ++j)
    for (int k = j + 1; k < n; ++k) {
      const Complex s = coeffs(idx++), t = coeffs(idx++);
      m(j, k) += s - I * t;
      m(k, j) += s + I * t;
    }
  for (int l = 1; l < n; ++l) {
    const double w = std::sqrt(2.0 / (l * (l + 1.0)));
    const Complex t = coeffs(idx++);
    for (int j = 0; j < l; ++j) m(j, j) += w * t;
    m(l, l) -= static_cast<double>(l) * w * t;
  }
  return OperatorMatrix(std::move(m));
}

RankOneProjector projector_from_vector(const CVector& v) {
  const double norm = v.norm();
  if (v.size() == 0 || !(norm > 0.0)) throw DomainError("projector vector must be nonzero");
  CVector u = v / norm;
  CMatrix p = u * u.adjoint();
  // exact Hermitian symmetry of the cached outer product
  p = (p + p.adjoint()).eval() * 0.5;
  return {std::move(u), OperatorMatrix(std::move(p))};
}

BlochPoint bloch_coordinates(const RankOneProjector& p) {
  const CVector c = hermitian_basis_decompose(p.matrix);
  BlochPoint b;
  b.coeffs.resize(static_cast<std::size_t>(c.size()));
  for (Eigen::Index k = 0; k < c.size(); ++k) b.coeffs[static_cast<std::size_t>(k)] = c(k).real();
  return b;
}

static CMatrix ginibre(int n, Rng& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  CMatrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double re = g(rng);
      const double im = g(rng);
      m(i, j) = Complex(re, im);
    }
  return m;
}

OperatorMatrix random_density_matrix(int n, std::uint64_t seed) {
  if (n < 1) throw DimensionError("density matrix dimension must be positive");
  Rng rng(seed);
  const CMatrix g = ginibre(n, rng);
  CMatrix r = g * g.adjoint();
  r = (r + r.adjoint()).eval() * 0.5;
  r /= r.trace().real();
  return OperatorMatrix(std::move(r));
}

CVector random_unit_vector(int n, Rng& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  CVector v(n);
  for (int i = 0; i < n; ++i) {
    const double re = g(rng);
    const double im = g(rng);
    v(i) = Complex(re, im);
  }
  return v / v.norm();
}

CMatrix random_unitary(int n, Rng& rng) {
  const CMatrix g = ginibre(n, rng);
  Eigen::HouseholderQR<CMatrix> qr(g);
  CMatrix q = qr.householderQ() * CMatrix::Identity(n, n);
  const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int k = 0; k < n; ++k) {
    const Complex d = r(k, k);
    if (std::abs(d) > 0) q.col(k) *= d / std::abs(d);
  }
  return q;
}

OperatorMatrix random_hermitian(int n, Rng& rng) {
  const CMatrix g = ginibre(n, rng);
  return OperatorMatrix((g + g.adjoint()) * 0.5);
}

OperatorMatrix resize_operator(const OperatorMatrix& a, int n) {
  if (n < 1) throw DimensionError("target dimension must be positive");
  CMatrix m = CMatrix::Zero(n, n);
  const int k = std::min(n, a.dim());
  m.topLeftCorner(k, k) = a.entries().topLeftCorner(k, k);
  return OperatorMatrix(std::move(m));
}

static CMatrix psd_sqrt(const CMatrix& h) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es((h + h.adjoint()) * 0.5);
  Eigen::VectorXd ev = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
}

double fidelity(const OperatorMatrix& rho, const OperatorMatrix& sigma) {
  const int n = std::max(rho.dim(), sigma.dim());
  const CMatrix a = resize_operator(rho, n).entries();
  const CMatrix b = resize_operator(sigma, n).entries();
  const CMatrix sa = psd_sqrt(a);
  Eigen::SelfAdjointEigenSolver<CMatrix> bh((b + b.adjoint()) * 0.5);
  const CMatrix bpos =
      bh.eigenvectors() * bh.eigenvalues().cwiseMax(0.0).asDiagonal() * bh.eigenvectors().adjoint();
  const CMatrix m = sa * bpos * sa;
  Eigen::SelfAdjointEigenSolver<CMatrix> es((m + m.adjoint()) * 0.5, Eigen::EigenvaluesOnly);
  const double t = es.eigenvalues().cwiseMax(0.0).cwiseSqrt().sum();
  return t * t;
}

}  // namespace tomo
