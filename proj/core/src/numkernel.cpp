#include "z2cross/numkernel.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

namespace z2cross {

namespace {

double env_or(const char* name, double fallback) {
  const char* raw = std::getenv(name);
  if (!raw) return fallback;
  try {
    double v = std::stod(raw);
    if (v > 0) return v;
  } catch (const std::exception&) {
  }
  return fallback;
}

}  // namespace

TolerancePolicy TolerancePolicy::defaults() {
  static const TolerancePolicy policy{env_or("Z2CROSS_ABS_TOL", 1e-10),
                                      env_or("Z2CROSS_REL_TOL", 1e-8)};
  return policy;
}

Complex hs_inner(const CMatrix& x, const CMatrix& y) {
  return (x.adjoint() * y).trace();
}

double hs_norm(const CMatrix& x) { return x.norm(); }

CVector vec(const CMatrix& m) {
  return Eigen::Map<const CVector>(m.data(), m.size());
}

CMatrix unvec(const CVector& v, Eigen::Index rows, Eigen::Index cols) {
  return Eigen::Map<const CMatrix>(v.data(), rows, cols);
}

std::vector<CMatrix> hs_orthonormalize(const std::vector<CMatrix>& vectors,
                                       const TolerancePolicy& tol) {
  std::vector<CMatrix> basis;
  if (vectors.empty()) return basis;
  const Eigen::Index rows = vectors.front().rows();
  const Eigen::Index cols = vectors.front().cols();
  for (const CMatrix& v : vectors) {
    if (v.rows() != rows || v.cols() != cols)
      throw std::invalid_argument("hs_orthonormalize: inputs must share one shape");
  }

  double scale = 0.0;
  for (const CMatrix& v : vectors) scale = std::max(scale, hs_norm(v));

  for (const CMatrix& v : vectors) {
    CMatrix w = v;
    // two projection passes keep the result orthonormal to working precision
    for (int pass = 0; pass < 2; ++pass) {
      for (const CMatrix& b : basis) w -= hs_inner(b, w) * b;
    }
    const double norm = hs_norm(w);
    if (tol.is_zero(norm, scale)) continue;
    basis.push_back(w / norm);
  }
  return basis;
}

std::vector<CMatrix> nullspace(const CMatrix& m, const TolerancePolicy& tol) {
  std::vector<CMatrix> result;
  const Eigen::Index n = m.cols();
  if (n == 0) return result;
  if (m.rows() == 0) {
    for (Eigen::Index j = 0; j < n; ++j) {
      CMatrix e = CMatrix::Zero(n, 1);
      e(j, 0) = 1.0;
      result.push_back(e);
    }
    return result;
  }
  if (!m.allFinite())
    throw ToleranceError("nullspace: matrix has non-finite entries");

  // The kernel of M equals the small-eigenvalue space of M^H M. Squaring
  // the spectrum loses precision, so the eigenvalue cut is loose and every
  // candidate is confirmed against the direct residual ||Mv||.
  CMatrix gram = CMatrix::Zero(n, n);
  gram.selfadjointView<Eigen::Lower>().rankUpdate(m.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> es(gram);
  const double sigma_max = std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
  const double cutoff = tol.threshold(sigma_max);
  const double candidate = std::max(cutoff, 1e-4 * sigma_max);
  for (Eigen::Index j = 0; j < n; ++j) {
    const double sigma = std::sqrt(std::max(0.0, es.eigenvalues()(j)));
    if (sigma > candidate) continue;
    CVector v = es.eigenvectors().col(j);
    if ((m * v).norm() <= cutoff) result.push_back(v);
  }
  return result;
}

std::vector<SpectralPair> herm_spectral(const CMatrix& m,
                                        const TolerancePolicy& tol) {
  if (m.rows() != m.cols())
    throw std::invalid_argument("herm_spectral: matrix must be square");
  if (!m.allFinite())
    throw ToleranceError("herm_spectral: matrix has non-finite entries");
  const double scale = hs_norm(m);
  if (hs_norm(m - m.adjoint()) > tol.threshold(scale))
    throw std::invalid_argument("not hermitian");

  Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (m + m.adjoint()));
  const auto& evals = es.eigenvalues();
  const Eigen::Index n = m.rows();
  const double norm = std::max(std::abs(evals(0)), std::abs(evals(n - 1)));
  const double gap = tol.threshold(norm);

  std::vector<SpectralPair> pairs;
  Eigen::Index begin = 0;
  while (begin < n) {
    Eigen::Index end = begin + 1;
    while (end < n && evals(end) - evals(end - 1) <= gap) ++end;
    CMatrix proj = CMatrix::Zero(n, n);
    double lambda = 0.0;
    for (Eigen::Index j = begin; j < end; ++j) {
      proj += es.eigenvectors().col(j) * es.eigenvectors().col(j).adjoint();
      lambda += evals(j);
    }
    pairs.push_back({lambda / static_cast<double>(end - begin), std::move(proj)});
    begin = end;
  }
  return pairs;
}

CMatrix polar_unitary(const CMatrix& m) {
  if (m.rows() != m.cols())
    throw std::invalid_argument("polar_unitary: matrix must be square");
  Eigen::JacobiSVD<CMatrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return svd.matrixU() * svd.matrixV().adjoint();
}

double spectral_norm(const CMatrix& m) {
  if (m.size() == 0) return 0.0;
  // sqrt of the top eigenvalue of the smaller Gram matrix
  const CMatrix gram = m.rows() >= m.cols() ? CMatrix(m.adjoint() * m)
                                            : CMatrix(m * m.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (gram + gram.adjoint()),
                                            Eigen::EigenvaluesOnly);
  return std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
}

}  // namespace z2cross
