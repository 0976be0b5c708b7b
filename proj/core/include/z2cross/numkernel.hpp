#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <vector>

namespace z2cross {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

// Thrown when a numerical computation cannot meet the active tolerance
// (covariance residuals, failed refinements, spectral guards).
struct ToleranceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// The single approximate-zero policy used by every comparison in the
// library: x is zero relative to scale s iff |x| <= abs_tol + rel_tol*s.
struct TolerancePolicy {
  double abs_tol = 1e-10;
  double rel_tol = 1e-8;

  double threshold(double scale) const { return abs_tol + rel_tol * scale; }
  bool is_zero(double value, double scale) const {
    return std::abs(value) <= threshold(scale);
  }

  // Library defaults, overridable through the Z2CROSS_ABS_TOL and
  // Z2CROSS_REL_TOL environment variables (read once per process).
  static TolerancePolicy defaults();
};

// Hilbert-Schmidt inner product trace(x^* y) and the induced norm.
Complex hs_inner(const CMatrix& x, const CMatrix& y);
double hs_norm(const CMatrix& x);

// Column-major flattening; hs_inner(x, y) == vec(x).dot(vec(y)).
CVector vec(const CMatrix& m);
CMatrix unvec(const CVector& v, Eigen::Index rows, Eigen::Index cols);

// Orthonormal basis (HS inner product) of the span of the inputs.
// Vectors numerically zero after projection are dropped. All inputs must
// share one shape.
std::vector<CMatrix> hs_orthonormalize(
    const std::vector<CMatrix>& vectors,
    const TolerancePolicy& tol = TolerancePolicy::defaults());

// Orthonormal basis of {v : Mv ~ 0}, rank decided by singular values
// against tol scaled by the largest singular value. Basis vectors are
// returned as column matrices.
std::vector<CMatrix> nullspace(
    const CMatrix& m, const TolerancePolicy& tol = TolerancePolicy::defaults());

struct SpectralPair {
  double eigenvalue;
  CMatrix projection;
};

// Spectral decomposition of a self-adjoint matrix with eigenvalues
// clustered within tolerance: sum lambda_i P_i = M, sum P_i = I,
// P_i P_j = delta_ij P_i. Non-self-adjoint input raises "not hermitian".
std::vector<SpectralPair> herm_spectral(
    const CMatrix& m, const TolerancePolicy& tol = TolerancePolicy::defaults());

// Unitary factor of the polar decomposition (via SVD); input must be square.
CMatrix polar_unitary(const CMatrix& m);

double spectral_norm(const CMatrix& m);

}  // namespace z2cross
