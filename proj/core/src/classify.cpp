#include "z2cross/classify.hpp"

#include <cmath>
#include <utility>

namespace z2cross {

const char* to_string(RepKind kind) {
  switch (kind) {
    case RepKind::Type1: return "Type1";
    case RepKind::Type2Split: return "Type2Split";
    case RepKind::Type2Induced: return "Type2Induced";
  }
  return "unknown";
}

namespace {

CMatrix projection_isometry(const CMatrix& proj) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (proj + proj.adjoint()));
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
    if (es.eigenvalues()(i) > 0.5) ++rank;
  CMatrix s(proj.rows(), rank);
  Eigen::Index col = 0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
    if (es.eigenvalues()(i) > 0.5) s.col(col++) = es.eigenvectors().col(i);
  return s;
}

struct SymmetrySpectrum {
  bool scalar = false;
  int scalar_sign = 0;
  CMatrix proj_plus;
  CMatrix proj_minus;
};

SymmetrySpectrum symmetry_spectrum(const CrossedProduct& cp, const Representation& pi) {
  const TolerancePolicy& tol = cp.base.tol();
  const CMatrix w = z2cross::apply(pi, cp.symmetry);
  const auto pairs = herm_spectral(w, tol);
  SymmetrySpectrum out;
  if (pairs.size() == 1) {
    const double ev = pairs.front().eigenvalue;
    if (std::abs(std::abs(ev) - 1.0) > tol.threshold(1.0))
      throw ToleranceError("classification: scalar symmetry image is not a sign");
    out.scalar = true;
    out.scalar_sign = ev > 0 ? 1 : -1;
    return out;
  }
  if (pairs.size() != 2)
    throw ToleranceError("classification: symmetry image spectrum is not contained in {-1, 1}");
  for (const SpectralPair& pair : pairs) {
    if (std::abs(std::abs(pair.eigenvalue) - 1.0) > tol.threshold(1.0))
      throw ToleranceError("classification: symmetry image spectrum is not contained in {-1, 1}");
    if (pair.eigenvalue > 0)
      out.proj_plus = pair.projection;
    else
      out.proj_minus = pair.projection;
  }
  return out;
}

CornerData build_corners(const CrossedProduct& cp, const Representation& pi,
                         const SymmetrySpectrum& spectrum) {
  const TolerancePolicy& tol = cp.base.tol();
  const StarAlgebra& base = cp.base;
  const Grading g = grading(cp.sigma);

  const StarAlgebra fixed = StarAlgebra::closed_span(
      base.ambient_dim(), g.fixed_basis, {},
      (base.name().empty() ? std::string("A") : base.name()) + " fixed part",
      tol);

  const CMatrix s_plus = projection_isometry(spectrum.proj_plus);
  const CMatrix s_minus = projection_isometry(spectrum.proj_minus);

  // restriction of pi to the embedded copy of the base
  std::vector<CMatrix> base_images;
  base_images.reserve(base.dim());
  for (const CMatrix& b : base.basis())
    base_images.push_back(z2cross::apply(pi, z2cross::apply(cp.embed, b)));

  std::vector<CMatrix> beta_images, gamma_images;
  beta_images.reserve(base.dim());
  gamma_images.reserve(base.dim());
  for (const CMatrix& im : base_images) {
    beta_images.push_back(s_plus.adjoint() * im * s_minus);
    gamma_images.push_back(s_minus.adjoint() * im * s_plus);
  }

  // vanishing identities: diagonal corners kill the odd part, off-diagonal
  // corners kill the fixed part
  auto base_coords_image = [&](const CMatrix& x) {
    const CVector c = base.coordinates(x);
    CMatrix out = CMatrix::Zero(carrier_dim(pi), carrier_dim(pi));
    for (Eigen::Index i = 0; i < c.size(); ++i) out += c(i) * base_images[i];
    return out;
  };
  for (const CMatrix& f : g.fixed_basis) {
    const CMatrix im = base_coords_image(f);
    if (!tol.is_zero(hs_norm(s_plus.adjoint() * im * s_minus), 1.0) ||
        !tol.is_zero(hs_norm(s_minus.adjoint() * im * s_plus), 1.0))
      throw ToleranceError("corner maps: off-diagonal corners do not vanish on the fixed part");
  }
  for (const CMatrix& o : g.odd_basis) {
    const CMatrix im = base_coords_image(o);
    if (!tol.is_zero(hs_norm(s_plus.adjoint() * im * s_plus), 1.0) ||
        !tol.is_zero(hs_norm(s_minus.adjoint() * im * s_minus), 1.0))
      throw ToleranceError("corner maps: diagonal corners do not vanish on the odd part");
  }

  std::vector<CMatrix> alpha_images, delta_images;
  alpha_images.reserve(fixed.dim());
  delta_images.reserve(fixed.dim());
  for (const CMatrix& f : fixed.basis()) {
    const CMatrix im = base_coords_image(f);
    alpha_images.push_back(s_plus.adjoint() * im * s_plus);
    delta_images.push_back(s_minus.adjoint() * im * s_minus);
  }
  StarHom alpha = make_star_hom(fixed, StarAlgebra::full_matrix(s_plus.cols()),
                                std::move(alpha_images));
  StarHom delta = make_star_hom(fixed, StarAlgebra::full_matrix(s_minus.cols()),
                                std::move(delta_images));
  if (!is_irreducible(alpha) || !is_irreducible(delta))
    throw ToleranceError("corner maps: corner representations are not irreducible");
  return CornerData{fixed,
                    std::move(alpha),
                    std::move(delta),
                    std::move(beta_images),
                    std::move(gamma_images),
                    spectrum.proj_plus,
                    spectrum.proj_minus};
}

}  // namespace

CornerData corner_maps(const CrossedProduct& cp, const Representation& pi) {
  if (!same_span(pi.source, cp.algebra))
    throw std::invalid_argument("corner maps: representation source differs from the crossed product");
  const SymmetrySpectrum spectrum = symmetry_spectrum(cp, pi);
  if (spectrum.scalar)
    throw std::invalid_argument("no corner decomposition in Type 1");
  return build_corners(cp, pi, spectrum);
}

Classification classify(const CrossedProduct& cp, const Representation& pi) {
  if (!same_span(pi.source, cp.algebra))
    throw std::invalid_argument("classification: representation source differs from the crossed product");
  if (!is_irreducible(pi))
    throw std::invalid_argument("classification requires an irreducible input");
  const TolerancePolicy& tol = cp.base.tol();

  const SymmetrySpectrum spectrum = symmetry_spectrum(cp, pi);
  Classification out;
  if (spectrum.scalar) {
    out.kind = RepKind::Type1;
    out.sign = spectrum.scalar_sign;
    return out;
  }

  out.corners = build_corners(cp, pi, spectrum);
  const CornerData& corners = *out.corners;
  const EquivalenceResult eq = unitarily_equivalent(corners.delta, corners.alpha);
  if (!eq.equivalent) {
    out.kind = RepKind::Type2Split;
    return out;
  }
  out.kind = RepKind::Type2Induced;
  if (!eq.witness)
    throw ToleranceError("classification: equivalent corners without a unitary witness");
  const CMatrix& u = *eq.witness;  // u delta(b) u* = alpha(b)

  // beta'(a) = beta(a) u*, gamma'(a) = u gamma(a); on the odd part the two
  // are proportional by a unit scalar whose square root twists beta' into
  // the inducing representation phi = alpha + eta beta'.
  const StarAlgebra& base = cp.base;
  const Grading g = grading(cp.sigma);
  const CMatrix s_plus = projection_isometry(spectrum.proj_plus);
  const CMatrix s_minus = projection_isometry(spectrum.proj_minus);

  auto base_image = [&](const CMatrix& x) {
    return z2cross::apply(pi, z2cross::apply(cp.embed, x));
  };
  auto beta_prime = [&](const CMatrix& x) {
    return (s_plus.adjoint() * base_image(x) * s_minus * u.adjoint()).eval();
  };
  auto gamma_prime = [&](const CMatrix& x) {
    return (u * s_minus.adjoint() * base_image(x) * s_plus).eval();
  };

  Complex lambda{0.0, 0.0};
  double best = 0.0;
  for (const CMatrix& o : g.odd_basis) {
    const CMatrix bp = beta_prime(o);
    const double w = hs_norm(bp);
    if (w > best) {
      best = w;
      lambda = hs_inner(bp, gamma_prime(o)) / (w * w);
    }
  }
  if (best <= tol.threshold(1.0))
    throw ToleranceError("classification: odd part acts by zero in an induced-type representation");
  for (const CMatrix& o : g.odd_basis) {
    const CMatrix bp = beta_prime(o);
    if (!tol.is_zero(hs_norm(gamma_prime(o) - lambda * bp), 1.0 + hs_norm(bp)))
      throw ToleranceError("classification: linking scalar is not constant on the odd part");
  }
  if (std::abs(std::abs(lambda) - 1.0) > tol.threshold(1.0))
    throw ToleranceError("classification: linking scalar does not have unit modulus");
  const Complex eta = std::sqrt(lambda);
  out.linking_scalar = lambda;

  std::vector<CMatrix> phi_images;
  phi_images.reserve(base.dim());
  for (const CMatrix& b : base.basis()) {
    const CMatrix im = base_image(b);
    phi_images.push_back(s_plus.adjoint() * im * s_plus + eta * beta_prime(b));
  }
  StarHom phi = [&] {
    try {
      return make_star_hom(base, StarAlgebra::full_matrix(s_plus.cols()),
                           std::move(phi_images));
    } catch (const std::invalid_argument& err) {
      throw ToleranceError(std::string("classification: recovered map failed validation: ") +
                           err.what());
    }
  }();

  // the representation induced from phi must be equivalent to the input
  const Representation reinduced = induce(cp, phi);
  if (!unitarily_equivalent(pi, reinduced).equivalent)
    throw ToleranceError("classification: re-induced representation is not equivalent to the input");
  out.inducing_rep = std::move(phi);
  return out;
}

SplittingCheck corollary_splitting(const OrderTwoAutomorphism& sigma,
                                   const Representation& pi) {
  const TolerancePolicy& tol = sigma.algebra.tol();
  if (!same_span(pi.source, sigma.algebra))
    throw std::invalid_argument("splitting check: representation source differs from the algebra");
  if (!is_irreducible(pi))
    throw std::invalid_argument("splitting check requires an irreducible input");
  const Eigen::Index k = carrier_dim(pi);

  SplittingCheck out;
  const StarHom pi_sigma = compose(pi, sigma.action);
  const auto space = intertwiners(pi, pi_sigma);
  if (!space.empty()) {
    const CMatrix u0 = polar_unitary(space.front());
    const CMatrix sq = u0 * u0;
    const Complex c = sq.trace() / static_cast<double>(k);
    if (!tol.is_zero(hs_norm(sq - c * CMatrix::Identity(k, k)),
                     std::sqrt(static_cast<double>(k))))
      throw ToleranceError("splitting check: intertwiner square is not scalar");
    const CMatrix u = u0 / std::sqrt(c);
    const Complex mean = u.trace() / static_cast<double>(k);
    const bool scalar =
        tol.is_zero(hs_norm(u - mean * CMatrix::Identity(k, k)),
                    std::sqrt(static_cast<double>(k)));
    out.lhs = !scalar;
  }

  const Grading g = grading(sigma);
  const StarAlgebra fixed = StarAlgebra::closed_span(
      sigma.algebra.ambient_dim(), g.fixed_basis, {}, "fixed part", tol);
  const IrrepDecomposition dec = decompose_rep(restrict_hom(pi, fixed));
  out.rhs = dec.classes.size() == 2 && dec.classes[0].multiplicity == 1 &&
            dec.classes[1].multiplicity == 1;
  out.agree = out.lhs == out.rhs;
  return out;
}

ZExtension extend_to_z(const CrossedProduct& cp, const Representation& pi2,
                       Complex lambda) {
  const TolerancePolicy& tol = cp.base.tol();
  if (std::abs(std::abs(lambda) - 1.0) > tol.threshold(1.0))
    throw std::invalid_argument("extension: lambda must have unit modulus");
  if (!same_span(pi2.source, cp.algebra))
    throw std::invalid_argument("extension: representation source differs from the crossed product");

  const Eigen::Index k = carrier_dim(pi2);
  ZExtension out{pi2, lambda, lambda * z2cross::apply(pi2, cp.symmetry)};
  for (const CMatrix& gmat : cp.base.generators()) {
    const CMatrix lhs = out.wz_image * z2cross::apply(pi2, z2cross::apply(cp.embed, gmat)) *
                        out.wz_image.adjoint();
    const CMatrix rhs =
        z2cross::apply(pi2, z2cross::apply(cp.embed, twist(cp.sigma, gmat)));
    if (!tol.is_zero(hs_norm(lhs - rhs), 1.0 + hs_norm(gmat)))
      throw ToleranceError("extension: covariance identity drifted");
  }
  const CMatrix sq = out.wz_image * out.wz_image;
  if (!tol.is_zero(hs_norm(sq - lambda * lambda * CMatrix::Identity(k, k)),
                   std::sqrt(static_cast<double>(k))))
    throw ToleranceError("extension: symmetry square identity drifted");
  return out;
}

}  // namespace z2cross
