#include "z2cross/crossed.hpp"

#include <cmath>
#include <deque>
#include <utility>

namespace z2cross {

namespace {

// Closure of generator/image pairs under products and adjoints, kept as an
// orthonormal list of firsts with shadow images reduced by the same
// coefficients. A pair whose first collapses into the span must have a
// collapsing shadow as well, otherwise the images are inconsistent.
struct PairedClosure {
  std::vector<CMatrix> firsts;
  std::vector<CMatrix> shadows;
};

PairedClosure paired_closure(const StarAlgebra& alg,
                             const std::vector<CMatrix>& generator_images) {
  const TolerancePolicy& tol = alg.tol();
  PairedClosure out;
  std::deque<std::pair<CMatrix, CMatrix>> queue;
  queue.emplace_back(alg.identity(), alg.identity());
  for (std::size_t i = 0; i < generator_images.size(); ++i)
    queue.emplace_back(alg.generators()[i], generator_images[i]);

  while (!queue.empty()) {
    auto [x, y] = std::move(queue.front());
    queue.pop_front();
    const double scale = std::max(hs_norm(x), 1.0);
    for (int pass = 0; pass < 2; ++pass)
      for (std::size_t k = 0; k < out.firsts.size(); ++k) {
        const Complex c = hs_inner(out.firsts[k], x);
        x -= c * out.firsts[k];
        y -= c * out.shadows[k];
      }
    const double r = hs_norm(x);
    if (r <= tol.threshold(scale)) {
      if (!tol.is_zero(hs_norm(y), scale))
        throw std::invalid_argument(
            "automorphism: generator images do not extend to a well-defined linear map");
      continue;
    }
    out.firsts.push_back(x / r);
    out.shadows.push_back(y / r);
    const std::size_t t = out.firsts.size() - 1;
    queue.emplace_back(out.firsts[t].adjoint(), out.shadows[t].adjoint());
    for (std::size_t k = 0; k <= t; ++k) {
      queue.emplace_back(out.firsts[t] * out.firsts[k], out.shadows[t] * out.shadows[k]);
      if (k != t)
        queue.emplace_back(out.firsts[k] * out.firsts[t], out.shadows[k] * out.shadows[t]);
    }
  }
  return out;
}

}  // namespace

OrderTwoAutomorphism make_automorphism(const StarAlgebra& alg,
                                       const std::vector<CMatrix>& generator_images) {
  const TolerancePolicy& tol = alg.tol();
  if (generator_images.size() != alg.generators().size())
    throw std::invalid_argument("automorphism: one image per generator required");
  for (const CMatrix& im : generator_images) {
    if (im.rows() != alg.ambient_dim() || im.cols() != alg.ambient_dim())
      throw std::invalid_argument("automorphism: image shape does not match the algebra");
    if (!alg.contains(im))
      throw std::invalid_argument("automorphism: image outside the algebra");
  }

  const PairedClosure closure = paired_closure(alg, generator_images);
  if (static_cast<Eigen::Index>(closure.firsts.size()) != alg.dim())
    throw std::invalid_argument("automorphism: generators do not span the algebra");

  std::vector<CMatrix> basis_images;
  basis_images.reserve(alg.basis().size());
  for (const CMatrix& b : alg.basis()) {
    CMatrix im = CMatrix::Zero(alg.ambient_dim(), alg.ambient_dim());
    for (std::size_t k = 0; k < closure.firsts.size(); ++k)
      im += hs_inner(closure.firsts[k], b) * closure.shadows[k];
    basis_images.push_back(std::move(im));
  }

  StarHom action = make_star_hom(alg, alg, std::move(basis_images));
  for (Eigen::Index i = 0; i < alg.dim(); ++i) {
    const CMatrix twice = z2cross::apply(action, action.images[i]);
    if (!tol.is_zero(hs_norm(twice - alg.basis()[i]), 1.0))
      throw std::invalid_argument("automorphism: not order-two (square differs from the identity map)");
  }
  return OrderTwoAutomorphism{alg, std::move(action)};
}

CMatrix twist(const OrderTwoAutomorphism& sigma, const CMatrix& x) {
  return z2cross::apply(sigma.action, x);
}

Grading grading(const OrderTwoAutomorphism& sigma) {
  const StarAlgebra& alg = sigma.algebra;
  std::vector<CMatrix> fixed, odd;
  for (Eigen::Index i = 0; i < alg.dim(); ++i) {
    const CMatrix& b = alg.basis()[i];
    const CMatrix tb = sigma.action.images[i];
    fixed.push_back(0.5 * (b + tb));
    odd.push_back(0.5 * (b - tb));
  }
  Grading g{hs_orthonormalize(fixed, alg.tol()), hs_orthonormalize(odd, alg.tol())};
  if (static_cast<Eigen::Index>(g.fixed_basis.size() + g.odd_basis.size()) != alg.dim())
    throw ToleranceError("grading: eigenspace dimensions do not sum to the algebra dimension");
  return g;
}

namespace {

CMatrix doubled(const CMatrix& a, const CMatrix& ta) {
  const Eigen::Index d = a.rows();
  CMatrix out = CMatrix::Zero(2 * d, 2 * d);
  out.topLeftCorner(d, d) = a;
  out.bottomRightCorner(d, d) = ta;
  return out;
}

CMatrix block_flip(Eigen::Index d) {
  CMatrix w = CMatrix::Zero(2 * d, 2 * d);
  w.topRightCorner(d, d) = CMatrix::Identity(d, d);
  w.bottomLeftCorner(d, d) = CMatrix::Identity(d, d);
  return w;
}

}  // namespace

CrossedProduct crossed_product(const OrderTwoAutomorphism& sigma) {
  const StarAlgebra& alg = sigma.algebra;
  const TolerancePolicy& tol = alg.tol();
  const Eigen::Index d = alg.ambient_dim();
  const CMatrix w = block_flip(d);

  std::vector<CMatrix> embedded;
  embedded.reserve(alg.dim());
  for (Eigen::Index i = 0; i < alg.dim(); ++i)
    embedded.push_back(doubled(alg.basis()[i], sigma.action.images[i]));

  std::vector<CMatrix> spanning = embedded;
  for (const CMatrix& e : embedded) spanning.push_back(e * w);

  std::vector<CMatrix> gens;
  for (const CMatrix& g : alg.generators()) gens.push_back(doubled(g, twist(sigma, g)));
  gens.push_back(w);

  const std::string base_name = alg.name().empty() ? std::string("A") : alg.name();
  StarAlgebra crossed = StarAlgebra::closed_span(2 * d, spanning, gens,
                                                 base_name + " x Z2", tol);
  if (crossed.dim() != 2 * alg.dim())
    throw ToleranceError("crossed product: span dimension is not twice the base dimension");

  StarHom embed{alg, crossed, std::move(embedded)};
  for (const CMatrix& g : alg.generators()) {
    const CMatrix lhs = w * z2cross::apply(embed, g) * w;
    const CMatrix rhs = z2cross::apply(embed, twist(sigma, g));
    if (!tol.is_zero(hs_norm(lhs - rhs), 1.0 + hs_norm(g)))
      throw ToleranceError("crossed product: covariance identity drifted");
  }
  return CrossedProduct{std::move(crossed), alg, sigma, std::move(embed), w};
}

CrossedCoordinates split_element(const CrossedProduct& cp, const CMatrix& x) {
  const Eigen::Index d = cp.base.ambient_dim();
  if (x.rows() != 2 * d || x.cols() != 2 * d)
    throw std::invalid_argument("split: element shape does not match the crossed product");
  CrossedCoordinates c{x.topLeftCorner(d, d), x.topRightCorner(d, d)};
  const CMatrix rebuilt =
      doubled(c.base_part, twist(cp.sigma, c.base_part)) +
      doubled(c.twisted_part, twist(cp.sigma, c.twisted_part)) * cp.symmetry;
  if (!cp.base.tol().is_zero(hs_norm(rebuilt - x), hs_norm(x)))
    throw std::invalid_argument("split: element not in the crossed-product span");
  return c;
}

Representation induce(const CrossedProduct& cp, const Representation& pi) {
  if (!same_span(pi.source, cp.base))
    throw std::invalid_argument("induce: representation source differs from the base algebra");
  const TolerancePolicy& tol = cp.base.tol();
  const Eigen::Index d = cp.base.ambient_dim();
  const Eigen::Index k = carrier_dim(pi);

  std::vector<CMatrix> images;
  images.reserve(cp.algebra.dim());
  for (const CMatrix& c : cp.algebra.basis()) {
    CMatrix im(2 * k, 2 * k);
    im.topLeftCorner(k, k) = z2cross::apply(pi, c.topLeftCorner(d, d).eval());
    im.topRightCorner(k, k) = z2cross::apply(pi, c.topRightCorner(d, d).eval());
    im.bottomLeftCorner(k, k) = z2cross::apply(pi, c.bottomLeftCorner(d, d).eval());
    im.bottomRightCorner(k, k) = z2cross::apply(pi, c.bottomRightCorner(d, d).eval());
    images.push_back(std::move(im));
  }
  Representation tilde{cp.algebra, StarAlgebra::full_matrix(2 * k), std::move(images)};

  const CMatrix flip = block_flip(k);
  if (!tol.is_zero(hs_norm(z2cross::apply(tilde, cp.symmetry) - flip), hs_norm(flip)))
    throw ToleranceError("induce: symmetry image is not the block flip");
  if (!tol.is_zero(hs_norm(z2cross::apply(tilde, CMatrix::Identity(2 * d, 2 * d)) -
                           CMatrix::Identity(2 * k, 2 * k)),
                   std::sqrt(2.0 * static_cast<double>(k))))
    throw ToleranceError("induce: representation is not unital");
  for (const CMatrix& g : cp.base.generators()) {
    const CMatrix embedded = z2cross::apply(tilde, z2cross::apply(cp.embed, g));
    const CMatrix twisted = z2cross::apply(tilde, z2cross::apply(cp.embed, twist(cp.sigma, g)));
    if (!tol.is_zero(hs_norm(flip * embedded * flip - twisted), 1.0 + hs_norm(g)))
      throw ToleranceError("induce: covariance identity drifted");
  }
  return tilde;
}

InductionCriteria induction_criteria(const CrossedProduct& cp, const Representation& pi) {
  const TolerancePolicy& tol = cp.base.tol();
  InductionCriteria out;
  out.induced_irreducible = is_irreducible(induce(cp, pi));

  const StarHom pi_sigma = compose(pi, cp.sigma.action);
  const bool base_irreducible = is_irreducible(pi);
  out.twist_inequivalent =
      base_irreducible && !unitarily_equivalent(pi, pi_sigma).equivalent;

  if (!base_irreducible) return out;  // third criterion left unevaluated

  const auto space = intertwiners(pi, pi_sigma);
  if (space.empty()) {
    out.no_order_two_intertwiner = true;
    return out;
  }
  // An intertwining unitary exists; normalize its phase so the square is
  // the identity. The square of the polar unitary commutes with the
  // irreducible pi, hence is a unit scalar.
  const Eigen::Index k = carrier_dim(pi);
  const CMatrix u0 = polar_unitary(space.front());
  const CMatrix sq = u0 * u0;
  const Complex c = sq.trace() / static_cast<double>(k);
  if (!tol.is_zero(hs_norm(sq - c * CMatrix::Identity(k, k)),
                   std::sqrt(static_cast<double>(k))) ||
      !tol.is_zero(std::abs(std::abs(c) - 1.0), 1.0))
    throw ToleranceError("induction criteria: intertwiner square is not scalar");
  const CMatrix u = u0 / std::sqrt(c);
  if (!tol.is_zero(hs_norm(u * u - CMatrix::Identity(k, k)),
                   std::sqrt(static_cast<double>(k))))
    throw ToleranceError("induction criteria: phase normalization failed");
  for (const CMatrix& g : cp.base.generators()) {
    const CMatrix a = z2cross::apply(pi, g);
    const CMatrix b = z2cross::apply(pi_sigma, g);
    if (!tol.is_zero(hs_norm(u * a - b * u), 1.0 + hs_norm(a)))
      throw ToleranceError("induction criteria: normalized unitary stopped intertwining");
  }
  out.no_order_two_intertwiner = false;
  return out;
}

namespace {

bool injective_on_span(const std::vector<CMatrix>& images, const TolerancePolicy& tol) {
  if (images.empty()) return true;
  const Eigen::Index rows = images.front().size();
  CMatrix m(rows, static_cast<Eigen::Index>(images.size()));
  for (std::size_t i = 0; i < images.size(); ++i)
    m.col(static_cast<Eigen::Index>(i)) = vec(images[i]);
  // rank via the Gram spectrum: singular values are sqrt of its eigenvalues
  const CMatrix gram = m.adjoint() * m;
  Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (gram + gram.adjoint()),
                                            Eigen::EigenvaluesOnly);
  const double sigma_max = std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
    if (std::sqrt(std::max(0.0, es.eigenvalues()(i))) > tol.threshold(sigma_max))
      ++rank;
  return rank == m.cols();
}

}  // namespace

FaithfulnessReport faithfulness_check(const CrossedProduct& cp, const Representation& pi) {
  const TolerancePolicy& tol = cp.base.tol();
  FaithfulnessReport out;
  out.base_faithful = injective_on_span(pi.images, tol);
  out.induced_faithful = injective_on_span(induce(cp, pi).images, tol);
  out.implication_holds = !out.base_faithful || out.induced_faithful;
  return out;
}

}  // namespace z2cross
