#include "z2cross/star_algebra.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "z2cross/random.hpp"

namespace z2cross {

struct StarAlgebra::Data {
  Eigen::Index ambient_dim = 0;
  std::vector<CMatrix> basis;
  std::vector<CMatrix> gens;
  std::string name;
  TolerancePolicy tol;

  static StarAlgebra make(Eigen::Index d, std::vector<CMatrix> basis,
                          std::vector<CMatrix> gens, std::string name,
                          const TolerancePolicy& tol) {
    auto data = std::make_shared<Data>();
    data->ambient_dim = d;
    data->basis = std::move(basis);
    data->gens = std::move(gens);
    data->name = std::move(name);
    data->tol = tol;
    return StarAlgebra(std::move(data));
  }
};

StarAlgebra::StarAlgebra(std::shared_ptr<const Data> data) : data_(std::move(data)) {}

Eigen::Index StarAlgebra::ambient_dim() const { return data_->ambient_dim; }
Eigen::Index StarAlgebra::dim() const {
  return static_cast<Eigen::Index>(data_->basis.size());
}
const std::vector<CMatrix>& StarAlgebra::basis() const { return data_->basis; }
const std::vector<CMatrix>& StarAlgebra::generators() const { return data_->gens; }
const std::string& StarAlgebra::name() const { return data_->name; }
const TolerancePolicy& StarAlgebra::tol() const { return data_->tol; }

CMatrix StarAlgebra::identity() const {
  return CMatrix::Identity(data_->ambient_dim, data_->ambient_dim);
}

bool StarAlgebra::is_full() const {
  return dim() == data_->ambient_dim * data_->ambient_dim;
}

CVector StarAlgebra::coordinates(const CMatrix& x) const {
  CVector c(dim());
  for (Eigen::Index i = 0; i < dim(); ++i) c(i) = hs_inner(data_->basis[i], x);
  return c;
}

CMatrix StarAlgebra::project(const CMatrix& x) const {
  CMatrix p = CMatrix::Zero(x.rows(), x.cols());
  for (const CMatrix& b : data_->basis) p += hs_inner(b, x) * b;
  return p;
}

bool StarAlgebra::contains(const CMatrix& x) const {
  if (x.rows() != data_->ambient_dim || x.cols() != data_->ambient_dim) return false;
  return data_->tol.is_zero(hs_norm(x - project(x)), hs_norm(x));
}

namespace {

void check_square(Eigen::Index d, const std::vector<CMatrix>& mats, const char* who) {
  for (const CMatrix& m : mats)
    if (m.rows() != d || m.cols() != d)
      throw std::invalid_argument(std::string(who) +
                                  ": matrices must be square of the ambient dimension");
}

double residual_against(const std::vector<CMatrix>& basis, const CMatrix& x) {
  CMatrix r = x;
  for (const CMatrix& b : basis) r -= hs_inner(b, x) * b;
  return hs_norm(r);
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

// Orthonormal basis of the range of a projection, as isometry columns.
CMatrix range_isometry(const CMatrix& proj) {
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

int compare_rounded(const CMatrix& a, const CMatrix& b) {
  for (Eigen::Index j = 0; j < a.cols(); ++j)
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      const double re_a = std::round(a(i, j).real() * 1e6);
      const double re_b = std::round(b(i, j).real() * 1e6);
      if (re_a != re_b) return re_a < re_b ? -1 : 1;
      const double im_a = std::round(a(i, j).imag() * 1e6);
      const double im_b = std::round(b(i, j).imag() * 1e6);
      if (im_a != im_b) return im_a < im_b ? -1 : 1;
    }
  return 0;
}

int compare_images(const std::vector<CMatrix>& a, const std::vector<CMatrix>& b) {
  for (std::size_t k = 0; k < std::min(a.size(), b.size()); ++k) {
    if (a[k].size() != b[k].size()) return a[k].size() < b[k].size() ? -1 : 1;
    if (int c = compare_rounded(a[k], b[k])) return c;
  }
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  return 0;
}

}  // namespace

StarAlgebra StarAlgebra::generate(Eigen::Index ambient_dim,
                                  const std::vector<CMatrix>& generators,
                                  std::string name, const TolerancePolicy& tol) {
  if (ambient_dim <= 0)
    throw std::invalid_argument("generate: ambient dimension must be positive");
  check_square(ambient_dim, generators, "generate");

  std::vector<CMatrix> pool;
  pool.push_back(CMatrix::Identity(ambient_dim, ambient_dim));
  for (const CMatrix& g : generators) {
    pool.push_back(g);
    pool.push_back(g.adjoint());
  }
  std::vector<CMatrix> basis = hs_orthonormalize(pool, tol);

  bool stable = false;
  for (Eigen::Index round = 0; round <= ambient_dim * ambient_dim; ++round) {
    std::vector<CMatrix> candidates = basis;
    for (const CMatrix& x : basis)
      for (const CMatrix& y : basis) candidates.push_back(x * y);
    for (const CMatrix& x : basis) candidates.push_back(x.adjoint());
    std::vector<CMatrix> next = hs_orthonormalize(candidates, tol);
    const bool grew = next.size() != basis.size();
    basis = std::move(next);
    if (!grew) {
      stable = true;
      break;
    }
  }
  if (!stable)
    throw ToleranceError("generate: closure dimension failed to stabilize");

  std::vector<CMatrix> gens = pool;  // identity, generators and adjoints
  return Data::make(ambient_dim, std::move(basis), std::move(gens),
                               std::move(name), tol);
}

StarAlgebra StarAlgebra::from_span(Eigen::Index ambient_dim,
                                   const std::vector<CMatrix>& spanning,
                                   std::string name, const TolerancePolicy& tol) {
  if (ambient_dim <= 0)
    throw std::invalid_argument("from_span: ambient dimension must be positive");
  check_square(ambient_dim, spanning, "from_span");
  std::vector<CMatrix> basis = hs_orthonormalize(spanning, tol);

  const CMatrix id = CMatrix::Identity(ambient_dim, ambient_dim);
  if (!tol.is_zero(residual_against(basis, id), hs_norm(id)))
    throw std::invalid_argument("algebra '" + name + "': identity not in span");
  for (const CMatrix& x : basis) {
    if (!tol.is_zero(residual_against(basis, x.adjoint()), 1.0))
      throw std::invalid_argument("algebra '" + name + "': span not closed under adjoints");
    for (const CMatrix& y : basis) {
      const CMatrix p = x * y;
      if (!tol.is_zero(residual_against(basis, p), 1.0 + hs_norm(p)))
        throw std::invalid_argument("algebra '" + name + "': span not closed under products");
    }
  }
  std::vector<CMatrix> gens = basis;
  return Data::make(ambient_dim, std::move(basis), std::move(gens),
                               std::move(name), tol);
}

StarAlgebra StarAlgebra::closed_span(Eigen::Index ambient_dim,
                                     const std::vector<CMatrix>& spanning,
                                     std::vector<CMatrix> generators, std::string name,
                                     const TolerancePolicy& tol) {
  if (ambient_dim <= 0)
    throw std::invalid_argument("closed_span: ambient dimension must be positive");
  check_square(ambient_dim, spanning, "closed_span");
  check_square(ambient_dim, generators, "closed_span");
  std::vector<CMatrix> basis = hs_orthonormalize(spanning, tol);
  for (const CMatrix& g : generators)
    if (!tol.is_zero(residual_against(basis, g), hs_norm(g)))
      throw std::invalid_argument("closed_span: generator outside the span");
  if (generators.empty()) generators = basis;
  return Data::make(ambient_dim, std::move(basis), std::move(generators),
                    std::move(name), tol);
}

StarAlgebra StarAlgebra::full_matrix(Eigen::Index ambient_dim, std::string name) {
  if (ambient_dim <= 0)
    throw std::invalid_argument("full_matrix: ambient dimension must be positive");
  const Eigen::Index d = ambient_dim;
  std::vector<CMatrix> units;
  units.reserve(d * d);
  for (Eigen::Index j = 0; j < d; ++j)
    for (Eigen::Index i = 0; i < d; ++i) {
      CMatrix e = CMatrix::Zero(d, d);
      e(i, j) = 1.0;
      units.push_back(std::move(e));
    }
  // the shift and its adjoint generate the full algebra
  CMatrix shift = CMatrix::Zero(d, d);
  for (Eigen::Index i = 0; i + 1 < d; ++i) shift(i, i + 1) = 1.0;
  std::vector<CMatrix> gens{CMatrix::Identity(d, d)};
  if (d > 1) {
    gens.push_back(shift);
    gens.push_back(shift.adjoint());
  }
  return Data::make(d, std::move(units), std::move(gens),
                               std::move(name), TolerancePolicy::defaults());
}

namespace {

StarHom unchecked_hom(StarAlgebra source, StarAlgebra target,
                      std::vector<CMatrix> images) {
  return StarHom{std::move(source), std::move(target), std::move(images)};
}

CMatrix hom_value(const StarHom& hom, const CVector& coords) {
  CMatrix out = CMatrix::Zero(hom.target.ambient_dim(), hom.target.ambient_dim());
  for (Eigen::Index i = 0; i < coords.size(); ++i) out += coords(i) * hom.images[i];
  return out;
}

}  // namespace

StarHom make_star_hom(const StarAlgebra& source, const StarAlgebra& target,
                      std::vector<CMatrix> images) {
  const TolerancePolicy& tol = source.tol();
  if (static_cast<Eigen::Index>(images.size()) != source.dim())
    throw std::invalid_argument("star hom: one image per source basis element required");
  for (const CMatrix& im : images) {
    if (im.rows() != target.ambient_dim() || im.cols() != target.ambient_dim())
      throw std::invalid_argument("star hom: image shape does not match the target");
    if (!target.is_full() && !target.contains(im))
      throw std::invalid_argument("star hom: image outside the target algebra");
  }
  StarHom hom = unchecked_hom(source, target, std::move(images));

  const CMatrix unit = hom_value(hom, source.coordinates(source.identity()));
  if (!tol.is_zero(hs_norm(unit - target.identity()), hs_norm(target.identity())))
    throw std::invalid_argument("star hom: not unital");

  const auto& basis = source.basis();
  for (Eigen::Index i = 0; i < source.dim(); ++i) {
    const CMatrix lhs = hom_value(hom, source.coordinates(basis[i].adjoint()));
    if (!tol.is_zero(hs_norm(lhs - hom.images[i].adjoint()), 1.0 + hs_norm(hom.images[i])))
      throw std::invalid_argument("star hom: not adjoint-preserving");
  }
  for (Eigen::Index i = 0; i < source.dim(); ++i)
    for (Eigen::Index j = 0; j < source.dim(); ++j) {
      const CMatrix lhs = hom_value(hom, source.coordinates(basis[i] * basis[j]));
      const CMatrix rhs = hom.images[i] * hom.images[j];
      if (!tol.is_zero(hs_norm(lhs - rhs),
                       1.0 + hs_norm(hom.images[i]) * hs_norm(hom.images[j])))
        throw std::invalid_argument("star hom: not multiplicative");
    }
  return hom;
}

StarHom identity_rep(const StarAlgebra& alg) {
  return unchecked_hom(alg, StarAlgebra::full_matrix(alg.ambient_dim()), alg.basis());
}

CMatrix apply(const StarHom& hom, const CMatrix& x) {
  const CVector coords = hom.source.coordinates(x);
  CMatrix back = CMatrix::Zero(x.rows(), x.cols());
  for (Eigen::Index i = 0; i < coords.size(); ++i)
    back += coords(i) * hom.source.basis()[i];
  if (!hom.source.tol().is_zero(hs_norm(x - back), hs_norm(x)))
    throw std::invalid_argument("apply: element outside the source span");
  return hom_value(hom, coords);
}

StarHom compose(const StarHom& outer, const StarHom& inner) {
  if (inner.target.ambient_dim() != outer.source.ambient_dim())
    throw std::invalid_argument("compose: incompatible algebras");
  std::vector<CMatrix> images;
  images.reserve(inner.images.size());
  for (const CMatrix& im : inner.images) images.push_back(z2cross::apply(outer, im));
  return unchecked_hom(inner.source, outer.target, std::move(images));
}

StarHom restrict_hom(const StarHom& hom, const StarAlgebra& subalgebra) {
  if (subalgebra.ambient_dim() != hom.source.ambient_dim())
    throw std::invalid_argument("restrict: subalgebra lives in a different ambient space");
  std::vector<CMatrix> images;
  images.reserve(subalgebra.dim());
  for (const CMatrix& b : subalgebra.basis()) images.push_back(z2cross::apply(hom, b));
  return unchecked_hom(subalgebra, hom.target, std::move(images));
}

Eigen::Index carrier_dim(const StarHom& rep) { return rep.target.ambient_dim(); }

StarAlgebra commutant_of(const std::vector<CMatrix>& operators,
                         Eigen::Index ambient_dim, const TolerancePolicy& tol,
                         std::string name) {
  check_square(ambient_dim, operators, "commutant");
  if (operators.empty())
    return StarAlgebra::full_matrix(ambient_dim, std::move(name));
  const Eigen::Index d = ambient_dim;
  const Eigen::Index d2 = d * d;
  const CMatrix id = CMatrix::Identity(d, d);

  // constrain against adjoints as well so the result is *-closed even for
  // operator sets that are not
  std::vector<CMatrix> ops = operators;
  for (const CMatrix& op : operators) {
    const CMatrix adj = op.adjoint();
    bool present = false;
    for (const CMatrix& other : ops)
      if (tol.is_zero(hs_norm(adj - other), hs_norm(adj))) {
        present = true;
        break;
      }
    if (!present) ops.push_back(adj);
  }

  CMatrix stacked(static_cast<Eigen::Index>(ops.size()) * d2, d2);
  for (std::size_t k = 0; k < ops.size(); ++k)
    stacked.middleRows(static_cast<Eigen::Index>(k) * d2, d2) =
        kron(ops[k].transpose(), id) - kron(id, ops[k]);

  std::vector<CMatrix> mats;
  for (const CMatrix& v : nullspace(stacked, tol))
    mats.push_back(unvec(v.col(0), d, d));
  // closed by definition: products and adjoints of commuting elements commute
  return StarAlgebra::closed_span(d, mats, {}, std::move(name), tol);
}

StarAlgebra commutant(const StarAlgebra& alg) {
  return commutant_of(alg.generators(), alg.ambient_dim(), alg.tol(),
                      alg.name().empty() ? "commutant" : alg.name() + " commutant");
}

StarAlgebra center(const StarAlgebra& alg) {
  const Eigen::Index d = alg.ambient_dim();
  const Eigen::Index d2 = d * d;
  const std::vector<CMatrix>& basis = alg.basis();
  const std::vector<CMatrix>& gens = alg.generators();
  const Eigen::Index r = alg.dim();

  // an element of the algebra is central iff it commutes with every
  // generator, so the center is the kernel of the commutator map expressed
  // in the algebra's own coordinates
  CMatrix stacked(static_cast<Eigen::Index>(gens.size()) * d2, r);
  for (std::size_t k = 0; k < gens.size(); ++k)
    for (Eigen::Index j = 0; j < r; ++j)
      stacked.block(static_cast<Eigen::Index>(k) * d2, j, d2, 1) =
          vec(basis[static_cast<std::size_t>(j)] * gens[k] -
              gens[k] * basis[static_cast<std::size_t>(j)]);

  std::vector<CMatrix> mats;
  for (const CMatrix& c : nullspace(stacked, alg.tol())) {
    CMatrix z = CMatrix::Zero(d, d);
    for (Eigen::Index j = 0; j < r; ++j)
      z += c(j, 0) * basis[static_cast<std::size_t>(j)];
    mats.push_back(std::move(z));
  }
  // a *-closed unital subalgebra: closed under adjoints and products
  return StarAlgebra::closed_span(d, mats, {},
                                  alg.name().empty() ? "center" : alg.name() + " center",
                                  alg.tol());
}

namespace {

CMatrix random_selfadjoint_combination(Rng& rng, const std::vector<CMatrix>& basis) {
  CMatrix w = CMatrix::Zero(basis.front().rows(), basis.front().cols());
  for (const CMatrix& b : basis) w += rng.cgauss() * b;
  return 0.5 * (w + w.adjoint());
}

std::vector<CMatrix> compressed_span(const CMatrix& p, const std::vector<CMatrix>& basis,
                                     const TolerancePolicy& tol) {
  std::vector<CMatrix> cut;
  cut.reserve(basis.size());
  for (const CMatrix& b : basis) cut.push_back(p * b * p);
  return hs_orthonormalize(cut, tol);
}

}  // namespace

std::vector<CMatrix> minimal_central_projections(const StarAlgebra& alg,
                                                 std::uint64_t seed) {
  const TolerancePolicy& tol = alg.tol();
  const StarAlgebra zc = center(alg);
  if (zc.dim() == 1) return {alg.identity()};

  struct Leaf {
    CMatrix proj;
    std::vector<CMatrix> zbasis;  // compressed center, orthonormal
  };
  std::vector<Leaf> open{{alg.identity(), zc.basis()}};
  std::vector<CMatrix> done;

  const Eigen::Index max_rounds = zc.dim() + 1;
  Rng rng(seed);
  for (Eigen::Index round = 0; round < max_rounds && !open.empty(); ++round) {
    std::vector<Leaf> next;
    for (Leaf& leaf : open) {
      if (leaf.zbasis.size() <= 1) {
        done.push_back(std::move(leaf.proj));
        continue;
      }
      const CMatrix z = random_selfadjoint_combination(rng, leaf.zbasis);
      if (tol.is_zero(hs_norm(z), 1.0)) {
        next.push_back(std::move(leaf));
        continue;
      }
      std::size_t children = 0;
      for (const SpectralPair& pair : herm_spectral(z, tol)) {
        const CMatrix child = pair.projection * leaf.proj;
        if (!(std::real(child.trace()) >= 0.5)) continue;
        next.push_back({child, compressed_span(child, leaf.zbasis, tol)});
        ++children;
      }
      if (children == 0) next.push_back(std::move(leaf));
      // leaves carry mutually orthogonal nonzero projections, so their
      // count can never exceed the number of minimal central projections
      if (next.size() + done.size() > static_cast<std::size_t>(zc.dim()))
        throw ToleranceError(
            "minimal central projections: refinement produced more blocks "
            "than the center admits");
    }
    open = std::move(next);
  }

  for (Leaf& leaf : open) {
    if (leaf.zbasis.size() <= 1)
      done.push_back(std::move(leaf.proj));
    else
      throw ToleranceError("minimal central projections: refinement failed to separate the center");
  }

  std::sort(done.begin(), done.end(), [](const CMatrix& a, const CMatrix& b) {
    const double ta = std::real(a.trace());
    const double tb = std::real(b.trace());
    if (std::round(ta) != std::round(tb)) return ta > tb;
    return compare_rounded(a, b) < 0;
  });
  return done;
}

namespace {

// A minimal projection of the algebra spanned by `comm_basis` dominated by
// the central projection `p`. Seeded retries guard degenerate draws.
CMatrix minimal_projection_under(const CMatrix& p, const std::vector<CMatrix>& comm_basis,
                                 const TolerancePolicy& tol, Rng& rng) {
  const std::vector<CMatrix> local = compressed_span(p, comm_basis, tol);
  if (local.size() == 1) return p;
  for (int attempt = 0; attempt < 16; ++attempt) {
    const CMatrix z = random_selfadjoint_combination(rng, local);
    if (tol.is_zero(hs_norm(z), 1.0)) continue;
    for (const SpectralPair& pair : herm_spectral(z, tol)) {
      const CMatrix q = pair.projection * p;
      if (!(std::real(q.trace()) >= 0.5)) continue;
      if (compressed_span(q, comm_basis, tol).size() == 1) return q;
    }
  }
  throw ToleranceError("decompose: failed to isolate a minimal projection of the commutant");
}

}  // namespace

IrrepDecomposition decompose_rep(const StarHom& rep, std::uint64_t seed) {
  if (!rep.target.is_full())
    throw std::invalid_argument(
        "decompose: representation target must be the full matrix algebra on its carrier");
  const TolerancePolicy& tol = rep.source.tol();
  const Eigen::Index k = carrier_dim(rep);

  std::vector<CMatrix> image_gens;
  for (const CMatrix& g : rep.source.generators()) image_gens.push_back(z2cross::apply(rep, g));
  const StarAlgebra comm = commutant_of(image_gens, k, tol);

  IrrepDecomposition out;
  if (comm.dim() == 1) {
    out.classes.push_back({rep, 1});
    out.block_dims.push_back(k);
    return out;
  }

  const auto isotypic = minimal_central_projections(comm, split_seed(seed, 1));
  Rng rng(split_seed(seed, 2));
  for (const CMatrix& p : isotypic) {
    const CMatrix q = minimal_projection_under(p, comm.basis(), tol, rng);
    const CMatrix s = range_isometry(q);
    const Eigen::Index r = s.cols();

    std::vector<CMatrix> sub_images;
    sub_images.reserve(rep.source.dim());
    for (const CMatrix& im : rep.images)
      sub_images.push_back(s.adjoint() * im * s);
    StarHom sub = make_star_hom(rep.source, StarAlgebra::full_matrix(r),
                                std::move(sub_images));

    const int mult = static_cast<int>(intertwiners(sub, rep).size());
    if (std::llround(std::real(p.trace())) != static_cast<long long>(mult) * r)
      throw ToleranceError("decompose: isotypic rank does not match multiplicity");
    out.classes.push_back({std::move(sub), mult});
  }

  std::sort(out.classes.begin(), out.classes.end(),
            [](const IrrepClass& a, const IrrepClass& b) {
              const Eigen::Index da = carrier_dim(a.irrep);
              const Eigen::Index db = carrier_dim(b.irrep);
              if (da != db) return da > db;
              return compare_images(a.irrep.images, b.irrep.images) < 0;
            });
  for (const IrrepClass& cls : out.classes)
    out.block_dims.push_back(carrier_dim(cls.irrep));
  return out;
}

bool same_span(const StarAlgebra& a, const StarAlgebra& b) {
  if (&a.basis() == &b.basis()) return true;
  if (a.ambient_dim() != b.ambient_dim() || a.dim() != b.dim()) return false;
  for (const CMatrix& x : a.basis())
    if (!b.contains(x)) return false;
  return true;
}

bool is_irreducible(const StarHom& rep) {
  std::vector<CMatrix> image_gens;
  for (const CMatrix& g : rep.source.generators()) image_gens.push_back(z2cross::apply(rep, g));
  return commutant_of(image_gens, carrier_dim(rep), rep.source.tol()).dim() == 1;
}

std::vector<CMatrix> intertwiners(const StarHom& rep1, const StarHom& rep2) {
  if (!same_span(rep1.source, rep2.source))
    throw std::invalid_argument("intertwiners: representations must share their source");
  const TolerancePolicy& tol = rep1.source.tol();
  const Eigen::Index k1 = carrier_dim(rep1);
  const Eigen::Index k2 = carrier_dim(rep2);
  const Eigen::Index unknowns = k1 * k2;
  const CMatrix id1 = CMatrix::Identity(k1, k1);
  const CMatrix id2 = CMatrix::Identity(k2, k2);

  const auto& gens = rep1.source.generators();
  CMatrix stacked(static_cast<Eigen::Index>(gens.size()) * unknowns, unknowns);
  for (std::size_t g = 0; g < gens.size(); ++g) {
    const CMatrix a = z2cross::apply(rep1, gens[g]);
    const CMatrix b = z2cross::apply(rep2, gens[g]);
    stacked.middleRows(static_cast<Eigen::Index>(g) * unknowns, unknowns) =
        kron(a.transpose(), id2) - kron(id1, b);
  }

  std::vector<CMatrix> result;
  for (const CMatrix& v : nullspace(stacked, tol))
    result.push_back(unvec(v.col(0), k2, k1));
  return result;
}

namespace {

bool witness_checks(const CMatrix& u, const StarHom& rep1, const StarHom& rep2,
                    const TolerancePolicy& tol) {
  const Eigen::Index k = u.rows();
  if (!tol.is_zero(hs_norm(u * u.adjoint() - CMatrix::Identity(k, k)),
                   std::sqrt(static_cast<double>(k))))
    return false;
  for (const CMatrix& g : rep1.source.generators()) {
    const CMatrix a = z2cross::apply(rep1, g);
    const CMatrix b = z2cross::apply(rep2, g);
    if (!tol.is_zero(hs_norm(u * a - b * u), 1.0 + hs_norm(a)))
      return false;
  }
  return true;
}

std::optional<CMatrix> unitary_witness(const std::vector<CMatrix>& space,
                                       const StarHom& rep1, const StarHom& rep2,
                                       const TolerancePolicy& tol) {
  if (space.empty() || carrier_dim(rep1) != carrier_dim(rep2)) return std::nullopt;
  Rng rng(kDefaultSeed);
  for (int attempt = 0; attempt < 4; ++attempt) {
    CMatrix t = CMatrix::Zero(space.front().rows(), space.front().cols());
    if (attempt == 0) {
      t = space.front();
    } else {
      for (const CMatrix& b : space) t += rng.cgauss() * b;
    }
    if (hs_norm(t) < tol.abs_tol) continue;
    const CMatrix u = polar_unitary(t);
    if (witness_checks(u, rep1, rep2, tol)) return u;
  }
  return std::nullopt;
}

}  // namespace

EquivalenceResult unitarily_equivalent(const StarHom& rep1, const StarHom& rep2,
                                       const TolerancePolicy& tol) {
  if (!same_span(rep1.source, rep2.source))
    throw std::invalid_argument("equivalence: representations must share their source");

  const bool irr1 = is_irreducible(rep1);
  const bool irr2 = is_irreducible(rep2);
  if (irr1 != irr2) return {false, std::nullopt};

  if (irr1) {
    if (carrier_dim(rep1) != carrier_dim(rep2)) return {false, std::nullopt};
    const auto space = intertwiners(rep1, rep2);
    if (space.empty()) return {false, std::nullopt};
    return {true, unitary_witness(space, rep1, rep2, tol)};
  }

  IrrepDecomposition d1 = decompose_rep(rep1);
  IrrepDecomposition d2 = decompose_rep(rep2);
  if (d1.classes.size() != d2.classes.size()) return {false, std::nullopt};
  std::vector<bool> used(d2.classes.size(), false);
  for (const IrrepClass& cls : d1.classes) {
    bool matched = false;
    for (std::size_t j = 0; j < d2.classes.size(); ++j) {
      if (used[j]) continue;
      const IrrepClass& other = d2.classes[j];
      if (carrier_dim(cls.irrep) != carrier_dim(other.irrep)) continue;
      if (cls.multiplicity != other.multiplicity) continue;
      if (intertwiners(cls.irrep, other.irrep).empty()) continue;
      used[j] = true;
      matched = true;
      break;
    }
    if (!matched) return {false, std::nullopt};
  }
  return {true, unitary_witness(intertwiners(rep1, rep2), rep1, rep2, tol)};
}

}  // namespace z2cross
