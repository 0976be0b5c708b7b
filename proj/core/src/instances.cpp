#include "z2cross/instances.hpp"

#include <Eigen/Dense>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "z2cross/random.hpp"

namespace z2cross {
namespace {

// A direct sum of full matrix blocks conjugated into general position.
// The stored basis lists the conjugated matrix units block by block,
// row-major within each block, so callers can address basis element
// (block, i, j) positionally.
struct BlockAlgebra {
  StarAlgebra alg;
  std::vector<int> sizes;
  std::vector<Eigen::Index> offsets;  // start row of each block
  CMatrix conjugator;
  Eigen::Index dim = 0;

  // Position of the unit E^b_{ij} in the basis list.
  Eigen::Index unit_index(int b, int i, int j) const {
    Eigen::Index pos = 0;
    for (int q = 0; q < b; ++q) pos += Eigen::Index(sizes[q]) * sizes[q];
    return pos + Eigen::Index(i) * sizes[b] + j;
  }
};

BlockAlgebra build_block_algebra(const std::vector<int>& sizes,
                                 const CMatrix& conjugator,
                                 const std::string& name) {
  Eigen::Index d = 0;
  std::vector<Eigen::Index> offsets;
  for (int k : sizes) {
    offsets.push_back(d);
    d += k;
  }
  const CMatrix& v = conjugator;

  std::vector<CMatrix> spanning;
  for (std::size_t b = 0; b < sizes.size(); ++b)
    for (int i = 0; i < sizes[b]; ++i)
      for (int j = 0; j < sizes[b]; ++j) {
        CMatrix e = CMatrix::Zero(d, d);
        e(offsets[b] + i, offsets[b] + j) = 1.0;
        spanning.push_back(v * e * v.adjoint());
      }

  // Generators: the identity, a summed nilpotent shift whose block
  // pieces together with the block projections generate every full
  // block, the shift's adjoint, and the block projections themselves.
  std::vector<CMatrix> gens;
  gens.push_back(CMatrix::Identity(d, d));
  CMatrix shift = CMatrix::Zero(d, d);
  bool nontrivial_shift = false;
  for (std::size_t b = 0; b < sizes.size(); ++b)
    for (int i = 0; i + 1 < sizes[b]; ++i) {
      shift(offsets[b] + i, offsets[b] + i + 1) = 1.0;
      nontrivial_shift = true;
    }
  if (nontrivial_shift) {
    CMatrix t = v * shift * v.adjoint();
    gens.push_back(t);
    gens.push_back(t.adjoint());
  }
  for (std::size_t b = 0; b < sizes.size(); ++b) {
    CMatrix p = CMatrix::Zero(d, d);
    for (int i = 0; i < sizes[b]; ++i) p(offsets[b] + i, offsets[b] + i) = 1.0;
    gens.push_back(v * p * v.adjoint());
  }

  BlockAlgebra out{
      StarAlgebra::closed_span(d, spanning, gens, name),
      sizes,
      offsets,
      conjugator,
      d,
  };
  return out;
}

Eigen::Index total_dim(const std::vector<int>& sizes) {
  Eigen::Index d = 0;
  for (int k : sizes) d += k;
  return d;
}

// Permutation exchanging the coordinate ranges of two equal-size blocks.
CMatrix swap_permutation(const BlockAlgebra& ba, int bi, int bj) {
  CMatrix p = CMatrix::Identity(ba.dim, ba.dim);
  int k = ba.sizes[bi];
  for (int t = 0; t < k; ++t) {
    p(ba.offsets[bi] + t, ba.offsets[bi] + t) = 0.0;
    p(ba.offsets[bj] + t, ba.offsets[bj] + t) = 0.0;
    p(ba.offsets[bi] + t, ba.offsets[bj] + t) = 1.0;
    p(ba.offsets[bj] + t, ba.offsets[bi] + t) = 1.0;
  }
  return p;
}

std::string format_instance(const std::vector<int>& sizes, int si, int sj,
                            const std::vector<int>& mults,
                            std::uint64_t seed) {
  std::ostringstream os;
  os << "blocks=[";
  for (std::size_t b = 0; b < sizes.size(); ++b)
    os << (b ? "," : "") << sizes[b];
  os << "] swap=";
  if (si >= 0)
    os << "(" << si << "," << sj << ")";
  else
    os << "none";
  os << " mults=[";
  for (std::size_t b = 0; b < mults.size(); ++b)
    os << (b ? "," : "") << mults[b];
  os << "] seed=0x" << std::hex << seed;
  return os.str();
}

}  // namespace

RandomInstance random_instance(std::uint64_t seed, int max_block) {
  if (max_block < 1)
    throw std::invalid_argument("random_instance: max_block must be >= 1");
  Rng rng(seed);

  int nblocks = 1 + int(rng.integer(3));
  std::vector<int> sizes(nblocks);
  for (int& k : sizes) k = 1 + int(rng.integer(std::uint64_t(max_block)));

  BlockAlgebra ba = build_block_algebra(
      sizes, Rng(split_seed(seed, 1)).unitary(total_dim(sizes)),
      "random block algebra");

  // Pick an equal-size block pair to swap, when one exists.
  std::vector<std::pair<int, int>> candidates;
  for (int i = 0; i < nblocks; ++i)
    for (int j = i + 1; j < nblocks; ++j)
      if (sizes[i] == sizes[j]) candidates.emplace_back(i, j);
  int si = -1, sj = -1;
  if (!candidates.empty() && rng.integer(2) == 0) {
    auto pick = candidates[rng.integer(candidates.size())];
    si = pick.first;
    sj = pick.second;
  }

  // Inner twist: on a swapped pair the two block unitaries are mutually
  // adjoint, elsewhere each block carries an order-two unitary; both
  // choices make the composite square to the identity on the algebra.
  CMatrix twist = CMatrix::Zero(ba.dim, ba.dim);
  for (int b = 0; b < nblocks; ++b) {
    CMatrix u;
    if (b == si)
      u = rng.unitary(sizes[b]);
    else if (b == sj)
      u = twist.block(ba.offsets[si], ba.offsets[si], sizes[si], sizes[si])
              .adjoint();
    else
      u = rng.order_two_unitary(sizes[b]);
    twist.block(ba.offsets[b], ba.offsets[b], sizes[b], sizes[b]) = u;
  }
  CMatrix carrier = twist;
  if (si >= 0) carrier = twist * swap_permutation(ba, si, sj);
  const CMatrix& v = ba.conjugator;
  CMatrix w = v * carrier * v.adjoint();

  std::vector<CMatrix> images;
  images.reserve(ba.alg.generators().size());
  for (const CMatrix& g : ba.alg.generators())
    images.push_back(w * g * w.adjoint());
  OrderTwoAutomorphism sigma = make_automorphism(ba.alg, images);

  // Representation: each block with multiplicity 0..2, at least one
  // copy overall, conjugated by a fresh Haar unitary.  The carrier is
  // capped so induced-representation commutants stay cheap.
  Eigen::Index cap = std::max<Eigen::Index>(9, max_block);
  std::vector<int> mults(nblocks);
  Eigen::Index rep_dim = 0;
  for (;;) {
    rep_dim = 0;
    for (int b = 0; b < nblocks; ++b) {
      mults[b] = int(rng.integer(3));
      rep_dim += Eigen::Index(mults[b]) * sizes[b];
    }
    if (rep_dim >= 1 && rep_dim <= cap) break;
  }

  CMatrix u = Rng(split_seed(seed, 2)).unitary(rep_dim);
  std::vector<CMatrix> rep_images;
  rep_images.reserve(std::size_t(ba.alg.dim()));
  for (int b = 0; b < nblocks; ++b) {
    Eigen::Index block_start = 0;
    for (int q = 0; q < b; ++q) block_start += Eigen::Index(mults[q]) * sizes[q];
    for (int i = 0; i < sizes[b]; ++i)
      for (int j = 0; j < sizes[b]; ++j) {
        CMatrix im = CMatrix::Zero(rep_dim, rep_dim);
        for (int c = 0; c < mults[b]; ++c) {
          Eigen::Index off = block_start + Eigen::Index(c) * sizes[b];
          im(off + i, off + j) = 1.0;
        }
        rep_images.push_back(u * im * u.adjoint());
      }
  }
  Representation rep{ba.alg, StarAlgebra::full_matrix(rep_dim),
                     std::move(rep_images)};

  return RandomInstance{
      ba.alg,
      std::move(sigma),
      std::move(rep),
      sizes,
      mults,
      si,
      sj,
      format_instance(sizes, si, sj, mults, seed),
  };
}

namespace {

// Images of every basis unit of `source` under the block embedding with
// multiplicity matrix m (rows: target blocks, cols: source blocks).
// Within each target block the copies are laid out source block by
// source block, copy by copy.
std::vector<CMatrix> embedding_images(const BlockAlgebra& source,
                                      const BlockAlgebra& target,
                                      const std::vector<std::vector<int>>& m) {
  std::vector<CMatrix> images;
  for (std::size_t q = 0; q < source.sizes.size(); ++q) {
    int k = source.sizes[q];
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) {
        CMatrix im = CMatrix::Zero(target.dim, target.dim);
        for (std::size_t p = 0; p < target.sizes.size(); ++p) {
          Eigen::Index off = target.offsets[p];
          for (std::size_t qq = 0; qq < source.sizes.size(); ++qq)
            for (int c = 0; c < m[p][qq]; ++c) {
              if (qq == q) im(off + i, off + j) = 1.0;
              off += source.sizes[qq];
            }
        }
        images.push_back(target.conjugator * im *
                         target.conjugator.adjoint());
      }
  }
  return images;
}

// Multiplicity rows with weighted sums in [1, cap], so the implied
// target block sizes stay bounded and the embedding is unital.
std::vector<std::vector<int>> multiplicity_matrix(Rng& rng, int rows,
                                                  const std::vector<int>& sizes,
                                                  int cap) {
  std::vector<std::vector<int>> m(std::size_t(rows),
                                  std::vector<int>(sizes.size()));
  for (auto& row : m) {
    for (;;) {
      int weighted = 0;
      for (std::size_t q = 0; q < sizes.size(); ++q) {
        row[q] = int(rng.integer(3));
        weighted += row[q] * sizes[q];
      }
      if (weighted >= 1 && weighted <= cap) break;
    }
  }
  return m;
}

std::vector<int> implied_sizes(const std::vector<std::vector<int>>& m,
                               const std::vector<int>& sizes) {
  std::vector<int> out;
  for (const auto& row : m) {
    int s = 0;
    for (std::size_t q = 0; q < sizes.size(); ++q) s += row[q] * sizes[q];
    out.push_back(s);
  }
  return out;
}

}  // namespace

ComposablePair random_composable_pair(std::uint64_t seed) {
  Rng rng(seed);

  int ma = 1 + int(rng.integer(2));
  std::vector<int> sizes_a(std::size_t(ma), 0);
  for (int& k : sizes_a) k = 1 + int(rng.integer(2));

  int mb = 1 + int(rng.integer(2));
  auto m_ab = multiplicity_matrix(rng, mb, sizes_a, 4);
  std::vector<int> sizes_b = implied_sizes(m_ab, sizes_a);

  int mc = 1 + int(rng.integer(2));
  auto m_bc = multiplicity_matrix(rng, mc, sizes_b, 6);
  std::vector<int> sizes_c = implied_sizes(m_bc, sizes_b);

  BlockAlgebra a = build_block_algebra(
      sizes_a, Rng(split_seed(seed, 1)).unitary(total_dim(sizes_a)),
      "pair source");
  BlockAlgebra b = build_block_algebra(
      sizes_b, Rng(split_seed(seed, 2)).unitary(total_dim(sizes_b)),
      "pair middle");
  BlockAlgebra c = build_block_algebra(
      sizes_c, Rng(split_seed(seed, 3)).unitary(total_dim(sizes_c)),
      "pair target");

  StarHom f = make_star_hom(a.alg, b.alg, embedding_images(a, b, m_ab));
  StarHom g = make_star_hom(b.alg, c.alg, embedding_images(b, c, m_bc));
  return ComposablePair{a.alg, b.alg, c.alg, std::move(f), std::move(g)};
}

}  // namespace z2cross
