#pragma once

#include <cstdint>
#include <random>

#include "z2cross/numkernel.hpp"

namespace z2cross {

// Deterministic stream splitter (splitmix64): per-trial sub-seeds derived
// from a master seed and trial index are independent of evaluation order.
inline std::uint64_t split_seed(std::uint64_t master, std::uint64_t index) {
  std::uint64_t z = master + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double gauss() { return normal_(engine_); }
  Complex cgauss() { return {normal_(engine_), normal_(engine_)}; }
  std::uint64_t integer(std::uint64_t bound) {  // uniform on [0, bound)
    return std::uniform_int_distribution<std::uint64_t>(0, bound - 1)(engine_);
  }
  double uniform() { return uniform_(engine_); }

  CMatrix gaussian_matrix(Eigen::Index rows, Eigen::Index cols) {
    CMatrix m(rows, cols);
    for (Eigen::Index j = 0; j < cols; ++j)
      for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = cgauss();
    return m;
  }

  CMatrix selfadjoint(Eigen::Index n) {
    CMatrix g = gaussian_matrix(n, n);
    return 0.5 * (g + g.adjoint());
  }

  CMatrix unitary(Eigen::Index n) {
    Eigen::HouseholderQR<CMatrix> qr(gaussian_matrix(n, n));
    CMatrix q = qr.householderQ();
    // fix the phase of each column so the distribution is Haar
    CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index j = 0; j < n; ++j) {
      Complex d = r(j, j);
      q.col(j) *= (std::abs(d) > 0) ? d / std::abs(d) : Complex(1, 0);
    }
    return q;
  }

  // Self-adjoint unitary u = V diag(+-1) V^*; u^2 = 1.
  CMatrix order_two_unitary(Eigen::Index n) {
    CMatrix v = unitary(n);
    CVector signs(n);
    for (Eigen::Index i = 0; i < n; ++i)
      signs(i) = (integer(2) == 0) ? 1.0 : -1.0;
    return v * signs.asDiagonal() * v.adjoint();
  }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

}  // namespace z2cross
