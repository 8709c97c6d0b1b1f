#pragma once

#include "adestar/equivariant.hpp"
#include "adestar/linalg.hpp"
#include "adestar/sphere.hpp"

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/KroneckerProduct>

#include <cmath>
#include <vector>

namespace adestar::oracle {

// Dimension of the solution space of F(R(s) x) = rho(s) F(x) rho(s)^-1 for
// all s, over all complex coefficient tuples, solved as a stacked null space
// directly in monomial coordinates.
inline int nullspace_dimension(const FiniteSubgroup& g, const UnitaryIrrep& rho, int degree) {
  const int count = monomial_count(degree);
  const int d = rho.dim;
  const Eigen::Index n = static_cast<Eigen::Index>(count) * d * d;
  std::vector<Mat> blocks;
  for (int s = 0; s < g.order(); ++s) {
    const RMat l = substitution_matrix(so3_matrix(g.matrix(s)), degree);
    // vec(C_m) column-major; rho^-1 C rho -> (rho^T kron rho^*) vec C.
    const Mat ad = Eigen::kroneckerProduct(rho(s).transpose(), rho(s).adjoint()).eval();
    Mat t = Mat::Zero(n, n);
    for (int i = 0; i < count; ++i)
      for (int j = 0; j < count; ++j)
        if (l(i, j) != 0.0) t.block(i * d * d, j * d * d, d * d, d * d) = l(i, j) * ad;
    blocks.push_back(t - Mat::Identity(n, n));
  }
  Mat stacked(n * static_cast<Eigen::Index>(blocks.size()), n);
  for (std::size_t k = 0; k < blocks.size(); ++k) stacked.middleRows(static_cast<Eigen::Index>(k) * n, n) = blocks[k];
  return static_cast<int>(null_space(stacked, 1e-9).cols());
}

// Coefficients of the Molien-type series (1 - t^2) / det(I - t R) averaged
// over Gamma': the invariant harmonic polynomials per degree.
inline std::vector<int> molien_counts(const FiniteSubgroup& g, int degree) {
  std::vector<double> series(static_cast<std::size_t>(degree + 1), 0.0);
  const auto image = so3_image(g);
  for (const auto& e : image) {
    // 1/det(I - tR) = sum_k h_k(eigenvalues) t^k; accumulate via the
    // recursion from the characteristic polynomial coefficients.
    const Eigen::Vector3cd ev = Eigen::EigenSolver<Rot3>(e.matrix).eigenvalues();
    std::vector<cplx> inv(static_cast<std::size_t>(degree + 1), 0.0);
    inv[0] = 1.0;
    for (int k = 0; k < 3; ++k)
      for (int t = 1; t <= degree; ++t) inv[static_cast<std::size_t>(t)] += ev(k) * inv[static_cast<std::size_t>(t - 1)];
    for (int t = 0; t <= degree; ++t) {
      const cplx v = inv[static_cast<std::size_t>(t)] - (t >= 2 ? inv[static_cast<std::size_t>(t - 2)] : 0.0);
      series[static_cast<std::size_t>(t)] += v.real();
    }
  }
  std::vector<int> out;
  for (double s : series) out.push_back(static_cast<int>(std::lround(s / static_cast<double>(image.size()))));
  return out;
}

}  // namespace adestar::oracle
