#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

namespace adestar {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Mat2 = Eigen::Matrix2cd;
using RMat = Eigen::MatrixXd;
using RVec = Eigen::VectorXd;
using CVec = Eigen::VectorXcd;
using Vec3 = Eigen::Vector3d;
using CVec3 = Eigen::Vector3cd;
using Rot3 = Eigen::Matrix3d;

inline constexpr double kPi = 3.14159265358979323846;
inline const cplx kI{0.0, 1.0};

// Max-entry norm, used for every "within tolerance" comparison in the library.
template <typename Derived>
double max_abs(const Eigen::MatrixBase<Derived>& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

double unitarity_defect(const Mat& u);
double hermiticity_defect(const Mat& m);

// Nearest special-unitary matrix: unitary polar factor, then the determinant
// phase is divided out on the principal branch.
Mat project_special_unitary(const Mat& m);

// exp of an anti-Hermitian matrix.
Mat expm_antihermitian(const Mat& l);

// Eigen-decomposition of a unitary matrix: columns of `vectors` are
// orthonormal, `phases` in (-pi, pi].
struct UnitaryEigen {
  RVec phases;
  Mat vectors;
};
UnitaryEigen unitary_eigen(const Mat& u);

// Logarithm of a special-unitary matrix with zero trace (branch of some
// eigenvalues shifted by 2*pi as needed), so exp(s*L) stays in SU(d).
Mat traceless_log(const Mat& u);

// Orthonormal basis of the null space of `a` (columns), counting singular
// values <= tol * max(1, sigma_max) as zero.
Mat null_space(const Mat& a, double tol);
RMat null_space(const RMat& a, double tol);
int numerical_rank(const RMat& a, double tol);

// Dimension of {X : X A_k = A_k X for all k}.
int commutant_dimension(std::span<const Mat> tuple, double tol = 1e-6);

// Groups sorted real values into clusters of consecutive values whose gap is
// <= tol. Returns cluster start offsets into the sorted order (plus end).
std::vector<int> cluster_sorted(const RVec& sorted_values, double tol);

// Deterministic 64-bit mixing for keyed random streams.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t key);

}  // namespace adestar
