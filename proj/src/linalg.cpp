#include "adestar/linalg.hpp"

#include "adestar/error.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <numeric>

namespace adestar {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::ClosureOverflow: return "ClosureOverflow";
    case ErrorCode::OddCycleUnsupported: return "OddCycleUnsupported";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::SplitFailure: return "SplitFailure";
    case ErrorCode::NotFound: return "NotFound";
    case ErrorCode::NonIntegerMultiplicity: return "NonIntegerMultiplicity";
    case ErrorCode::NotADE: return "NotADE";
    case ErrorCode::MeshTooCoarse: return "MeshTooCoarse";
    case ErrorCode::DegreeOverflow: return "DegreeOverflow";
    case ErrorCode::SynthesisFailed: return "SynthesisFailed";
    case ErrorCode::SpectrumViolation: return "SpectrumViolation";
    case ErrorCode::BlockLeakage: return "BlockLeakage";
    case ErrorCode::LogBranchFailure: return "LogBranchFailure";
    case ErrorCode::RelaxationDiverged: return "RelaxationDiverged";
    case ErrorCode::PreconditionFailed: return "PreconditionFailed";
    case ErrorCode::FormatError: return "FormatError";
  }
  return "Unknown";
}

double unitarity_defect(const Mat& u) {
  return max_abs(u * u.adjoint() - Mat::Identity(u.rows(), u.cols()));
}

double hermiticity_defect(const Mat& m) { return max_abs(m - m.adjoint()); }

Mat project_special_unitary(const Mat& m) {
  Eigen::JacobiSVD<Mat> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Mat q = svd.matrixU() * svd.matrixV().adjoint();
  const cplx det = q.determinant();
  const double phase = std::arg(det);
  return q * std::polar(1.0, -phase / static_cast<double>(m.rows()));
}

Mat expm_antihermitian(const Mat& l) {
  // l = i h with h Hermitian.
  const Mat h = (-kI * l + (-kI * l).adjoint()) * 0.5;
  Eigen::SelfAdjointEigenSolver<Mat> es(h);
  CVec phases(h.rows());
  for (Eigen::Index k = 0; k < h.rows(); ++k) phases(k) = std::polar(1.0, es.eigenvalues()(k));
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

UnitaryEigen unitary_eigen(const Mat& u) {
  // Schur form of a normal matrix is diagonal, which keeps eigenvectors of
  // repeated eigenvalues orthonormal.
  Eigen::ComplexSchur<Mat> schur(u);
  UnitaryEigen out;
  out.vectors = schur.matrixU();
  out.phases.resize(u.rows());
  for (Eigen::Index k = 0; k < u.rows(); ++k) out.phases(k) = std::arg(schur.matrixT()(k, k));
  return out;
}

Mat traceless_log(const Mat& u) {
  UnitaryEigen eig = unitary_eigen(u);
  RVec& ph = eig.phases;
  const long turns = std::lround(ph.sum() / (2.0 * kPi));
  std::vector<Eigen::Index> order(static_cast<std::size_t>(ph.size()));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return ph(a) > ph(b); });
  if (turns > 0) {
    for (long k = 0; k < turns; ++k) ph(order[static_cast<std::size_t>(k)]) -= 2.0 * kPi;
  } else if (turns < 0) {
    for (long k = 0; k < -turns; ++k) ph(order[order.size() - 1 - static_cast<std::size_t>(k)]) += 2.0 * kPi;
  }
  CVec diag = ph.cast<cplx>() * kI;
  return eig.vectors * diag.asDiagonal() * eig.vectors.adjoint();
}

Mat null_space(const Mat& a, double tol) {
  const Eigen::Index n = a.cols();
  if (a.rows() == 0) return Mat::Identity(n, n);
  Eigen::BDCSVD<Mat> svd(a, Eigen::ComputeFullV);
  const RVec& s = svd.singularValues();
  const double scale = std::max(1.0, s.size() > 0 ? s(0) : 0.0);
  Eigen::Index rank = 0;
  for (Eigen::Index k = 0; k < s.size(); ++k)
    if (s(k) > tol * scale) ++rank;
  return svd.matrixV().rightCols(n - rank);
}

RMat null_space(const RMat& a, double tol) {
  const Eigen::Index n = a.cols();
  if (a.rows() == 0) return RMat::Identity(n, n);
  Eigen::BDCSVD<RMat> svd(a, Eigen::ComputeFullV);
  const RVec& s = svd.singularValues();
  const double scale = std::max(1.0, s.size() > 0 ? s(0) : 0.0);
  Eigen::Index rank = 0;
  for (Eigen::Index k = 0; k < s.size(); ++k)
    if (s(k) > tol * scale) ++rank;
  return svd.matrixV().rightCols(n - rank);
}

int numerical_rank(const RMat& a, double tol) {
  if (a.size() == 0) return 0;
  Eigen::BDCSVD<RMat> svd(a);
  const RVec& s = svd.singularValues();
  const double scale = std::max(1.0, s(0));
  int rank = 0;
  for (Eigen::Index k = 0; k < s.size(); ++k)
    if (s(k) > tol * scale) ++rank;
  return rank;
}

int commutant_dimension(std::span<const Mat> tuple, double tol) {
  if (tuple.empty()) return 0;
  const Eigen::Index d = tuple.front().rows();
  const Eigen::Index d2 = d * d;
  // vec(A X - X A) = (I (x) A - A^T (x) I) vec(X), column-major vec.
  Mat stacked(static_cast<Eigen::Index>(tuple.size()) * d2, d2);
  const Mat id = Mat::Identity(d, d);
  for (std::size_t k = 0; k < tuple.size(); ++k) {
    const Mat& a = tuple[k];
    Mat block = Mat::Zero(d2, d2);
    for (Eigen::Index i = 0; i < d; ++i)
      for (Eigen::Index j = 0; j < d; ++j) {
        block.block(i * d, i * d, d, d).col(j) += a.col(j);
        block.block(j * d, i * d, d, d).diagonal().array() -= a(i, j);
      }
    stacked.middleRows(static_cast<Eigen::Index>(k) * d2, d2) = block;
  }
  Eigen::BDCSVD<Mat> svd(stacked);
  const RVec& s = svd.singularValues();
  int zero = 0;
  for (Eigen::Index k = 0; k < s.size(); ++k)
    if (s(k) <= tol) ++zero;
  return zero + static_cast<int>(d2 - s.size());
}

std::vector<int> cluster_sorted(const RVec& v, double tol) {
  std::vector<int> starts;
  for (Eigen::Index k = 0; k < v.size(); ++k)
    if (k == 0 || v(k) - v(k - 1) > tol) starts.push_back(static_cast<int>(k));
  starts.push_back(static_cast<int>(v.size()));
  return starts;
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t key) {
  // splitmix64 finalizer over the combined words.
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (key + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace adestar
