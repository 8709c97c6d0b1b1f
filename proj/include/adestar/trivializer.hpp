#pragma once

#include "adestar/equivariant.hpp"
#include "adestar/presets.hpp"
#include "adestar/sphere.hpp"

#include <array>
#include <span>
#include <vector>

namespace adestar {

/// *-subalgebra U (End(C^n_1) + ... + End(C^n_k)) U^* of End(C^d).
struct BlockAlgebra {
  std::vector<int> sizes;
  Mat U;

  static BlockAlgebra from(const BlockStructure& bs) { return {bs.sizes, bs.U}; }
  static BlockAlgebra standard(const std::vector<int>& sizes);

  int dim() const { return static_cast<int>(U.rows()); }
  // Matrix units of each block, conjugated by U.
  std::vector<Mat> basis() const;
  // Orthogonal projection of x onto the algebra.
  Mat project(const Mat& x) const;
  // max |x - project(x)|.
  double leakage(const Mat& x) const;
  // Sorted descending.
  std::vector<int> size_multiset() const;
};

/// Map from a boundary segment into SU(H), parametrized by s in [0, 1] from
/// the first endpoint, given by samples at uniform s and interpolated
/// linearly with special-unitary projection. One sample means constant.
struct SegmentMap {
  std::vector<Mat> samples;

  Mat at(double s) const;
  bool constant() const { return samples.size() == 1; }
};

enum class MarkedPoint { A = 0, B = 1, C = 2, A_prime = 3 };
const char* marked_point_name(MarkedPoint p);

struct ClutchingData {
  int dim = 0;
  SegmentMap m_b;  // on BA', s = 0 at B
  SegmentMap m_c;  // on CA, s = 0 at C
  std::array<BlockAlgebra, 4> M;  // indexed by MarkedPoint

  const BlockAlgebra& at(MarkedPoint p) const { return M[static_cast<std::size_t>(p)]; }
};

// Residuals of the four conditions on clutching data: m_b(B) and m_c(C)
// commute with M_B and M_C, m_b(A') m_c(A) commutes with M_A, and
// m_c(A) M_A m_c(A)^-1 = M_A'.
struct ClutchingReport {
  std::array<double, 4> conditions{};
  double determinant = 0;  // max |det - 1| over the samples
  double worst() const;
};
ClutchingReport check_clutching(const ClutchingData& c);

// Constant maps rho(b), rho(c) divided by a d-th root of their determinants;
// M_P the centralizer algebras at the marked points. Of the d^2 choices of
// roots, the first that lets m_b(B), m_c(C)^-1 and m_c(A) m_b(A') be joined
// to the identity inside their commutants is taken, else the principal one.
ClutchingData equivariant_to_clutching(const GeneratorSystem& system, const FundamentalDomain& domain);
ClutchingData equivariant_to_clutching(const FiniteSubgroup& group, const UnitaryIrrep& irrep, const FundamentalDomain& domain);

// Identity clutching with the same block sizes in standard diagonal position.
ClutchingData standard_clutching(const FiniteSubgroup& group, const UnitaryIrrep& irrep, const FundamentalDomain& domain);
ClutchingData standard_clutching(const StarPreset& preset, const FundamentalDomain& domain);

/// Samples of p(s) = exp(s L) for s = 0, 1/(n-1), .., 1.
struct CommutantPath {
  Mat log;
  std::vector<Mat> samples;
  double commutator_defect = 0;  // max over samples and basis of M
  Mat at(double s) const;
};

// L is the logarithm of u taken block by block in the commutant of M, where
// u is a scalar on each block; branches are shifted by whole blocks to make
// it traceless. Throws PreconditionFailed if u does not commute with M or is
// not special unitary, LogBranchFailure if no traceless branch exists.
CommutantPath commutant_path(const Mat& u, const BlockAlgebra& m, int samples = 17);

struct GaugeField {
  FundamentalDomain domain;
  std::vector<Mat> t;  // per mesh node
  double disk_radius = 0;
  double exclusion_radius = 0;
  // Max |t(p) - t(q)| over mesh edges with both ends further than
  // exclusion_radius from every marked point.
  double max_jump = 0;
  int sweeps = 0;
  double last_update = 0;
  bool refined = false;  // true if the relaxation was retried at h/2
  std::array<Mat, 4> u;  // t at the marked points
};

// Builds a morphism from C1 to C2 on the given domain: values at the marked
// points, collars and geodesic paths on AB and AC, pushed forward to BA' and
// CA', commutant paths on disks of radius min(3h, 0.3 d_min) around the
// marked points, and Gauss-Seidel relaxation in the interior. Throws
// PreconditionFailed on a block-size mismatch or h > 0.1 and
// RelaxationDiverged if the retry at h/2 also fails.
GaugeField build_gauge(const ClutchingData& c1, const ClutchingData& c2, const FiniteSubgroup& group, double h);
GaugeField build_gauge(const ClutchingData& c1, const ClutchingData& c2, const FundamentalDomain& domain);

struct GaugeReport {
  double boundary_b = 0;   // |m_b^2 t(x) - t(bx) m_b^1| on BA' minus endpoints
  double boundary_c = 0;   // |m_c^2 t(x) - t(cx) m_c^1| on CA minus endpoints
  double locality = 0;     // |t(x) u t(x)^-1 - t(P) u t(P)^-1| on the disks
  double membership = 0;   // leakage of t(P) u t(P)^-1 out of M^2_P
  double special_unitary = 0;
  double worst() const;
};
GaugeReport check_gauge(const ClutchingData& c1, const ClutchingData& c2, const GaugeField& gauge);

// (t f)(x) = t(x) f(x) t(x)^-1 at every mesh node.
std::vector<Mat> apply_gauge(const GaugeField& gauge, std::span<const Mat> f);

struct TransportReport {
  double product = 0;     // |t(fg) - t(f) t(g)|
  double adjoint = 0;     // |t(f^*) - t(f)^*|
  double membership = 0;  // leakage of t(f)(P) out of M^2_P
  double gluing = 0;      // |t(f)(bx) - m_b^2 t(f)(x) m_b^2^-1| and likewise for c
  double worst() const;
};
TransportReport check_transport(const ClutchingData& c2, const GaugeField& gauge, std::span<const Mat> f,
                                std::span<const Mat> g);

// Values of an equivariant map at the mesh nodes.
std::vector<Mat> sample_on_domain(const EquivariantPoly& f, const FundamentalDomain& domain);

}  // namespace adestar
