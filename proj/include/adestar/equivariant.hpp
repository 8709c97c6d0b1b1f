#pragma once

#include "adestar/groups.hpp"
#include "adestar/irreps.hpp"
#include "adestar/linalg.hpp"

#include <span>
#include <vector>

namespace adestar {

inline constexpr int kMaxDegree = 6;

/// x1^a x2^b x3^c with a in {0, 1}. On the sphere x1^2 = 1 - x2^2 - x3^2, so
/// these span the polynomial functions of degree <= D; there are (D+1)^2 of
/// them. Ordered by total degree, then a, then b descending.
struct Monomial {
  int a = 0, b = 0, c = 0;
  int degree() const { return a + b + c; }
};

inline int monomial_count(int degree) { return (degree + 1) * (degree + 1); }
int monomial_index(const Monomial& m);
std::vector<Monomial> reduced_monomials(int degree);

template <typename Scalar>
Scalar monomial_value(const Monomial& m, const Eigen::Matrix<Scalar, 3, 1>& x) {
  Scalar v(1);
  for (int k = 0; k < m.a; ++k) v *= x(0);
  for (int k = 0; k < m.b; ++k) v *= x(1);
  for (int k = 0; k < m.c; ++k) v *= x(2);
  return v;
}

// Coefficients of p(R x) in the reduced basis: column m holds monomial m
// composed with R.
RMat substitution_matrix(const Rot3& r, int degree);

/// Matrix-valued polynomial on the complex sphere, one coefficient per
/// reduced monomial.
struct EquivariantPoly {
  int irrep = 0;
  int dim = 0;
  int degree = 0;
  std::vector<Mat> coeffs;

  static EquivariantPoly zero(int irrep, int dim, int degree);
  static EquivariantPoly constant(int irrep, const Mat& value);

  Mat evaluate(const CVec3& x) const;
  Mat evaluate(const Vec3& x) const { return evaluate(CVec3(x.cast<cplx>())); }

  // f*(x) = f(conj x)^*: with real monomials this is C_m -> C_m^*.
  EquivariantPoly adjoint() const;
  // Same map with `degree` raised (zero-padded) or lowered (must drop zeros).
  EquivariantPoly with_degree(int degree) const;
  // Largest degree carrying a coefficient above tol.
  int effective_degree(double tol = 1e-12) const;
  double max_coeff() const;
  double hermiticity_defect() const;

  EquivariantPoly& operator+=(const EquivariantPoly& o);
  EquivariantPoly& operator-=(const EquivariantPoly& o);
  EquivariantPoly& operator*=(cplx s);
};

EquivariantPoly operator+(EquivariantPoly a, const EquivariantPoly& b);
EquivariantPoly operator-(EquivariantPoly a, const EquivariantPoly& b);
EquivariantPoly operator*(cplx s, EquivariantPoly a);

// Pointwise product, reduced modulo x1^2 = 1 - x2^2 - x3^2. Throws
// DegreeOverflow when the result would exceed max_degree.
EquivariantPoly multiply(const EquivariantPoly& f, const EquivariantPoly& g, int max_degree = kMaxDegree);

// max over g and sample points of |F(R(g)x) - rho(g) F(x) rho(g)^-1|.
double equivariance_defect(const FiniteSubgroup& group, const UnitaryIrrep& irrep, const EquivariantPoly& f,
                           std::span<const Vec3> points);

// Orthonormal coordinates of Hermitian d x d matrices (d^2 reals).
RVec hermitian_coords(const Mat& h);
Mat from_hermitian_coords(const RVec& v, int d);

// Real-linear basis of the self-adjoint equivariant maps of degree <= D,
// the range of the group-averaging projector, orthonormalized in a fixed
// seed order so that it is covariant under a change of gauge.
std::vector<EquivariantPoly> equivariant_basis(const FiniteSubgroup& group, const UnitaryIrrep& irrep, int degree);

// Averaging operator F -> (1/|G|) sum_g rho(g)^-1 F(R(g) x) rho(g). Not
// bounded by kMaxDegree.
EquivariantPoly average(const FiniteSubgroup& group, const UnitaryIrrep& irrep, const EquivariantPoly& f);

/// Block form of the centralizer M_x of the stabilizer of x in End(V).
/// Columns of U are grouped by block; sizes are sorted descending.
struct BlockStructure {
  std::vector<int> sizes;
  std::vector<cplx> eigenvalues;  // eigenvalue of the stabilizer generator on each block
  Mat U;
  int stabilizer_generator = 0;
  int stabilizer_order = 1;  // in the group, including -1
};

BlockStructure centralizer_algebra(const FiniteSubgroup& group, const UnitaryIrrep& irrep, const Vec3& x);

// Dimension of the invariant scalar polynomials on the sphere in each
// degree 0..D (the filtration quotients).
std::vector<int> scalar_invariants_dimension(const FiniteSubgroup& group, int degree);

struct SurjectivityResult {
  int degree = -1;  // minimal degree at which the targets were hit, -1 if none
  double residual = 0;
  EquivariantPoly map;
};

// Equivariant map with F(x_j) = T_j, built by interpolating a scalar bump on
// the orbits and averaging. Targets must commute with the stabilizers.
SurjectivityResult surjectivity_probe(const FiniteSubgroup& group, const UnitaryIrrep& irrep,
                                      std::span<const Vec3> points, std::span<const Mat> targets, int max_degree = 16,
                                      double tol = 1e-6);

}  // namespace adestar
