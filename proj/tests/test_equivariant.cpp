#include <doctest.h>

#include "adestar/equivariant.hpp"
#include "adestar/error.hpp"
#include "adestar/mckay.hpp"
#include "adestar/sphere.hpp"
#include "oracles.hpp"

#include <Eigen/SVD>
#include <unsupported/Eigen/KroneckerProduct>

#include <random>

using namespace adestar;
using adestar::oracle::molien_counts;
using adestar::oracle::nullspace_dimension;

namespace {

Vec3 random_unit(std::mt19937_64& rng) {
  std::normal_distribution<double> n(0, 1);
  return Vec3(n(rng), n(rng), n(rng)).normalized();
}

CVec3 random_complex_sphere_point(std::mt19937_64& rng) {
  // (cosh t) u + i (sinh t) v with u, v orthonormal satisfies x.x = 1.
  const Vec3 u = random_unit(rng);
  Vec3 v = random_unit(rng);
  v = (v - u * u.dot(v)).normalized();
  std::uniform_real_distribution<double> t(-0.7, 0.7);
  const double s = t(rng);
  return u.cast<cplx>() * std::cosh(s) + v.cast<cplx>() * cplx(0, std::sinh(s));
}

EquivariantPoly random_poly(std::mt19937_64& rng, int dim, int degree) {
  std::normal_distribution<double> n(0, 1);
  EquivariantPoly f = EquivariantPoly::zero(0, dim, degree);
  for (Mat& c : f.coeffs)
    for (Eigen::Index i = 0; i < c.size(); ++i) c(i) = cplx(n(rng), n(rng));
  return f;
}

const UnitaryIrrep& largest(const std::vector<UnitaryIrrep>& irreps) { return irreps.back(); }

}  // namespace

TEST_CASE("reduced monomials") {
  CHECK(reduced_monomials(3).size() == 16);
  const auto monos = reduced_monomials(4);
  for (std::size_t k = 0; k < monos.size(); ++k) {
    CHECK(monomial_index(monos[k]) == static_cast<int>(k));
    CHECK(monos[k].a <= 1);
  }
}

TEST_CASE("substitution matrix matches direct evaluation") {
  std::mt19937_64 rng(3);
  const Rot3 r = Eigen::AngleAxisd(0.7, Vec3(1, 2, 3).normalized()).toRotationMatrix();
  const int degree = 5;
  const RMat l = substitution_matrix(r, degree);
  const auto monos = reduced_monomials(degree);
  for (int trial = 0; trial < 5; ++trial) {
    const Vec3 x = random_unit(rng);
    const Vec3 rx = r * x;
    for (int m = 0; m < monomial_count(degree); ++m) {
      double sum = 0;
      for (int k = 0; k < monomial_count(degree); ++k) sum += l(k, m) * monomial_value(monos[static_cast<std::size_t>(k)], x);
      CHECK(std::abs(sum - monomial_value(monos[static_cast<std::size_t>(m)], rx)) < 1e-12);
    }
  }
}

TEST_CASE("constant bases follow Schur") {
  const FiniteSubgroup g = build_group(GroupKind::octahedral());
  const auto irreps = all_irreps(g, 1);
  const auto triv = equivariant_basis(g, irreps.front(), 0);
  REQUIRE(triv.size() == 1);
  CHECK(std::abs(triv[0].coeffs[0](0, 0) - 1.0) < 1e-12);
  for (const auto& r : irreps) CHECK(equivariant_basis(g, r, 0).size() == 1);
}

TEST_CASE("basis dimension against a null-space oracle") {
  for (auto kind : {GroupKind::dihedral(2), GroupKind::tetrahedral()}) {
    const FiniteSubgroup g = build_group(kind);
    const auto irreps = all_irreps(g, 1);
    for (int degree = 1; degree <= 2; ++degree)
      for (const auto& r : irreps) {
        // Complex solutions are spanned by the self-adjoint ones and i times them.
        CHECK(static_cast<int>(equivariant_basis(g, r, degree).size()) == nullspace_dimension(g, r, degree));
      }
  }
}

TEST_CASE("basis elements are equivariant and self-adjoint") {
  std::mt19937_64 rng(9);
  const FiniteSubgroup g = build_group(GroupKind::icosahedral());
  const auto irreps = all_irreps(g, 1);
  std::vector<Vec3> pts{random_unit(rng), random_unit(rng)};
  for (const auto& f : equivariant_basis(g, largest(irreps), 2)) {
    CHECK(equivariance_defect(g, largest(irreps), f, pts) < 1e-8);
    CHECK(f.hermiticity_defect() < 1e-12);
  }
}

TEST_CASE("evaluation, involution and products") {
  std::mt19937_64 rng(4);
  const EquivariantPoly f = random_poly(rng, 3, 2);
  const EquivariantPoly h = random_poly(rng, 3, 3);
  const EquivariantPoly one = EquivariantPoly::constant(0, Mat::Identity(3, 3));
  CHECK(multiply(f, one).max_coeff() == doctest::Approx(f.max_coeff()));
  CHECK((multiply(f, one) - f).max_coeff() < 1e-14);
  const EquivariantPoly fh = multiply(f, h);
  for (int k = 0; k < 20; ++k) {
    const CVec3 x = random_complex_sphere_point(rng);
    CHECK(std::abs(x.dot(x.conjugate()) - cplx(1.0)) < 1e-12);
    CHECK(max_abs(fh.evaluate(x) - f.evaluate(x) * h.evaluate(x)) < 1e-9);
    CHECK(max_abs(f.adjoint().evaluate(x) - f.evaluate(CVec3(x.conjugate())).adjoint()) < 1e-12);
  }
  CHECK((fh.adjoint() - multiply(h.adjoint(), f.adjoint())).max_coeff() < 1e-12);
  CHECK_THROWS_AS(multiply(random_poly(rng, 2, 4), random_poly(rng, 2, 3)), Error);
}

TEST_CASE("basis is closed under products") {
  std::mt19937_64 rng(8);
  const FiniteSubgroup g = build_group(GroupKind::tetrahedral());
  const auto irreps = all_irreps(g, 1);
  const auto b1 = equivariant_basis(g, largest(irreps), 1);
  const auto b2 = equivariant_basis(g, largest(irreps), 2);
  std::vector<Vec3> pts{random_unit(rng), random_unit(rng)};
  const EquivariantPoly p = multiply(b1.back(), b1.front());
  CHECK(equivariance_defect(g, largest(irreps), p, pts) < 1e-8);
  // Symmetrized product is self-adjoint, hence a real combination of b2.
  const EquivariantPoly s = p + p.adjoint();
  RMat cols(static_cast<Eigen::Index>(9 * monomial_count(2)), static_cast<Eigen::Index>(b2.size()));
  auto flatten = [](const EquivariantPoly& f) {
    RVec v(static_cast<Eigen::Index>(f.coeffs.size() * 9));
    for (std::size_t m = 0; m < f.coeffs.size(); ++m) v.segment(static_cast<Eigen::Index>(m * 9), 9) = hermitian_coords(f.coeffs[m]);
    return v;
  };
  for (std::size_t k = 0; k < b2.size(); ++k) cols.col(static_cast<Eigen::Index>(k)) = flatten(b2[k]);
  const RVec target = flatten(s);
  const RVec coef = cols.colPivHouseholderQr().solve(target);
  CHECK(max_abs(cols * coef - target) < 1e-8);
}

TEST_CASE("centralizer blocks") {
  std::mt19937_64 rng(1);
  const FiniteSubgroup bi = build_group(GroupKind::icosahedral());
  const auto irreps = all_irreps(bi, 1);
  const auto orbits = special_orbits(bi);
  CHECK(centralizer_algebra(bi, largest(irreps), random_unit(rng)).sizes == std::vector<int>{6});
  CHECK(centralizer_algebra(bi, largest(irreps), orbit_of_kind(orbits, OrbitKind::FaceCenter).representative).sizes ==
        std::vector<int>{2, 2, 2});
  CHECK(centralizer_algebra(bi, largest(irreps), orbit_of_kind(orbits, OrbitKind::EdgeCenter).representative).sizes ==
        std::vector<int>{3, 3});
  CHECK(centralizer_algebra(bi, largest(irreps), orbit_of_kind(orbits, OrbitKind::Vertex).representative).sizes ==
        std::vector<int>{2, 1, 1, 1, 1});
  for (const auto& o : orbits) {
    const auto first = centralizer_algebra(bi, largest(irreps), o.points.front()).sizes;
    for (const Vec3& p : o.points) CHECK(centralizer_algebra(bi, largest(irreps), p).sizes == first);
    const BlockStructure bs = centralizer_algebra(bi, largest(irreps), o.representative);
    CHECK(unitarity_defect(bs.U) < 1e-9);
  }
}

TEST_CASE("scalar invariants against Molien counts") {
  for (auto kind : {GroupKind::dihedral(2), GroupKind::octahedral(), GroupKind::dihedral(3)}) {
    const FiniteSubgroup g = build_group(kind);
    const auto counts = scalar_invariants_dimension(g, 4);
    CHECK(counts == molien_counts(g, 4));
    CHECK(counts[0] == 1);
    CHECK(counts[1] == 0);
  }
}

TEST_CASE("surjectivity at two orbits") {
  std::mt19937_64 rng(12);
  std::normal_distribution<double> n(0, 1);
  const FiniteSubgroup g = build_group(GroupKind::octahedral());
  const auto irreps = all_irreps(g, 1);
  const auto orbits = special_orbits(g);
  const Vec3 x1 = orbit_of_kind(orbits, OrbitKind::Vertex).representative;
  const Vec3 x2 = random_unit(rng);
  std::vector<Mat> targets;
  for (const Vec3& x : {x1, x2}) {
    const BlockStructure bs = centralizer_algebra(g, largest(irreps), x);
    Mat m = Mat::Zero(largest(irreps).dim, largest(irreps).dim);
    int off = 0;
    for (int s : bs.sizes) {
      for (int i = 0; i < s; ++i)
        for (int j = 0; j < s; ++j) m(off + i, off + j) = cplx(n(rng), n(rng));
      off += s;
    }
    targets.push_back(bs.U * m * bs.U.adjoint());
  }
  const std::vector<Vec3> pts{x1, x2};
  const SurjectivityResult res = surjectivity_probe(g, largest(irreps), pts, targets);
  REQUIRE(res.degree >= 0);
  CHECK(res.residual < 1e-6);
  CHECK(equivariance_defect(g, largest(irreps), res.map, pts) < 1e-6);
  MESSAGE("minimal degree for the octahedral probe: " << res.degree);
}
