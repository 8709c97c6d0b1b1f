#include <doctest.h>

#include "adestar/error.hpp"
#include "adestar/trivializer.hpp"

#include <map>

using namespace adestar;

namespace {

const GeneratorSystem& solved(const std::string& name) {
  static std::map<std::string, GeneratorSystem> cache;
  auto it = cache.find(name);
  if (it == cache.end()) it = cache.emplace(name, synthesize(preset(name), 1)).first;
  return it->second;
}

struct Pair {
  FundamentalDomain domain;
  ClutchingData equivariant, standard;
};

Pair pair_for(const std::string& name, double h) {
  const GeneratorSystem& s = solved(name);
  FundamentalDomain d = fundamental_domain(s.group, h);
  ClutchingData e = equivariant_to_clutching(s, d);
  ClutchingData st = standard_clutching(s.group, s.irrep, d);
  return {std::move(d), std::move(e), std::move(st)};
}

Mat diag(std::initializer_list<cplx> v) {
  CVec d(static_cast<Eigen::Index>(v.size()));
  Eigen::Index k = 0;
  for (cplx z : v) d(k++) = z;
  return d.asDiagonal();
}

}  // namespace

TEST_CASE("equivariant clutching data satisfy the clutching conditions") {
  for (const std::string& name : preset_names()) {
    CAPTURE(name);
    const Pair p = pair_for(name, 0.1);
    const ClutchingReport r = check_clutching(p.equivariant);
    CHECK(r.worst() <= 1e-8);
    CHECK(std::abs(p.equivariant.m_b.at(0.3).determinant() - cplx(1.0)) <= 1e-12);
    CHECK(p.equivariant.m_b.constant());
  }
}

TEST_CASE("standard clutching data") {
  const Pair e8 = pair_for("E8", 0.1);
  CHECK(check_clutching(e8.standard).worst() == 0.0);
  CHECK(e8.standard.at(MarkedPoint::C).sizes == std::vector<int>{2, 1, 1, 1, 1});
  CHECK(e8.standard.at(MarkedPoint::B).sizes == std::vector<int>{3, 3});
  CHECK(e8.standard.at(MarkedPoint::A).sizes == std::vector<int>{2, 2, 2});
  for (MarkedPoint m : {MarkedPoint::A, MarkedPoint::B, MarkedPoint::C, MarkedPoint::A_prime})
    CHECK(e8.standard.at(m).size_multiset() == e8.equivariant.at(m).size_multiset());

  const Pair d4 = pair_for("D4", 0.1);
  for (MarkedPoint m : {MarkedPoint::A, MarkedPoint::B, MarkedPoint::C, MarkedPoint::A_prime})
    CHECK(d4.standard.at(m).sizes == std::vector<int>{1, 1});
  CHECK(check_clutching(d4.standard).worst() == 0.0);
}

TEST_CASE("block algebra projection") {
  const BlockAlgebra m = BlockAlgebra::standard({2, 1});
  CHECK(m.basis().size() == 5);
  Mat x = Mat::Ones(3, 3);
  CHECK(m.leakage(x) == doctest::Approx(1.0));
  CHECK(m.leakage(m.project(x)) == 0.0);
}

TEST_CASE("commutant paths") {
  SUBCASE("identity gives the constant path") {
    const CommutantPath p = commutant_path(Mat::Identity(3, 3), BlockAlgebra::standard({2, 1}));
    CHECK(max_abs(p.log) == 0.0);
    for (const Mat& s : p.samples) CHECK(max_abs(s - Mat::Identity(3, 3)) == 0.0);
  }
  SUBCASE("diagonal endpoint stays in SU(2) and the commutant") {
    const Mat u = diag({kI, -kI});
    const CommutantPath p = commutant_path(u, BlockAlgebra::standard({1, 1}));
    CHECK(p.samples.size() == 17);
    CHECK(max_abs(p.samples.front() - Mat::Identity(2, 2)) <= 1e-12);
    CHECK(max_abs(p.samples.back() - u) <= 1e-12);
    CHECK(p.commutator_defect <= 1e-12);
    for (const Mat& s : p.samples) {
      CHECK(unitarity_defect(s) <= 1e-12);
      CHECK(std::abs(s.determinant() - cplx(1.0)) <= 1e-12);
    }
  }
  SUBCASE("a conjugated block algebra") {
    const Mat u0 = diag({kI, kI, -1.0});
    Eigen::HouseholderQR<Mat> qr(Mat::Random(3, 3));
    const Mat w = qr.householderQ();
    const BlockAlgebra m{{2, 1}, w};
    const CommutantPath p = commutant_path(w * u0 * w.adjoint(), m);
    CHECK(max_abs(p.at(1.0) - w * u0 * w.adjoint()) <= 1e-10);
    CHECK(std::abs(p.log.trace()) <= 1e-12);
    CHECK(p.commutator_defect <= 1e-10);
  }
  SUBCASE("no path outside the identity component") {
    // i I on blocks (2, 2): the commutant is {diag(a I, b I)} with a^2 b^2 = 1,
    // and i I has ab = -1.
    const Mat u = kI * Mat::Identity(4, 4);
    CHECK_THROWS_AS(commutant_path(u, BlockAlgebra::standard({2, 2})), Error);
    try {
      commutant_path(u, BlockAlgebra::standard({2, 2}));
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::LogBranchFailure);
    }
    // With four one-dimensional blocks the same endpoint is reachable.
    CHECK(max_abs(commutant_path(u, BlockAlgebra::standard({1, 1, 1, 1})).at(1.0) - u) <= 1e-12);
  }
  SUBCASE("endpoint outside the commutant") {
    Mat u(2, 2);
    u << 0, 1, -1, 0;
    try {
      commutant_path(u, BlockAlgebra::standard({1, 1}));
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::PreconditionFailed);
    }
  }
}

TEST_CASE("E8 path at B lies in the commutant") {
  const Pair p = pair_for("E8", 0.1);
  const GaugeField g = build_gauge(p.equivariant, p.standard, p.domain);
  const Mat& uB = g.u[static_cast<std::size_t>(MarkedPoint::B)];
  const Mat end = uB.adjoint() * p.standard.m_b.at(0).adjoint() * uB * p.equivariant.m_b.at(0);
  const CommutantPath path = commutant_path(end, p.equivariant.at(MarkedPoint::B));
  CHECK(path.commutator_defect <= 1e-9);
  CHECK(max_abs(path.at(1.0) - end) <= 1e-9);
}

TEST_CASE("gauge between identical clutching data is the identity") {
  for (const std::string& name : {"D4", "E8"}) {
    CAPTURE(name);
    const Pair p = pair_for(name, 0.1);
    for (const ClutchingData* c : {&p.equivariant, &p.standard}) {
      const GaugeField g = build_gauge(*c, *c, p.domain);
      double worst = 0;
      for (const Mat& t : g.t) worst = std::max(worst, max_abs(t - Mat::Identity(c->dim, c->dim)));
      CHECK(worst <= 1e-12);
      CHECK_FALSE(g.refined);
    }
  }
}

TEST_CASE("E8 gauge from equivariant to standard clutching") {
  const Pair p = pair_for("E8", 0.05);
  const GaugeField g = build_gauge(p.equivariant, p.standard, p.domain);
  const GaugeReport r = check_gauge(p.equivariant, p.standard, g);
  CAPTURE(r.boundary_b);
  CAPTURE(r.boundary_c);
  CAPTURE(r.locality);
  CAPTURE(r.membership);
  CHECK(r.worst() <= 1e-6);
  CHECK(r.special_unitary <= 1e-8);
  CHECK(g.t.size() == p.domain.nodes.size());
  CHECK(g.last_update <= 1e-8);

  // Transport of the generators.
  const GeneratorSystem& s = solved("E8");
  const auto f = sample_on_domain(s.generators[0], g.domain);
  const auto h = sample_on_domain(s.generators[1], g.domain);
  const TransportReport tr = check_transport(p.standard, g, f, h);
  CAPTURE(tr.product);
  CAPTURE(tr.adjoint);
  CAPTURE(tr.membership);
  CAPTURE(tr.gluing);
  CHECK(tr.worst() <= 1e-6);
}

TEST_CASE("gauge of the identity map is the identity") {
  const Pair p = pair_for("E6", 0.1);
  const GaugeField g = build_gauge(p.equivariant, p.standard, p.domain);
  const std::vector<Mat> one(g.t.size(), Mat::Identity(p.standard.dim, p.standard.dim));
  for (const Mat& m : apply_gauge(g, one)) CHECK(max_abs(m - Mat::Identity(p.standard.dim, p.standard.dim)) <= 1e-12);
  CHECK_THROWS_AS(apply_gauge(g, std::vector<Mat>(3, Mat::Identity(3, 3))), Error);
}

TEST_CASE("block-size mismatch is rejected") {
  const Pair p = pair_for("E8", 0.1);
  ClutchingData bad = p.standard;
  bad.M[static_cast<std::size_t>(MarkedPoint::B)] = BlockAlgebra::standard({2, 2, 2});
  try {
    build_gauge(p.equivariant, bad, p.domain);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::PreconditionFailed);
  }
}

TEST_CASE("coarse meshes are rejected") {
  const GeneratorSystem& s = solved("D4");
  const FundamentalDomain d = fundamental_domain(s.group, 0.15);
  const ClutchingData c = standard_clutching(s.group, s.irrep, d);
  CHECK_THROWS_AS(build_gauge(c, c, d), Error);
}

TEST_CASE("jumps shrink under refinement") {
  for (const std::string& name : {"D4", "E6"}) {
    CAPTURE(name);
    const Pair coarse = pair_for(name, 0.1);
    const Pair fine = pair_for(name, 0.05);
    const GaugeField a = build_gauge(coarse.equivariant, coarse.standard, coarse.domain);
    const GaugeField b = build_gauge(fine.equivariant, fine.standard, fine.domain);
    CAPTURE(a.max_jump);
    CAPTURE(b.max_jump);
    CHECK(a.max_jump > 0);
    CHECK(b.max_jump <= 0.6 * a.max_jump);
  }
}
