#include <doctest.h>

#include "adestar/exceptional.hpp"
#include "adestar/sphere.hpp"

#include <algorithm>

using namespace adestar;

namespace {

struct Setup {
  FiniteSubgroup group;
  std::vector<UnitaryIrrep> irreps;
  McKayGraph graph;
};

Setup make(const GroupKind& kind) {
  FiniteSubgroup g = build_group(kind);
  auto irreps = all_irreps(g, 5);
  McKayGraph graph = mckay_graph(g, irreps);
  return {std::move(g), std::move(irreps), std::move(graph)};
}

int count_big(const std::vector<ExceptionalIrrep>& e) {
  return static_cast<int>(std::count_if(e.begin(), e.end(), [](const ExceptionalIrrep& x) { return x.dim > 1; }));
}

// Long chain of E~7 read from the extending vertex, and the branch leaf.
std::pair<std::vector<int>, int> e7_chain(const McKayGraph& g) {
  std::vector<int> chain{g.extending_vertex};
  int prev = -1;
  int branch = -1;
  while (true) {
    const int v = chain.back();
    int next = -1;
    for (int w : g.neighbours(v)) {
      if (w == prev) continue;
      // At the centre, the short arm is a leaf; keep walking the long chain.
      if (g.neighbours(v).size() == 3 && g.neighbours(w).size() == 1 && chain.size() == 4) {
        branch = w;
        continue;
      }
      next = w;
    }
    if (next < 0) break;
    prev = v;
    chain.push_back(next);
  }
  return {chain, branch};
}

std::vector<double> reals(const TraceLabeling& l, const std::vector<int>& vs) {
  std::vector<double> out;
  for (int v : vs) out.push_back(l.labels[static_cast<std::size_t>(v)].real());
  return out;
}

// Independent brute force over the full product of the grids.
int brute_force_count(const McKayGraph& g) {
  const int n = g.size();
  std::vector<std::vector<cplx>> grids;
  for (int v = 0; v < n; ++v) {
    std::vector<cplx> c;
    const int d = g.delta[static_cast<std::size_t>(v)];
    for (int k = -d; k <= d; k += 2) c.push_back(g.sigma[static_cast<std::size_t>(v)] > 0 ? cplx(k, 0) : cplx(0, k));
    if (v == g.extending_vertex) c = {cplx(1, 0)};
    grids.push_back(c);
  }
  std::vector<std::size_t> idx(static_cast<std::size_t>(n), 0);
  int count = 0;
  while (true) {
    bool ok = true;
    for (int v = 0; v < n && ok; ++v) {
      cplx s = 0;
      for (int w = 0; w < n; ++w) s += static_cast<double>(g.adjacency(v, w)) * grids[static_cast<std::size_t>(w)][idx[static_cast<std::size_t>(w)]];
      ok = std::abs(s) < 1e-12;
    }
    if (ok) ++count;
    int v = 0;
    while (v < n && ++idx[static_cast<std::size_t>(v)] == grids[static_cast<std::size_t>(v)].size()) idx[static_cast<std::size_t>(v++)] = 0;
    if (v == n) break;
  }
  return count;
}

Vec3 axis_of(const Mat2& u) {
  const Rot3 r = so3_matrix(u);
  Eigen::SelfAdjointEigenSolver<Rot3> es((r + r.transpose()) * 0.5);
  return es.eigenvectors().col(2);
}

}  // namespace

TEST_CASE("binary tetrahedral has no exceptional irrep beyond dimension one") {
  const Setup s = make(GroupKind::tetrahedral());
  CHECK(count_big(find_exceptional(s.group, s.irreps)) == 0);
}

TEST_CASE("binary octahedral has one two-dimensional exceptional irrep at the branch") {
  const Setup s = make(GroupKind::octahedral());
  const auto e = find_exceptional(s.group, s.irreps);
  REQUIRE(count_big(e) == 1);
  const auto big = *std::find_if(e.begin(), e.end(), [](const ExceptionalIrrep& x) { return x.dim > 1; });
  CHECK(big.dim == 2);
  CHECK(big.irrep == e7_chain(s.graph).second);
  for (std::size_t k = 0; k < big.elements.size(); ++k) {
    CHECK(element_order(s.group, big.elements[k]) == 4);
    CHECK(std::abs(std::abs(big.scalars[k]) - 1.0) < 1e-9);
  }
}

TEST_CASE("binary dihedral exceptional irreps alternate along the interior") {
  for (int n : {2, 3, 4, 5, 6, 8}) {
    CAPTURE(n);
    const Setup s = make(GroupKind::dihedral(n));
    const auto e = find_exceptional(s.group, s.irreps);
    // Even n >= 4: every other interior vertex of the chain of n - 1
    // two-dimensional irreps, skipping the two ends.
    const int expect = (n % 2 == 0 && n >= 4) ? (n - 2) / 2 : 0;
    CHECK(count_big(e) == expect);
    for (const auto& x : e) {
      if (x.dim == 1) continue;
      CHECK(s.graph.neighbours(x.irrep).size() == 2);
      for (const auto& y : e)
        if (y.dim > 1) CHECK(s.graph.adjacency(x.irrep, y.irrep) == 0);
    }
  }
}

TEST_CASE("scan and character criterion agree") {
  for (const GroupKind& k : {GroupKind::dihedral(2), GroupKind::dihedral(4), GroupKind::dihedral(6), GroupKind::tetrahedral(),
                             GroupKind::octahedral(), GroupKind::icosahedral(), GroupKind::cyclic(4), GroupKind::cyclic(8)}) {
    const Setup s = make(k);
    const auto e = find_exceptional(s.group, s.irreps);
    for (const UnitaryIrrep& r : s.irreps) {
      const bool scanned = std::any_of(e.begin(), e.end(), [&](const ExceptionalIrrep& x) { return x.irrep == r.label; });
      CHECK(scanned == exceptional_by_character(s.group, r));
    }
  }
}

TEST_CASE("E7 trace labelings") {
  const Setup s = make(GroupKind::octahedral());
  const auto labelings = enumerate_labelings(s.graph);
  REQUIRE(labelings.size() == 2);
  CHECK(brute_force_count(s.graph) == 2);
  const auto [chain, branch] = e7_chain(s.graph);
  REQUIRE(chain.size() == 7);
  CHECK(reals(labelings[0], chain) == std::vector<double>{1, 0, -1, 0, 1, 0, -1});
  CHECK(labelings[0].labels[static_cast<std::size_t>(branch)] == cplx(0, 0));
  CHECK(reals(labelings[1], chain) == std::vector<double>{1, 0, -1, 0, -1, 0, 1});
  CHECK(labelings[1].labels[static_cast<std::size_t>(branch)] == cplx(2, 0));
  CHECK(labelings[0].norm_squared() == 4.0);
  CHECK(labelings[1].norm_squared() == 8.0);

  // The norm is the centralizer order of any realizing element.
  for (const auto& l : labelings) {
    const auto g = realizability_check(s.group, s.irreps, s.graph, l);
    REQUIRE(g.has_value());
    CHECK(static_cast<double>(centralizer(s.group, *g).size()) == l.norm_squared());
  }
}

TEST_CASE("E7 labelings are realized by vertex and edge axes") {
  const Setup s = make(GroupKind::octahedral());
  const auto labelings = enumerate_labelings(s.graph);
  const auto edge = realizability_check(s.group, s.irreps, s.graph, labelings[0]);
  const auto vertex = realizability_check(s.group, s.irreps, s.graph, labelings[1]);
  REQUIRE(edge.has_value());
  REQUIRE(vertex.has_value());
  // Stabilizer order of the axis in the rotation group: 4 on a vertex axis
  // of the octahedron, 2 through edge midpoints.
  CHECK(stabilizer(s.group, axis_of(s.group.matrix(*vertex))).size() == 8);
  CHECK(stabilizer(s.group, axis_of(s.group.matrix(*edge))).size() == 4);
}

TEST_CASE("every order-4 element gives an admissible labeling") {
  for (const GroupKind& k : {GroupKind::octahedral(), GroupKind::dihedral(4), GroupKind::dihedral(6)}) {
    const Setup s = make(k);
    const auto labelings = enumerate_labelings(s.graph);
    for (int g = 0; g < s.group.order(); ++g) {
      if (element_order(s.group, g) != 4) continue;
      TraceLabeling l;
      for (const UnitaryIrrep& r : s.irreps) l.labels.push_back(r(g).trace());
      CHECK(admissible(s.graph, l));
      CHECK(std::any_of(labelings.begin(), labelings.end(), [&](const TraceLabeling& m) {
        for (std::size_t v = 0; v < l.labels.size(); ++v)
          if (std::abs(l.labels[v] - m.labels[v]) > 1e-6) return false;
        return true;
      }));
    }
  }
}

TEST_CASE("inadmissible labelings are rejected") {
  const Setup s = make(GroupKind::octahedral());
  TraceLabeling l = enumerate_labelings(s.graph).front();
  const auto [chain, branch] = e7_chain(s.graph);
  l.labels[static_cast<std::size_t>(chain[2])] = 1.0;
  CHECK_FALSE(admissible(s.graph, l));
  CHECK_FALSE(realizability_check(s.group, s.irreps, s.graph, l).has_value());

  TraceLabeling zero{std::vector<cplx>(static_cast<std::size_t>(s.graph.size()), cplx(0))};
  CHECK_FALSE(admissible(s.graph, zero));
  CHECK_FALSE(realizability_check(s.group, s.irreps, s.graph, zero).has_value());
}
