#include <doctest.h>

#include "adestar/error.hpp"
#include "adestar/mckay.hpp"

#include <algorithm>

using namespace adestar;

namespace {

McKayGraph graph_of(const GroupKind& kind) {
  const FiniteSubgroup g = build_group(kind);
  const auto irreps = all_irreps(g, 3);
  return mckay_graph(g, irreps);
}

}  // namespace

TEST_CASE("affine diagram shapes") {
  CHECK(graph_shape(graph_of(GroupKind::cyclic(2))).name() == "A~1");
  CHECK(graph_shape(graph_of(GroupKind::cyclic(6))).name() == "A~5");
  CHECK(graph_shape(graph_of(GroupKind::dihedral(2))).name() == "D~4");
  CHECK(graph_shape(graph_of(GroupKind::dihedral(4))).name() == "D~6");
  CHECK(graph_shape(graph_of(GroupKind::tetrahedral())).name() == "E~6");
  CHECK(graph_shape(graph_of(GroupKind::octahedral())).name() == "E~7");
  CHECK(graph_shape(graph_of(GroupKind::icosahedral())).name() == "E~8");
}

TEST_CASE("delta is the null vector of the affine Cartan matrix") {
  for (auto kind : {GroupKind::dihedral(3), GroupKind::tetrahedral(), GroupKind::octahedral(), GroupKind::icosahedral()}) {
    const McKayGraph g = graph_of(kind);
    for (int v = 0; v < g.size(); ++v) {
      int s = 0;
      for (int w = 0; w < g.size(); ++w) s += g.adjacency(v, w) * g.delta[static_cast<std::size_t>(w)];
      CHECK(s == 2 * g.delta[static_cast<std::size_t>(v)]);
    }
  }
}

TEST_CASE("lambda sums and bipartition") {
  const McKayGraph g = graph_of(GroupKind::icosahedral());
  CHECK(g.delta[static_cast<std::size_t>(g.extending_vertex)] == 1);
  CHECK(g.lambda[static_cast<std::size_t>(g.extending_vertex)] == 1);
  CHECK(g.sigma[static_cast<std::size_t>(g.tautological)] == -1);
  CHECK(*std::max_element(g.delta.begin(), g.delta.end()) == 6);
  const StarArms arms = star_arms(g);
  CHECK(g.delta[static_cast<std::size_t>(arms.center)] == 6);
  REQUIRE(arms.arms.size() == 3);
  CHECK(arms.arms[0].size() == 5);
  CHECK(arms.arms[1].size() == 2);
  CHECK(arms.arms[2].size() == 1);
}

TEST_CASE("dot output lists every edge") {
  const McKayGraph g = graph_of(GroupKind::cyclic(2));
  const std::string dot = to_dot(g, "A~1");
  int edges = 0;
  for (auto pos = dot.find(" -- "); pos != std::string::npos; pos = dot.find(" -- ", pos + 1)) ++edges;
  CHECK(edges == 2);
}
