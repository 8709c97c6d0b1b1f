#pragma once

#include "adestar/groups.hpp"
#include "adestar/irreps.hpp"

#include <Eigen/Core>

#include <span>
#include <string>
#include <vector>

namespace adestar {

enum class DynkinFamily { A, D, E };

struct DynkinTag {
  DynkinFamily family = DynkinFamily::A;
  int rank = 0;  // affine diagram has rank + 1 vertices

  std::string name() const;  // e.g. "A~3", "D~4", "E~8"
  bool operator==(const DynkinTag&) const = default;
};

/// McKay graph of a binary polyhedral group: vertex k is irrep label k.
struct McKayGraph {
  Eigen::MatrixXi adjacency;
  int extending_vertex = 0;
  int tautological = -1;  // -1 when V is reducible (cyclic groups)
  std::vector<int> delta;
  std::vector<int> sigma;
  std::vector<int> lambda;
  std::vector<std::string> names;

  int size() const { return static_cast<int>(delta.size()); }
  std::vector<int> neighbours(int v) const;
};

McKayGraph mckay_graph(const FiniteSubgroup& group, std::span<const UnitaryIrrep> irreps);

DynkinTag graph_shape(const McKayGraph& graph);

// Vertex of maximal delta (lowest label on ties), and the arms hanging off it
// listed outward. Only meaningful for star-shaped graphs (D~4, E~6..8).
struct StarArms {
  int center = -1;
  std::vector<std::vector<int>> arms;
};
StarArms star_arms(const McKayGraph& graph);

std::string to_dot(const McKayGraph& graph, const std::string& title);

}  // namespace adestar
