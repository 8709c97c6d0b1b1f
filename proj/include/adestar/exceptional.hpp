#pragma once

#include "adestar/groups.hpp"
#include "adestar/irreps.hpp"
#include "adestar/mckay.hpp"

#include <optional>
#include <span>
#include <vector>

namespace adestar {

/// An irrep on which some order-4 elements act as scalars.
struct ExceptionalIrrep {
  int irrep = 0;
  int dim = 0;
  std::vector<int> elements;  // order-4 elements acting as scalars, ascending
  std::vector<cplx> scalars;  // the scalar for each element
};

// Exhaustive scan over irreps and order-4 elements, tolerance 1e-8.
std::vector<ExceptionalIrrep> find_exceptional(const FiniteSubgroup& group, std::span<const UnitaryIrrep> irreps);

// Character criterion: |chi(g)| = dim for some order-4 g.
bool exceptional_by_character(const FiniteSubgroup& group, const UnitaryIrrep& irrep);

/// Candidate traces of one order-4 element, one per McKay vertex.
struct TraceLabeling {
  std::vector<cplx> labels;

  // Sum of |label|^2, the centralizer order when realized.
  double norm_squared() const;
};

// Checks the four constraints: label 1 at the extending vertex, zero
// neighbour sums, and labels in {-d, -d+2, .., d} on even vertices or i times
// that on odd ones (d = dimension of the vertex).
bool admissible(const McKayGraph& graph, const TraceLabeling& labeling);

// All admissible labelings, by exhaustive backtracking over the grids.
// Sorted by norm_squared, then lexicographically by the labels.
std::vector<TraceLabeling> enumerate_labelings(const McKayGraph& graph);

// Lowest-index order-4 element whose characters match the labeling within
// 1e-6 after snapping to the half-integer grid, or nullopt. Labelings that
// fail admissible() are rejected before the search.
std::optional<int> realizability_check(const FiniteSubgroup& group, std::span<const UnitaryIrrep> irreps,
                                       const McKayGraph& graph, const TraceLabeling& labeling);

}  // namespace adestar
