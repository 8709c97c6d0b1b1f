#pragma once

#include "adestar/groups.hpp"
#include "adestar/linalg.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace adestar {

struct ConjugacyClassSet {
  std::vector<std::vector<int>> classes;  // classes[0] == {identity}
  std::vector<int> representatives;
  std::vector<int> class_of;  // element index -> class index

  int size() const { return static_cast<int>(classes.size()); }
};

ConjugacyClassSet conjugacy_classes(const FiniteSubgroup& group);

/// An explicit unitary irreducible representation.
///
/// `character` is indexed by the classes of `conjugacy_classes(group)`.
struct UnitaryIrrep {
  int label = 0;
  int dim = 0;
  std::vector<Mat> matrices;
  CVec character;

  const Mat& operator()(int g) const { return matrices[static_cast<std::size_t>(g)]; }
};

inline constexpr double kClusterTol = 1e-7;
inline constexpr double kCharacterTol = 1e-6;

// Splits the regular representation with seeded random averaged probes.
// Labels follow a seed-independent order: by dimension, then by character.
std::vector<UnitaryIrrep> all_irreps(const FiniteSubgroup& group, std::uint64_t seed);

// The defining 2-dim representation, labelled by its match in `irreps`.
UnitaryIrrep tautological_rep(const FiniteSubgroup& group, std::span<const UnitaryIrrep> irreps);

// Class-weighted inner product <a, b> = (1/|G|) sum_C |C| conj(a_C) b_C.
cplx character_inner(const ConjugacyClassSet& classes, const CVec& a, const CVec& b);

// Makes a representation unitary by averaging the inner product over the group
// and rebasing with its Cholesky factor. No-op (up to rounding) when already unitary.
void unitarize(std::vector<Mat>& matrices);

// Worst homomorphism / unitarity residuals over all pairs.
double homomorphism_defect(const FiniteSubgroup& group, const UnitaryIrrep& rep);
double rep_unitarity_defect(const UnitaryIrrep& rep);

}  // namespace adestar
