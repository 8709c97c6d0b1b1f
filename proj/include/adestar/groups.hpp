#pragma once

#include "adestar/linalg.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace adestar {

enum class GroupFamily { BinaryCyclic, BinaryDihedral, BinaryTetrahedral, BinaryOctahedral, BinaryIcosahedral };

struct GroupKind {
  GroupFamily family = GroupFamily::BinaryTetrahedral;
  int n = 0;  // only meaningful for BinaryCyclic (group order) and BinaryDihedral (|G| = 4n)

  static GroupKind cyclic(int n) { return {GroupFamily::BinaryCyclic, n}; }
  static GroupKind dihedral(int n) { return {GroupFamily::BinaryDihedral, n}; }
  static GroupKind tetrahedral() { return {GroupFamily::BinaryTetrahedral, 0}; }
  static GroupKind octahedral() { return {GroupFamily::BinaryOctahedral, 0}; }
  static GroupKind icosahedral() { return {GroupFamily::BinaryIcosahedral, 0}; }

  bool operator==(const GroupKind&) const = default;
};

// Accepts "BT", "BO", "BI", "BD", "BC" and the long names
// ("BinaryTetrahedral", ...). `n` is required for the cyclic/dihedral kinds.
GroupKind parse_group_kind(const std::string& name, int n = 0);
std::string group_kind_name(const GroupKind& kind);

struct GroupElement {
  Mat2 matrix;
  int index = 0;
};

/// A finite subgroup of SU(2) with its Cayley table.
///
/// Elements are ordered deterministically: identity first, then by the entries
/// rounded to a 1e-6 grid. All members are immutable after construction.
class FiniteSubgroup {
 public:
  static constexpr double kIdentifyTol = 1e-6;
  static constexpr int kMaxOrder = 1000;

  const GroupKind& kind() const { return kind_; }
  int order() const { return static_cast<int>(elements_.size()); }
  const std::vector<GroupElement>& elements() const { return elements_; }
  const Mat2& matrix(int g) const { return elements_[static_cast<std::size_t>(g)].matrix; }
  int identity() const { return 0; }
  int tau() const { return tau_; }
  int mul(int g, int h) const { return table_[static_cast<std::size_t>(g * order() + h)]; }
  int inverse(int g) const { return inverse_[static_cast<std::size_t>(g)]; }

  // Index of the element equal to m within kIdentifyTol, or -1.
  int find(const Mat2& m) const;

  // FNV-1a digest of the table, row-major in element order.
  std::uint64_t table_checksum() const;

 private:
  friend FiniteSubgroup group_from_elements(const GroupKind& kind, const std::vector<Mat2>& matrices);

  GroupKind kind_;
  std::vector<GroupElement> elements_;
  std::vector<int> table_;
  std::vector<int> inverse_;
  int tau_ = -1;
  std::map<std::array<std::int64_t, 8>, int> lookup_;
};

FiniteSubgroup build_group(const GroupKind& kind);

// Group with exactly these elements in this order (identity first), e.g. as
// read back from a file. Throws ClosureOverflow if they are not closed.
FiniteSubgroup group_from_elements(const GroupKind& kind, const std::vector<Mat2>& matrices);

int element_order(const FiniteSubgroup& group, int g);
std::vector<int> centralizer(const FiniteSubgroup& group, int g);

// Unit quaternion a + b i + c j + d k as an SU(2) matrix.
Mat2 quaternion_matrix(double a, double b, double c, double d);

}  // namespace adestar
