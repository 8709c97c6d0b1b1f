#include "adestar/groups.hpp"

#include "adestar/error.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>

namespace adestar {

namespace {

using Key = std::array<std::int64_t, 8>;

Key rounded_key(const Mat2& m) {
  Key key{};
  for (int k = 0; k < 4; ++k) {
    const cplx z = m(k / 2, k % 2);
    key[static_cast<std::size_t>(2 * k)] = std::llround(z.real() / FiniteSubgroup::kIdentifyTol);
    key[static_cast<std::size_t>(2 * k + 1)] = std::llround(z.imag() / FiniteSubgroup::kIdentifyTol);
  }
  return key;
}

std::vector<Mat2> generators(const GroupKind& kind) {
  const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
  const Mat2 qi = quaternion_matrix(0, 1, 0, 0);
  const Mat2 qj = quaternion_matrix(0, 0, 1, 0);
  const Mat2 hurwitz = quaternion_matrix(0.5, 0.5, 0.5, 0.5);
  switch (kind.family) {
    case GroupFamily::BinaryCyclic: {
      const double t = 2.0 * kPi / kind.n;
      return {quaternion_matrix(std::cos(t), std::sin(t), 0, 0)};
    }
    case GroupFamily::BinaryDihedral: {
      const double t = kPi / kind.n;
      return {quaternion_matrix(std::cos(t), std::sin(t), 0, 0), qj};
    }
    case GroupFamily::BinaryTetrahedral:
      return {qi, qj, hurwitz};
    case GroupFamily::BinaryOctahedral:
      return {qi, qj, hurwitz, quaternion_matrix(std::sqrt(0.5), std::sqrt(0.5), 0, 0)};
    case GroupFamily::BinaryIcosahedral:
      return {qi, hurwitz, quaternion_matrix(phi / 2.0, 0.5 / phi, 0.5, 0.0)};
  }
  return {};
}

}  // namespace

Mat2 quaternion_matrix(double a, double b, double c, double d) {
  Mat2 m;
  m << cplx(a, b), cplx(c, d), cplx(-c, d), cplx(a, -b);
  return m;
}

GroupKind parse_group_kind(const std::string& name, int n) {
  GroupKind kind;
  if (name == "BT" || name == "BinaryTetrahedral") {
    kind = GroupKind::tetrahedral();
  } else if (name == "BO" || name == "BinaryOctahedral") {
    kind = GroupKind::octahedral();
  } else if (name == "BI" || name == "BinaryIcosahedral") {
    kind = GroupKind::icosahedral();
  } else if (name == "BD" || name == "BinaryDihedral") {
    kind = GroupKind::dihedral(n);
  } else if (name == "BC" || name == "BinaryCyclic") {
    kind = GroupKind::cyclic(n);
  } else {
    throw Error(ErrorCode::InvalidArgument, "unknown group kind '" + name + "'");
  }
  return kind;
}

std::string group_kind_name(const GroupKind& kind) {
  switch (kind.family) {
    case GroupFamily::BinaryCyclic: return "BinaryCyclic(" + std::to_string(kind.n) + ")";
    case GroupFamily::BinaryDihedral: return "BinaryDihedral(" + std::to_string(kind.n) + ")";
    case GroupFamily::BinaryTetrahedral: return "BinaryTetrahedral";
    case GroupFamily::BinaryOctahedral: return "BinaryOctahedral";
    case GroupFamily::BinaryIcosahedral: return "BinaryIcosahedral";
  }
  return "?";
}

int FiniteSubgroup::find(const Mat2& m) const {
  if (auto it = lookup_.find(rounded_key(m)); it != lookup_.end()) return it->second;
  // A value sitting on a rounding boundary can miss the grid lookup.
  for (const auto& e : elements_)
    if (max_abs(e.matrix - m) <= kIdentifyTol) return e.index;
  return -1;
}

std::uint64_t FiniteSubgroup::table_checksum() const {
  std::uint64_t h = 1469598103934665603ULL;
  for (int v : table_) {
    h ^= static_cast<std::uint64_t>(v);
    h *= 1099511628211ULL;
  }
  return h;
}

FiniteSubgroup build_group(const GroupKind& kind) {
  if (kind.family == GroupFamily::BinaryCyclic || kind.family == GroupFamily::BinaryDihedral) {
    if (kind.n < 2) throw Error(ErrorCode::InvalidArgument, group_kind_name(kind) + " needs n >= 2");
  }
  if (kind.family == GroupFamily::BinaryCyclic && kind.n % 2 != 0) {
    throw Error(ErrorCode::OddCycleUnsupported,
                "cyclic group of odd order " + std::to_string(kind.n) + " does not contain -I");
  }

  const std::vector<Mat2> gens = generators(kind);
  std::vector<Mat2> found{Mat2::Identity()};
  std::map<Key, int> seen{{rounded_key(Mat2::Identity()), 0}};
  auto locate = [&](const Mat2& m) -> int {
    if (auto it = seen.find(rounded_key(m)); it != seen.end()) return it->second;
    for (std::size_t k = 0; k < found.size(); ++k)
      if (max_abs(found[k] - m) <= FiniteSubgroup::kIdentifyTol) return static_cast<int>(k);
    return -1;
  };
  std::deque<int> queue{0};
  while (!queue.empty()) {
    const int cur = queue.front();
    queue.pop_front();
    for (const Mat2& g : gens) {
      const Mat2 prod = found[static_cast<std::size_t>(cur)] * g;
      if (locate(prod) >= 0) continue;
      if (static_cast<int>(found.size()) >= FiniteSubgroup::kMaxOrder) {
        throw Error(ErrorCode::ClosureOverflow,
                    group_kind_name(kind) + " closure exceeded " + std::to_string(FiniteSubgroup::kMaxOrder));
      }
      found.push_back(prod);
      seen.emplace(rounded_key(prod), static_cast<int>(found.size()) - 1);
      queue.push_back(static_cast<int>(found.size()) - 1);
    }
  }

  // Deterministic order: identity first, then by rounded entries.
  std::vector<int> order(found.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin() + 1, order.end(), [&](int a, int b) {
    return rounded_key(found[static_cast<std::size_t>(a)]) < rounded_key(found[static_cast<std::size_t>(b)]);
  });

  std::vector<Mat2> sorted;
  for (int k : order) sorted.push_back(found[static_cast<std::size_t>(k)]);
  return group_from_elements(kind, sorted);
}

FiniteSubgroup group_from_elements(const GroupKind& kind, const std::vector<Mat2>& matrices) {
  if (matrices.empty() || max_abs(matrices.front() - Mat2::Identity()) > FiniteSubgroup::kIdentifyTol)
    throw Error(ErrorCode::InvalidArgument, "element list must start with the identity");
  FiniteSubgroup group;
  group.kind_ = kind;
  for (std::size_t k = 0; k < matrices.size(); ++k) {
    group.elements_.push_back({matrices[k], static_cast<int>(k)});
    group.lookup_.emplace(rounded_key(matrices[k]), static_cast<int>(k));
  }

  const int n = group.order();
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (max_abs(group.matrix(a) - group.matrix(b)) <= FiniteSubgroup::kIdentifyTol)
        throw Error(ErrorCode::ClosureOverflow, "elements " + std::to_string(a) + " and " + std::to_string(b) +
                                                    " are not separated at the identification tolerance");

  group.table_.resize(static_cast<std::size_t>(n * n));
  group.inverse_.assign(static_cast<std::size_t>(n), -1);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      const int c = group.find(group.matrix(a) * group.matrix(b));
      if (c < 0) throw Error(ErrorCode::ClosureOverflow, "product left the group; generators or tolerance are bad");
      group.table_[static_cast<std::size_t>(a * n + b)] = c;
      if (c == 0) group.inverse_[static_cast<std::size_t>(a)] = b;
    }

  group.tau_ = group.find(-Mat2::Identity());
  if (group.tau_ < 0) throw Error(ErrorCode::OddCycleUnsupported, group_kind_name(kind) + " lacks -I");
  return group;
}

int element_order(const FiniteSubgroup& group, int g) {
  int k = 1;
  for (int p = g; p != group.identity(); p = group.mul(p, g)) ++k;
  return k;
}

std::vector<int> centralizer(const FiniteSubgroup& group, int g) {
  std::vector<int> out;
  for (int h = 0; h < group.order(); ++h)
    if (group.mul(h, g) == group.mul(g, h)) out.push_back(h);
  return out;
}

}  // namespace adestar
