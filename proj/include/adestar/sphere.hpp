#pragma once

#include "adestar/groups.hpp"
#include "adestar/linalg.hpp"

#include <array>
#include <string>
#include <vector>

namespace adestar {

/// Rotation of W_R = traceless Hermitian 2x2 matrices, written in the
/// orthonormal basis {sigma_x/2, sigma_y/2, sigma_z/2}.
struct SO3Element {
  Rot3 matrix;
  int source = 0;  // smaller of the two preimages in the group
};

Rot3 so3_matrix(const Mat2& u);

// Gamma' = image of the group, one entry per pair {g, -g}.
std::vector<SO3Element> so3_image(const FiniteSubgroup& group);

// Elements of the group (both preimages) whose rotation fixes x.
std::vector<int> stabilizer(const FiniteSubgroup& group, const Vec3& x, double tol = 1e-8);

std::vector<Vec3> orbit(const FiniteSubgroup& group, const Vec3& x, double tol = 1e-8);

// Pole is used only for cyclic groups, whose special orbits are the two
// poles of the rotation axis.
enum class OrbitKind { FaceCenter, EdgeCenter, Vertex, Pole };
std::string orbit_kind_name(OrbitKind kind);

struct SpecialOrbit {
  OrbitKind kind = OrbitKind::Vertex;
  Vec3 representative;
  std::vector<Vec3> points;
  int stabilizer_order_in_image = 1;
  std::vector<int> stabilizer_elements;  // stabilizer of the representative, in the group
};

// Orbits of points whose stabilizer in Gamma' is nontrivial. The
// representative is the point with the largest (z, y, x).
std::vector<SpecialOrbit> special_orbits(const FiniteSubgroup& group);

const SpecialOrbit& orbit_of_kind(const std::vector<SpecialOrbit>& orbits, OrbitKind kind);

/// Quadrilateral A-B-A'-C made of the two spherical triangles (A, B, C) and
/// (A', B, C). Mesh nodes are normalize(i X + j B + k C) with i + j + k = N,
/// X = A on side 0 and X = A' on side 1; nodes with i = 0 are shared.
struct DomainNode {
  Vec3 x;
  int side = 0;
  int i = 0, j = 0, k = 0;
};

struct FundamentalDomain {
  Vec3 A, B, C, A_prime;
  // Rotations in Gamma'; a fixes A, b fixes B, c fixes C, cA = A', bA' = A, abc = e.
  Rot3 a, b, c;
  // Lifts in the group with lift_a * lift_b * lift_c = identity.
  int lift_a = 0, lift_b = 0, lift_c = 0;
  int order_a = 1, order_b = 2, order_c = 1;  // stabilizer orders in Gamma'
  // Signed rotation angles about the outward normals (counterclockwise seen
  // from outside is positive).
  double angle_a = 0, angle_b = 0, angle_c = 0;

  double h = 0;
  int N = 0;
  std::vector<DomainNode> nodes;
  std::vector<std::array<int, 3>> triangles;
  std::vector<std::vector<int>> neighbours;
  int node_A = -1, node_B = -1, node_C = -1, node_A_prime = -1;
  // Boundary identifications: b maps segment BA' onto BA, c maps CA onto CA'.
  // Entries are (source, target) node pairs; endpoints included.
  std::vector<std::pair<int, int>> b_pairs;
  std::vector<std::pair<int, int>> c_pairs;

  int node(int side, int i, int j) const;
  bool on_boundary(int n) const;
  std::string orientation() const { return "counterclockwise seen from outside"; }
};

FundamentalDomain fundamental_domain(const FiniteSubgroup& group, double h);
// Same geometry with a new mesh of size h.
FundamentalDomain remesh(FundamentalDomain domain, double h);

double geodesic_distance(const Vec3& p, const Vec3& q);

}  // namespace adestar
