#include "adestar/sphere.hpp"

#include "adestar/error.hpp"

#include <Eigen/Geometry>

#include <algorithm>
#include <cmath>

namespace adestar {

namespace {

const std::array<Mat2, 3>& pauli() {
  static const std::array<Mat2, 3> s = [] {
    std::array<Mat2, 3> out;
    out[0] << 0, 1, 1, 0;
    out[1] << 0, -kI, kI, 0;
    out[2] << 1, 0, 0, -1;
    return out;
  }();
  return s;
}

void add_unique(std::vector<Vec3>& pts, const Vec3& x, double tol) {
  for (const Vec3& p : pts)
    if ((p - x).cwiseAbs().maxCoeff() <= tol) return;
  pts.push_back(x);
}

bool contains(const std::vector<Vec3>& pts, const Vec3& x, double tol) {
  return std::any_of(pts.begin(), pts.end(), [&](const Vec3& p) { return (p - x).cwiseAbs().maxCoeff() <= tol; });
}

// Larger (z, y, x) wins, comparing on a 1e-9 grid.
bool lex_greater(const Vec3& p, const Vec3& q) {
  for (int k = 2; k >= 0; --k) {
    const long a = std::lround(p(k) * 1e9), b = std::lround(q(k) * 1e9);
    if (a != b) return a > b;
  }
  return false;
}

Rot3 rotation(const Vec3& axis, double angle) { return Eigen::AngleAxisd(angle, axis.normalized()).toRotationMatrix(); }

// Element of the group (smaller preimage) realizing the rotation r.
int element_for(const FiniteSubgroup& group, const Rot3& r) {
  for (const SO3Element& e : so3_image(group))
    if ((e.matrix - r).cwiseAbs().maxCoeff() <= 1e-8) return e.source;
  throw Error(ErrorCode::NotFound, "rotation is not in the image of the group");
}

double signed_angle(const Rot3& r, const Vec3& axis) {
  const Eigen::AngleAxisd aa(r);
  return aa.axis().dot(axis) >= 0 ? aa.angle() : -aa.angle();
}

double corner_angle(const Vec3& at, const Vec3& p, const Vec3& q) {
  const Vec3 tp = (p - at * at.dot(p)).normalized();
  const Vec3 tq = (q - at * at.dot(q)).normalized();
  return std::acos(std::clamp(tp.dot(tq), -1.0, 1.0));
}

}  // namespace

double geodesic_distance(const Vec3& p, const Vec3& q) {
  return std::atan2(p.cross(q).norm(), p.dot(q));
}

Rot3 so3_matrix(const Mat2& u) {
  Rot3 r;
  const auto& s = pauli();
  for (int j = 0; j < 3; ++j)
    for (int k = 0; k < 3; ++k) r(j, k) = 0.5 * (s[static_cast<std::size_t>(j)] * u * s[static_cast<std::size_t>(k)] * u.adjoint()).trace().real();
  return r;
}

std::vector<SO3Element> so3_image(const FiniteSubgroup& group) {
  std::vector<SO3Element> out;
  for (int g = 0; g < group.order(); ++g)
    if (g < group.mul(group.tau(), g)) out.push_back({so3_matrix(group.matrix(g)), g});
  return out;
}

std::vector<int> stabilizer(const FiniteSubgroup& group, const Vec3& x, double tol) {
  std::vector<int> out;
  for (int g = 0; g < group.order(); ++g)
    if ((so3_matrix(group.matrix(g)) * x - x).norm() <= tol) out.push_back(g);
  return out;
}

std::vector<Vec3> orbit(const FiniteSubgroup& group, const Vec3& x, double tol) {
  std::vector<Vec3> out;
  for (const SO3Element& e : so3_image(group)) add_unique(out, e.matrix * x, tol);
  return out;
}

std::string orbit_kind_name(OrbitKind kind) {
  switch (kind) {
    case OrbitKind::FaceCenter: return "FaceCenter";
    case OrbitKind::EdgeCenter: return "EdgeCenter";
    case OrbitKind::Vertex: return "Vertex";
    case OrbitKind::Pole: return "Pole";
  }
  return "?";
}

std::vector<SpecialOrbit> special_orbits(const FiniteSubgroup& group) {
  constexpr double tol = 1e-8;
  const std::vector<SO3Element> image = so3_image(group);

  // Axes of all nontrivial rotations.
  std::vector<Vec3> special;
  for (const SO3Element& e : image) {
    if ((e.matrix - Rot3::Identity()).cwiseAbs().maxCoeff() <= tol) continue;
    const Vec3 axis = Eigen::AngleAxisd(e.matrix).axis().normalized();
    add_unique(special, axis, tol);
    add_unique(special, -axis, tol);
  }

  std::vector<SpecialOrbit> orbits;
  std::vector<bool> used(special.size(), false);
  for (std::size_t s = 0; s < special.size(); ++s) {
    if (used[s]) continue;
    SpecialOrbit o;
    o.points = orbit(group, special[s], tol);
    for (std::size_t t = 0; t < special.size(); ++t)
      if (contains(o.points, special[t], tol)) used[t] = true;
    o.representative = o.points.front();
    for (const Vec3& p : o.points)
      if (lex_greater(p, o.representative)) o.representative = p;
    o.stabilizer_order_in_image = static_cast<int>(image.size() / o.points.size());
    o.stabilizer_elements = stabilizer(group, o.representative, tol);
    orbits.push_back(std::move(o));
  }

  const GroupFamily fam = group.kind().family;
  auto holding = [&](const Vec3& x) {
    for (std::size_t k = 0; k < orbits.size(); ++k)
      if (contains(orbits[k].points, x, 1e-7)) return static_cast<int>(k);
    return -1;
  };
  if (fam == GroupFamily::BinaryCyclic) {
    for (auto& o : orbits) o.kind = OrbitKind::Pole;
  } else if (fam == GroupFamily::BinaryDihedral) {
    const int face = holding(Vec3::UnitZ()), vertex = holding(Vec3::UnitY());
    for (std::size_t k = 0; k < orbits.size(); ++k)
      orbits[k].kind = static_cast<int>(k) == face     ? OrbitKind::FaceCenter
                       : static_cast<int>(k) == vertex ? OrbitKind::Vertex
                                                       : OrbitKind::EdgeCenter;
  } else if (fam == GroupFamily::BinaryTetrahedral) {
    const int vertex = holding(Vec3(1, 1, 1).normalized());
    for (std::size_t k = 0; k < orbits.size(); ++k)
      orbits[k].kind = static_cast<int>(k) == vertex                 ? OrbitKind::Vertex
                       : orbits[k].stabilizer_order_in_image == 2 ? OrbitKind::EdgeCenter
                                                                    : OrbitKind::FaceCenter;
  } else {
    std::vector<int> orders;
    for (const auto& o : orbits) orders.push_back(o.stabilizer_order_in_image);
    std::sort(orders.begin(), orders.end());
    for (auto& o : orbits)
      o.kind = o.stabilizer_order_in_image == orders.back() ? OrbitKind::Vertex
               : o.stabilizer_order_in_image == 2          ? OrbitKind::EdgeCenter
                                                            : OrbitKind::FaceCenter;
  }
  std::sort(orbits.begin(), orbits.end(), [](const auto& a, const auto& b) { return a.kind < b.kind; });
  if (fam != GroupFamily::BinaryCyclic) {
    if (orbits.size() != 3 || orbits[0].kind != OrbitKind::FaceCenter || orbits[1].kind != OrbitKind::EdgeCenter ||
        orbits[2].kind != OrbitKind::Vertex)
      throw Error(ErrorCode::PreconditionFailed, "expected one face, edge and vertex orbit for " + group_kind_name(group.kind()));
  }
  return orbits;
}

const SpecialOrbit& orbit_of_kind(const std::vector<SpecialOrbit>& orbits, OrbitKind kind) {
  for (const auto& o : orbits)
    if (o.kind == kind) return o;
  throw Error(ErrorCode::NotFound, "no orbit of kind " + orbit_kind_name(kind));
}

int FundamentalDomain::node(int side, int i, int j) const {
  // Layout: side 0 nodes row by row in i, then side 1 rows i = 1..N.
  auto row_start = [this](int i) { return i * (N + 1) - i * (i - 1) / 2; };
  if (i == 0 || side == 0) return row_start(i) + j;
  const int side0 = row_start(N + 1);
  return side0 + row_start(i) - row_start(1) + j;
}

bool FundamentalDomain::on_boundary(int n) const {
  const DomainNode& d = nodes[static_cast<std::size_t>(n)];
  return d.j == 0 || d.k == 0;
}

namespace {

void check_mesh_size(double h) {
  if (!(h > 0.0) || h > 0.2) throw Error(ErrorCode::MeshTooCoarse, "mesh size must lie in (0, 0.2], got " + std::to_string(h));
}

}  // namespace

FundamentalDomain fundamental_domain(const FiniteSubgroup& group, double h) {
  if (group.kind().family == GroupFamily::BinaryCyclic)
    throw Error(ErrorCode::PreconditionFailed, "fundamental domain needs a non-cyclic group");
  check_mesh_size(h);

  const auto orbits = special_orbits(group);
  const SpecialOrbit& face = orbit_of_kind(orbits, OrbitKind::FaceCenter);
  const SpecialOrbit& edge = orbit_of_kind(orbits, OrbitKind::EdgeCenter);
  const SpecialOrbit& vertex = orbit_of_kind(orbits, OrbitKind::Vertex);

  FundamentalDomain d;
  d.C = vertex.representative;
  d.A = face.points.front();
  for (const Vec3& p : face.points) {
    const double dp = geodesic_distance(p, d.C), da = geodesic_distance(d.A, d.C);
    if (dp < da - 1e-9 || (dp < da + 1e-9 && lex_greater(p, d.A))) d.A = p;
  }
  double best = 1e300;
  for (const Vec3& p : edge.points) {
    if (Rot3((Rot3() << d.A, p, d.C).finished()).determinant() <= 1e-9) continue;
    const double s = geodesic_distance(d.A, p) + geodesic_distance(p, d.C);
    if (s < best - 1e-9) {
      best = s;
      d.B = p;
    }
  }
  if (best > 1e299) throw Error(ErrorCode::NotFound, "no edge center adjacent to the chosen face and vertex");

  d.order_a = face.stabilizer_order_in_image;
  d.order_b = edge.stabilizer_order_in_image;
  d.order_c = vertex.stabilizer_order_in_image;
  const double angle_A = corner_angle(d.A, d.B, d.C), angle_B = corner_angle(d.B, d.A, d.C),
               angle_C = corner_angle(d.C, d.A, d.B);
  if (std::abs(angle_A - kPi / d.order_a) > 1e-8 || std::abs(angle_B - kPi / 2) > 1e-8 ||
      std::abs(angle_C - kPi / d.order_c) > 1e-8)
    throw Error(ErrorCode::PreconditionFailed, "chosen triangle is not a fundamental triangle");

  d.b = rotation(d.B, kPi);
  d.A_prime = d.b * d.A;
  d.c = rotation(d.C, 2 * kPi / d.order_c);
  if ((d.c * d.A - d.A_prime).norm() > 1e-8) d.c = rotation(d.C, -2 * kPi / d.order_c);
  if ((d.c * d.A - d.A_prime).norm() > 1e-8) throw Error(ErrorCode::PreconditionFailed, "no rotation about C maps A to A'");
  d.a = (d.b * d.c).transpose();
  if ((d.a * d.A - d.A).norm() > 1e-8) throw Error(ErrorCode::PreconditionFailed, "a does not fix A");
  d.angle_a = signed_angle(d.a, d.A);
  d.angle_b = signed_angle(d.b, d.B);
  d.angle_c = signed_angle(d.c, d.C);
  d.lift_b = element_for(group, d.b);
  d.lift_c = element_for(group, d.c);
  d.lift_a = group.inverse(group.mul(d.lift_b, d.lift_c));

  return remesh(std::move(d), h);
}

FundamentalDomain remesh(FundamentalDomain d, double h) {
  check_mesh_size(h);
  d.h = h;
  const double longest = std::max({geodesic_distance(d.A, d.B), geodesic_distance(d.B, d.C), geodesic_distance(d.A, d.C)});
  d.N = std::max(2, static_cast<int>(std::ceil(longest / h)));
  for (;;) {
    d.nodes.clear();
    for (int side = 0; side < 2; ++side) {
      const Vec3& X = side == 0 ? d.A : d.A_prime;
      for (int i = side; i <= d.N; ++i)
        for (int j = 0; i + j <= d.N; ++j) {
          const int k = d.N - i - j;
          d.nodes.push_back({(i * X + j * d.B + k * d.C).normalized(), side, i, j, k});
        }
    }
    d.triangles.clear();
    for (int side = 0; side < 2; ++side)
      for (int i = 0; i < d.N; ++i)
        for (int j = 0; i + j < d.N; ++j) {
          d.triangles.push_back({d.node(side, i, j), d.node(side, i + 1, j), d.node(side, i, j + 1)});
          if (i + j + 2 <= d.N) d.triangles.push_back({d.node(side, i + 1, j), d.node(side, i + 1, j + 1), d.node(side, i, j + 1)});
        }
    double worst = 0;
    for (const auto& t : d.triangles)
      for (int e = 0; e < 3; ++e)
        worst = std::max(worst, geodesic_distance(d.nodes[static_cast<std::size_t>(t[static_cast<std::size_t>(e)])].x,
                                                  d.nodes[static_cast<std::size_t>(t[static_cast<std::size_t>((e + 1) % 3)])].x));
    if (worst <= h) break;
    ++d.N;
  }

  d.neighbours.assign(d.nodes.size(), {});
  for (const auto& t : d.triangles)
    for (int e = 0; e < 3; ++e) {
      const int p = t[static_cast<std::size_t>(e)], q = t[static_cast<std::size_t>((e + 1) % 3)];
      d.neighbours[static_cast<std::size_t>(p)].push_back(q);
      d.neighbours[static_cast<std::size_t>(q)].push_back(p);
    }
  for (auto& nb : d.neighbours) {
    std::sort(nb.begin(), nb.end());
    nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
  }

  d.b_pairs.clear();
  d.c_pairs.clear();
  d.node_A = d.node(0, d.N, 0);
  d.node_A_prime = d.node(1, d.N, 0);
  d.node_B = d.node(0, 0, d.N);
  d.node_C = d.node(0, 0, 0);
  for (int i = 0; i <= d.N; ++i) {
    d.b_pairs.emplace_back(d.node(1, i, d.N - i), d.node(0, i, d.N - i));
    d.c_pairs.emplace_back(d.node(0, i, 0), d.node(1, i, 0));
  }
  return d;
}

}  // namespace adestar
