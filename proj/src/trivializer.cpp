#include "adestar/trivializer.hpp"

#include "adestar/error.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <sstream>

namespace adestar {

namespace {

constexpr double kRelaxTol = 1e-8;
constexpr int kMaxSweeps = 100000;

Mat normalize_det(const Mat& m) {
  const cplx det = m.determinant();
  return m * std::polar(1.0, -std::arg(det) / static_cast<double>(m.rows()));
}

double commutator(const Mat& a, const Mat& b) { return max_abs(a * b - b * a); }

// Rotation angle of the tangent direction towards q at p, measured from the
// direction towards q0 in the sense that makes `inside` positive, in [0, 2pi).
struct Wedge {
  Vec3 p, e0, e1;
  double span = 0;

  Wedge(const Vec3& p_, const Vec3& q0, const Vec3& q1, const Vec3& inside) : p(p_) {
    e0 = tangent(q0);
    e1 = p.cross(e0);
    if (raw(tangent(inside)) < 0) e1 = -e1;
    span = angle(q1);
  }
  Vec3 tangent(const Vec3& q) const { return (q - p.dot(q) * p).normalized(); }
  double raw(const Vec3& v) const { return std::atan2(e1.dot(v), e0.dot(v)); }
  double angle(const Vec3& q) const {
    double a = raw(tangent(q));
    if (a < -1e-12) a += 2 * kPi;
    return std::max(a, 0.0);
  }
  double fraction(const Vec3& q) const { return std::clamp(angle(q) / span, 0.0, 1.0); }
};

}  // namespace

const char* marked_point_name(MarkedPoint p) {
  switch (p) {
    case MarkedPoint::A: return "A";
    case MarkedPoint::B: return "B";
    case MarkedPoint::C: return "C";
    case MarkedPoint::A_prime: return "A'";
  }
  return "?";
}

BlockAlgebra BlockAlgebra::standard(const std::vector<int>& sizes) {
  int d = 0;
  for (int s : sizes) d += s;
  return {sizes, Mat::Identity(d, d)};
}

std::vector<Mat> BlockAlgebra::basis() const {
  std::vector<Mat> out;
  const int d = dim();
  int start = 0;
  for (int s : sizes) {
    for (int r = 0; r < s; ++r)
      for (int c = 0; c < s; ++c) {
        Mat e = Mat::Zero(d, d);
        e(start + r, start + c) = 1.0;
        out.push_back(U * e * U.adjoint());
      }
    start += s;
  }
  return out;
}

Mat BlockAlgebra::project(const Mat& x) const {
  const Mat y = U.adjoint() * x * U;
  Mat z = Mat::Zero(y.rows(), y.cols());
  int start = 0;
  for (int s : sizes) {
    z.block(start, start, s, s) = y.block(start, start, s, s);
    start += s;
  }
  return U * z * U.adjoint();
}

double BlockAlgebra::leakage(const Mat& x) const { return max_abs(x - project(x)); }

std::vector<int> BlockAlgebra::size_multiset() const {
  std::vector<int> s = sizes;
  std::sort(s.begin(), s.end(), std::greater<>());
  return s;
}

Mat SegmentMap::at(double s) const {
  if (samples.empty()) throw Error(ErrorCode::PreconditionFailed, "segment map has no samples");
  if (samples.size() == 1) return samples.front();
  const double pos = std::clamp(s, 0.0, 1.0) * static_cast<double>(samples.size() - 1);
  const std::size_t i = std::min(static_cast<std::size_t>(pos), samples.size() - 2);
  const double f = pos - static_cast<double>(i);
  if (f == 0.0) return samples[i];
  return project_special_unitary((1.0 - f) * samples[i] + f * samples[i + 1]);
}

double ClutchingReport::worst() const { return std::max(*std::max_element(conditions.begin(), conditions.end()), determinant); }

ClutchingReport check_clutching(const ClutchingData& c) {
  ClutchingReport r;
  const Mat mb_B = c.m_b.at(0), mb_A = c.m_b.at(1), mc_C = c.m_c.at(0), mc_A = c.m_c.at(1);
  for (const Mat& u : c.at(MarkedPoint::B).basis()) r.conditions[0] = std::max(r.conditions[0], commutator(mb_B, u));
  for (const Mat& u : c.at(MarkedPoint::C).basis()) r.conditions[1] = std::max(r.conditions[1], commutator(mc_C, u));
  for (const Mat& u : c.at(MarkedPoint::A).basis()) {
    r.conditions[2] = std::max(r.conditions[2], commutator(mb_A * mc_A, u));
    r.conditions[3] = std::max(r.conditions[3], c.at(MarkedPoint::A_prime).leakage(mc_A * u * mc_A.adjoint()));
  }
  if (c.at(MarkedPoint::A).size_multiset() != c.at(MarkedPoint::A_prime).size_multiset()) r.conditions[3] = 1.0;
  for (const auto* m : {&c.m_b, &c.m_c})
    for (const Mat& s : m->samples) r.determinant = std::max(r.determinant, std::abs(s.determinant() - cplx(1.0)));
  return r;
}

namespace {

bool has_commutant_log(const Mat& u, const BlockAlgebra& m) {
  try {
    commutant_path(u, m, 1);
    return true;
  } catch (const Error& e) {
    if (e.code() == ErrorCode::LogBranchFailure) return false;
    throw;
  }
}

}  // namespace

ClutchingData equivariant_to_clutching(const FiniteSubgroup& group, const UnitaryIrrep& irrep, const FundamentalDomain& d) {
  ClutchingData c;
  c.dim = irrep.dim;
  const Vec3 points[] = {d.A, d.B, d.C, d.A_prime};
  for (std::size_t p = 0; p < 4; ++p) c.M[p] = BlockAlgebra::from(centralizer_algebra(group, irrep, points[p]));
  const Mat mb = normalize_det(irrep(d.lift_b));
  const Mat mc = normalize_det(irrep(d.lift_c));
  c.m_b.samples = {mb};
  c.m_c.samples = {mc};
  // Scaling by d-th roots of unity leaves the conjugation action alone; pick
  // the first pair that puts the holonomies at B, C and A' in the identity
  // component of their commutants.
  const int n = irrep.dim;
  for (int jb = 0; jb < n; ++jb)
    for (int jc = 0; jc < n; ++jc) {
      const Mat b = mb * std::polar(1.0, 2 * kPi * jb / n);
      const Mat cc = mc * std::polar(1.0, 2 * kPi * jc / n);
      if (has_commutant_log(b, c.M[1]) && has_commutant_log(cc.adjoint(), c.M[2]) && has_commutant_log(cc * b, c.M[3])) {
        c.m_b.samples = {b};
        c.m_c.samples = {cc};
        return c;
      }
    }
  return c;
}

ClutchingData equivariant_to_clutching(const GeneratorSystem& s, const FundamentalDomain& d) {
  return equivariant_to_clutching(s.group, s.irrep, d);
}

ClutchingData standard_clutching(const FiniteSubgroup& group, const UnitaryIrrep& irrep, const FundamentalDomain& d) {
  ClutchingData c;
  c.dim = irrep.dim;
  c.m_b.samples = {Mat::Identity(irrep.dim, irrep.dim)};
  c.m_c.samples = {Mat::Identity(irrep.dim, irrep.dim)};
  const Vec3 points[] = {d.A, d.B, d.C};
  for (std::size_t p = 0; p < 3; ++p) c.M[p] = BlockAlgebra::standard(centralizer_algebra(group, irrep, points[p]).sizes);
  c.M[3] = c.M[0];
  return c;
}

ClutchingData standard_clutching(const StarPreset& p, const FundamentalDomain& d) {
  const FiniteSubgroup group = build_group(p.group);
  for (const UnitaryIrrep& r : all_irreps(group, 1))
    if (r.dim == p.center_dim) return standard_clutching(group, r, d);
  throw Error(ErrorCode::NotFound, p.name + ": no irrep of the center dimension");
}

Mat CommutantPath::at(double s) const { return expm_antihermitian(s * log); }

CommutantPath commutant_path(const Mat& u, const BlockAlgebra& m, int samples) {
  if (unitarity_defect(u) > 1e-8 || std::abs(u.determinant() - cplx(1.0)) > 1e-8)
    throw Error(ErrorCode::PreconditionFailed, "path endpoint must be special unitary");
  const std::vector<Mat> basis = m.basis();
  for (const Mat& b : basis)
    if (commutator(u, b) > 1e-8) throw Error(ErrorCode::PreconditionFailed, "path endpoint does not commute with the algebra");

  // u commutes with every block of M, so in the basis U it is a scalar
  // lambda_k on block k; each block takes one branch of the logarithm.
  const Mat y = m.U.adjoint() * u * m.U;
  const std::size_t k = m.sizes.size();
  std::vector<double> theta(k);
  int start = 0;
  for (std::size_t c = 0; c < k; ++c) {
    const int n = m.sizes[c];
    theta[c] = std::arg(y.block(start, start, n, n).trace());
    start += n;
  }
  double total_phase = 0;
  for (std::size_t c = 0; c < k; ++c) total_phase += m.sizes[c] * theta[c];
  const long turns = std::lround(total_phase / (2 * kPi));

  // Integer shifts q_c in [-2, 2] with sum n_c q_c = turns, closest to the
  // principal branch; the first in lexicographic order wins ties.
  std::vector<int> q(k, -2), best;
  double best_cost = 1e300;
  for (;;) {
    long total = 0;
    double cost = 0;
    for (std::size_t c = 0; c < k; ++c) {
      total += static_cast<long>(m.sizes[c]) * q[c];
      cost += m.sizes[c] * std::abs(theta[c] - 2 * kPi * q[c]);
    }
    if (total == turns && cost < best_cost - 1e-12) {
      best_cost = cost;
      best = q;
    }
    std::size_t c = 0;
    while (c < k && ++q[c] > 2) q[c++] = -2;
    if (c == k) break;
  }
  if (best.empty()) throw Error(ErrorCode::LogBranchFailure, "no traceless logarithm within the commutant");

  CVec diag(m.dim());
  start = 0;
  for (std::size_t c = 0; c < k; ++c) {
    diag.segment(start, m.sizes[c]).setConstant(kI * (theta[c] - 2 * kPi * best[c]));
    start += m.sizes[c];
  }
  CommutantPath p;
  p.log = m.U * diag.asDiagonal() * m.U.adjoint();
  if (max_abs(expm_antihermitian(p.log) - u) > 1e-8) throw Error(ErrorCode::LogBranchFailure, "logarithm does not reproduce u");
  for (int s = 0; s < samples; ++s) {
    const Mat ps = p.at(samples == 1 ? 1.0 : static_cast<double>(s) / (samples - 1));
    for (const Mat& b : basis) p.commutator_defect = std::max(p.commutator_defect, commutator(ps, b));
    p.samples.push_back(ps);
  }
  return p;
}

namespace {

bool relax(GaugeField& g, const std::vector<bool>& fixed) {
  const FundamentalDomain& d = g.domain;
  const std::size_t n = d.nodes.size();
  // Start free nodes from the nearest fixed value.
  std::vector<bool> done = fixed;
  std::deque<int> queue;
  for (std::size_t v = 0; v < n; ++v)
    if (fixed[v]) queue.push_back(static_cast<int>(v));
  while (!queue.empty()) {
    const int v = queue.front();
    queue.pop_front();
    for (int w : d.neighbours[static_cast<std::size_t>(v)])
      if (!done[static_cast<std::size_t>(w)]) {
        done[static_cast<std::size_t>(w)] = true;
        g.t[static_cast<std::size_t>(w)] = g.t[static_cast<std::size_t>(v)];
        queue.push_back(w);
      }
  }
  for (g.sweeps = 0; g.sweeps < kMaxSweeps; ++g.sweeps) {
    double update = 0;
    for (std::size_t v = 0; v < n; ++v) {
      if (fixed[v]) continue;
      Mat sum = Mat::Zero(g.t[v].rows(), g.t[v].cols());
      for (int w : d.neighbours[v]) sum += g.t[static_cast<std::size_t>(w)];
      // Polar factor with the determinant phase removed, as in
      // project_special_unitary, sharing the SVD with the singularity test.
      Eigen::JacobiSVD<Mat> svd(sum, Eigen::ComputeFullU | Eigen::ComputeFullV);
      const RVec& sv = svd.singularValues();
      if (sv(sv.size() - 1) <= 1e-10 * sv(0)) return false;
      Mat next = svd.matrixU() * svd.matrixV().adjoint();
      next *= std::polar(1.0, -std::arg(next.determinant()) / static_cast<double>(next.rows()));
      update = std::max(update, max_abs(next - g.t[v]));
      g.t[v] = next;
    }
    g.last_update = update;
    if (update <= kRelaxTol) return true;
  }
  return false;
}

GaugeField construct(const ClutchingData& c1, const ClutchingData& c2, const FundamentalDomain& d) {
  GaugeField g;
  g.domain = d;
  const Vec3 marks[] = {d.A, d.B, d.C, d.A_prime};
  double d_min = 1e300;
  for (int p = 0; p < 4; ++p)
    for (int q = p + 1; q < 4; ++q) d_min = std::min(d_min, geodesic_distance(marks[p], marks[q]));
  g.disk_radius = std::min(3 * d.h, 0.3 * d_min);
  g.exclusion_radius = 0.35 * d_min;

  const std::array<MarkedPoint, 3> pts{MarkedPoint::A, MarkedPoint::B, MarkedPoint::C};
  for (MarkedPoint p : pts) {
    const BlockAlgebra& m1 = c1.at(p);
    const BlockAlgebra& m2 = c2.at(p);
    if (m1.size_multiset() != m2.size_multiset()) {
      std::ostringstream os;
      os << "block sizes differ at " << marked_point_name(p);
      throw Error(ErrorCode::PreconditionFailed, os.str());
    }
    // Both size lists are sorted descending, so block k maps to block k.
    g.u[static_cast<std::size_t>(p)] = normalize_det(m2.U * m1.U.adjoint());
  }
  const Mat& uA = g.u[0];
  const Mat& uB = g.u[1];
  const Mat& uC = g.u[2];
  const Mat mb1_B = c1.m_b.at(0), mb2_B = c2.m_b.at(0), mb1_Ap = c1.m_b.at(1), mb2_Ap = c2.m_b.at(1);
  const Mat mc1_C = c1.m_c.at(0), mc2_C = c2.m_c.at(0), mc1_A = c1.m_c.at(1), mc2_A = c2.m_c.at(1);
  g.u[3] = mc2_A * uA * mc1_A.adjoint();
  const Mat& uAp = g.u[3];

  const std::size_t n = d.nodes.size();
  const int dim = c1.dim;
  g.t.assign(n, Mat::Identity(dim, dim));
  std::vector<bool> fixed(n, false);
  auto set = [&](int node, const Mat& v) {
    g.t[static_cast<std::size_t>(node)] = v;
    fixed[static_cast<std::size_t>(node)] = true;
  };
  const double r = g.disk_radius;

  // Boundary arcs from A: constant collars of width r, geodesic in between.
  auto arc = [&](const Vec3& q, const Mat& u0, const Mat& u1, const Vec3& x) -> Mat {
    const double d0 = geodesic_distance(x, d.A), d1 = geodesic_distance(x, q);
    if (d0 <= r) return u0;
    if (d1 <= r) return u1;
    const double s = (d0 - r) / (d0 + d1 - 2 * r);
    return u0 * expm_antihermitian(s * traceless_log(u0.adjoint() * u1));
  };
  for (int i = 0; i <= d.N; ++i) {
    const int ab = d.node(0, i, d.N - i);
    set(ab, arc(d.B, uA, uB, d.nodes[static_cast<std::size_t>(ab)].x));
    const int ac = d.node(0, i, 0);
    set(ac, arc(d.C, uA, uC, d.nodes[static_cast<std::size_t>(ac)].x));
  }
  // Pushed to BA' and CA' through the clutching relations.
  for (const auto& [src, dst] : d.b_pairs) {
    if (src == d.node_B || src == d.node_A_prime) continue;
    const double s = static_cast<double>(d.nodes[static_cast<std::size_t>(src)].i) / d.N;
    set(src, c2.m_b.at(s).adjoint() * g.t[static_cast<std::size_t>(dst)] * c1.m_b.at(s));
  }
  for (const auto& [src, dst] : d.c_pairs) {
    if (src == d.node_C || src == d.node_A) continue;
    const double s = static_cast<double>(d.nodes[static_cast<std::size_t>(src)].i) / d.N;
    set(dst, c2.m_c.at(s) * g.t[static_cast<std::size_t>(src)] * c1.m_c.at(s).adjoint());
  }
  set(d.node_A, uA);
  set(d.node_B, uB);
  set(d.node_C, uC);
  set(d.node_A_prime, uAp);

  // Disks: t = start * p(tau), tau the angle fraction across the wedge.
  struct Disk {
    Vec3 p;
    Wedge wedge;
    Mat start;
    CommutantPath path;
  };
  std::vector<Disk> disks;
  disks.push_back({d.A, Wedge(d.A, d.B, d.C, 0.5 * (d.B + d.C)), uA, commutant_path(Mat::Identity(dim, dim), c1.at(MarkedPoint::A))});
  disks.push_back({d.B, Wedge(d.B, d.A, d.A_prime, d.C), uB,
                   commutant_path(uB.adjoint() * mb2_B.adjoint() * uB * mb1_B, c1.at(MarkedPoint::B))});
  disks.push_back({d.C, Wedge(d.C, d.A, d.A_prime, d.B), uC,
                   commutant_path(uC.adjoint() * mc2_C * uC * mc1_C.adjoint(), c1.at(MarkedPoint::C))});
  const Mat ap_end = mb2_Ap.adjoint() * uA * mb1_Ap;
  disks.push_back({d.A_prime, Wedge(d.A_prime, d.C, d.B, 0.5 * (d.B + d.C)), uAp,
                   commutant_path(uAp.adjoint() * ap_end, c1.at(MarkedPoint::A_prime))});
  for (std::size_t v = 0; v < n; ++v) {
    if (fixed[v]) continue;
    for (const Disk& k : disks)
      if (geodesic_distance(d.nodes[v].x, k.p) < r) {
        set(static_cast<int>(v), k.start * k.path.at(k.wedge.fraction(d.nodes[v].x)));
        break;
      }
  }

  if (!relax(g, fixed)) {
    std::ostringstream os;
    os << "relaxation stopped after " << g.sweeps << " sweeps with update " << g.last_update;
    throw Error(ErrorCode::RelaxationDiverged, os.str());
  }

  for (const auto& tri : d.triangles)
    for (int e = 0; e < 3; ++e) {
      const int p = tri[static_cast<std::size_t>(e)], q = tri[static_cast<std::size_t>((e + 1) % 3)];
      bool far = true;
      for (const Vec3& m : marks)
        far = far && geodesic_distance(d.nodes[static_cast<std::size_t>(p)].x, m) > g.exclusion_radius &&
              geodesic_distance(d.nodes[static_cast<std::size_t>(q)].x, m) > g.exclusion_radius;
      if (far) g.max_jump = std::max(g.max_jump, max_abs(g.t[static_cast<std::size_t>(p)] - g.t[static_cast<std::size_t>(q)]));
    }
  return g;
}

}  // namespace

GaugeField build_gauge(const ClutchingData& c1, const ClutchingData& c2, const FundamentalDomain& domain) {
  if (domain.h > 0.1 + 1e-12) throw Error(ErrorCode::PreconditionFailed, "gauge construction needs h <= 0.1");
  if (c1.dim != c2.dim) throw Error(ErrorCode::PreconditionFailed, "clutching data act on different spaces");
  try {
    return construct(c1, c2, domain);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::RelaxationDiverged) throw;
  }
  GaugeField g = construct(c1, c2, remesh(domain, domain.h / 2));
  g.refined = true;
  return g;
}

GaugeField build_gauge(const ClutchingData& c1, const ClutchingData& c2, const FiniteSubgroup& group, double h) {
  return build_gauge(c1, c2, fundamental_domain(group, h));
}

double GaugeReport::worst() const { return std::max({boundary_b, boundary_c, locality, membership, special_unitary}); }

GaugeReport check_gauge(const ClutchingData& c1, const ClutchingData& c2, const GaugeField& g) {
  const FundamentalDomain& d = g.domain;
  GaugeReport r;
  auto t = [&](int v) -> const Mat& { return g.t[static_cast<std::size_t>(v)]; };
  for (const auto& [src, dst] : d.b_pairs) {
    if (src == d.node_B || src == d.node_A_prime) continue;
    const double s = static_cast<double>(d.nodes[static_cast<std::size_t>(src)].i) / d.N;
    r.boundary_b = std::max(r.boundary_b, max_abs(c2.m_b.at(s) * t(src) - t(dst) * c1.m_b.at(s)));
  }
  for (const auto& [src, dst] : d.c_pairs) {
    if (src == d.node_C || src == d.node_A) continue;
    const double s = static_cast<double>(d.nodes[static_cast<std::size_t>(src)].i) / d.N;
    r.boundary_c = std::max(r.boundary_c, max_abs(c2.m_c.at(s) * t(src) - t(dst) * c1.m_c.at(s)));
  }
  const Vec3 marks[] = {d.A, d.B, d.C, d.A_prime};
  const int mark_nodes[] = {d.node_A, d.node_B, d.node_C, d.node_A_prime};
  for (std::size_t p = 0; p < 4; ++p) {
    const Mat& tp = t(mark_nodes[p]);
    for (const Mat& u : c1.M[p].basis()) {
      const Mat at_p = tp * u * tp.adjoint();
      r.membership = std::max(r.membership, c2.M[p].leakage(at_p));
      for (std::size_t v = 0; v < d.nodes.size(); ++v)
        if (geodesic_distance(d.nodes[v].x, marks[p]) < g.disk_radius)
          r.locality = std::max(r.locality, max_abs(g.t[v] * u * g.t[v].adjoint() - at_p));
    }
  }
  for (const Mat& m : g.t)
    r.special_unitary = std::max({r.special_unitary, unitarity_defect(m), std::abs(m.determinant() - cplx(1.0))});
  return r;
}

std::vector<Mat> apply_gauge(const GaugeField& g, std::span<const Mat> f) {
  if (f.size() != g.t.size()) throw Error(ErrorCode::PreconditionFailed, "samples do not match the gauge mesh");
  std::vector<Mat> out;
  out.reserve(f.size());
  for (std::size_t v = 0; v < f.size(); ++v) out.push_back(g.t[v] * f[v] * g.t[v].adjoint());
  return out;
}

double TransportReport::worst() const { return std::max({product, adjoint, membership, gluing}); }

TransportReport check_transport(const ClutchingData& c2, const GaugeField& g, std::span<const Mat> f, std::span<const Mat> h) {
  const FundamentalDomain& d = g.domain;
  const std::vector<Mat> tf = apply_gauge(g, f), th = apply_gauge(g, h);
  std::vector<Mat> fh, fstar;
  for (std::size_t v = 0; v < f.size(); ++v) {
    fh.push_back(f[v] * h[v]);
    fstar.push_back(f[v].adjoint());
  }
  const std::vector<Mat> tfh = apply_gauge(g, fh), tfstar = apply_gauge(g, fstar);
  TransportReport r;
  for (std::size_t v = 0; v < f.size(); ++v) {
    r.product = std::max(r.product, max_abs(tfh[v] - tf[v] * th[v]));
    r.adjoint = std::max(r.adjoint, max_abs(tfstar[v] - tf[v].adjoint()));
  }
  const int mark_nodes[] = {d.node_A, d.node_B, d.node_C, d.node_A_prime};
  for (std::size_t p = 0; p < 4; ++p)
    r.membership = std::max(r.membership, c2.M[p].leakage(tf[static_cast<std::size_t>(mark_nodes[p])]));
  for (const auto& [src, dst] : d.b_pairs) {
    const double s = static_cast<double>(d.nodes[static_cast<std::size_t>(src)].i) / d.N;
    const Mat m = c2.m_b.at(s);
    r.gluing = std::max(r.gluing, max_abs(tf[static_cast<std::size_t>(dst)] - m * tf[static_cast<std::size_t>(src)] * m.adjoint()));
  }
  for (const auto& [src, dst] : d.c_pairs) {
    const double s = static_cast<double>(d.nodes[static_cast<std::size_t>(src)].i) / d.N;
    const Mat m = c2.m_c.at(s);
    r.gluing = std::max(r.gluing, max_abs(tf[static_cast<std::size_t>(dst)] - m * tf[static_cast<std::size_t>(src)] * m.adjoint()));
  }
  return r;
}

std::vector<Mat> sample_on_domain(const EquivariantPoly& f, const FundamentalDomain& d) {
  std::vector<Mat> out;
  out.reserve(d.nodes.size());
  for (const DomainNode& n : d.nodes) out.push_back(f.evaluate(n.x));
  return out;
}

}  // namespace adestar
