#include "adestar/equivariant.hpp"

#include "adestar/error.hpp"
#include "adestar/sphere.hpp"

#include <Eigen/QR>

#include <algorithm>
#include <cmath>

namespace adestar {

namespace {

// Reduced expansion of x1^a x2^b x3^c for a <= 2.
template <typename F>
void for_each_term(int a, int b, int c, F&& emit) {
  if (a < 2) {
    emit(monomial_index({a, b, c}), 1.0);
  } else {
    emit(monomial_index({0, b, c}), 1.0);
    emit(monomial_index({0, b + 2, c}), -1.0);
    emit(monomial_index({0, b, c + 2}), -1.0);
  }
}

// p(x) * (w . x) in the reduced basis; `p` has degree <= d, result d + 1.
RVec times_linear(const RVec& p, const std::vector<Monomial>& monos, const Vec3& w, int degree) {
  RVec out = RVec::Zero(monomial_count(degree + 1));
  for (Eigen::Index m = 0; m < p.size(); ++m) {
    if (p(m) == 0.0) continue;
    const Monomial& mo = monos[static_cast<std::size_t>(m)];
    for (int k = 0; k < 3; ++k) {
      if (w(k) == 0.0) continue;
      const double s = p(m) * w(k);
      for_each_term(mo.a + (k == 0), mo.b + (k == 1), mo.c + (k == 2), [&](int idx, double v) { out(idx) += s * v; });
    }
  }
  return out;
}

int stabilizer_order(const FiniteSubgroup& group, const Vec3& x) { return static_cast<int>(stabilizer(group, x).size()); }

}  // namespace

int monomial_index(const Monomial& m) {
  const int n = m.degree();
  return n * n + (m.a == 0 ? n - m.b : (n + 1) + (n - 1 - m.b));
}

std::vector<Monomial> reduced_monomials(int degree) {
  std::vector<Monomial> out;
  for (int n = 0; n <= degree; ++n) {
    for (int b = n; b >= 0; --b) out.push_back({0, b, n - b});
    for (int b = n - 1; b >= 0; --b) out.push_back({1, b, n - 1 - b});
  }
  return out;
}

RMat substitution_matrix(const Rot3& r, int degree) {
  const std::vector<Monomial> monos = reduced_monomials(degree + 1);
  const int count = monomial_count(degree);
  RMat out = RMat::Zero(count, count);
  std::vector<RVec> cols(static_cast<std::size_t>(count));
  cols[0] = RVec::Zero(1);
  cols[0](0) = 1.0;
  for (int m = 1; m < count; ++m) {
    const Monomial& mo = monos[static_cast<std::size_t>(m)];
    // (R x)_k is the k-th row of R applied to x.
    int k = 0;
    Monomial prev = mo;
    if (mo.c > 0) {
      k = 2;
      --prev.c;
    } else if (mo.b > 0) {
      k = 1;
      --prev.b;
    } else {
      k = 0;
      --prev.a;
    }
    cols[static_cast<std::size_t>(m)] =
        times_linear(cols[static_cast<std::size_t>(monomial_index(prev))], monos, r.row(k).transpose(), prev.degree());
  }
  for (int m = 0; m < count; ++m) {
    const RVec& c = cols[static_cast<std::size_t>(m)];
    out.col(m).head(c.size()) = c;
  }
  return out;
}

EquivariantPoly EquivariantPoly::zero(int irrep, int dim, int degree) {
  EquivariantPoly f;
  f.irrep = irrep;
  f.dim = dim;
  f.degree = degree;
  f.coeffs.assign(static_cast<std::size_t>(monomial_count(degree)), Mat::Zero(dim, dim));
  return f;
}

EquivariantPoly EquivariantPoly::constant(int irrep, const Mat& value) {
  EquivariantPoly f = zero(irrep, static_cast<int>(value.rows()), 0);
  f.coeffs[0] = value;
  return f;
}

Mat EquivariantPoly::evaluate(const CVec3& x) const {
  const std::vector<Monomial> monos = reduced_monomials(degree);
  Mat out = Mat::Zero(dim, dim);
  for (std::size_t m = 0; m < coeffs.size(); ++m) out += monomial_value(monos[m], x) * coeffs[m];
  return out;
}

EquivariantPoly EquivariantPoly::adjoint() const {
  EquivariantPoly f = *this;
  for (Mat& c : f.coeffs) c.adjointInPlace();
  return f;
}

EquivariantPoly EquivariantPoly::with_degree(int new_degree) const {
  if (new_degree < effective_degree())
    throw Error(ErrorCode::DegreeOverflow, "cannot truncate a map of degree " + std::to_string(effective_degree()) +
                                               " to " + std::to_string(new_degree));
  EquivariantPoly f = zero(irrep, dim, new_degree);
  const std::size_t keep = std::min(coeffs.size(), f.coeffs.size());
  for (std::size_t m = 0; m < keep; ++m) f.coeffs[m] = coeffs[m];
  return f;
}

int EquivariantPoly::effective_degree(double tol) const {
  const std::vector<Monomial> monos = reduced_monomials(degree);
  int d = 0;
  for (std::size_t m = 0; m < coeffs.size(); ++m)
    if (max_abs(coeffs[m]) > tol) d = std::max(d, monos[m].degree());
  return d;
}

double EquivariantPoly::max_coeff() const {
  double out = 0;
  for (const Mat& c : coeffs) out = std::max(out, max_abs(c));
  return out;
}

double EquivariantPoly::hermiticity_defect() const {
  double out = 0;
  for (const Mat& c : coeffs) out = std::max(out, adestar::hermiticity_defect(c));
  return out;
}

EquivariantPoly& EquivariantPoly::operator+=(const EquivariantPoly& o) {
  if (o.degree > degree) *this = with_degree(o.degree);
  for (std::size_t m = 0; m < o.coeffs.size(); ++m) coeffs[m] += o.coeffs[m];
  return *this;
}

EquivariantPoly& EquivariantPoly::operator-=(const EquivariantPoly& o) {
  if (o.degree > degree) *this = with_degree(o.degree);
  for (std::size_t m = 0; m < o.coeffs.size(); ++m) coeffs[m] -= o.coeffs[m];
  return *this;
}

EquivariantPoly& EquivariantPoly::operator*=(cplx s) {
  for (Mat& c : coeffs) c *= s;
  return *this;
}

EquivariantPoly operator+(EquivariantPoly a, const EquivariantPoly& b) { return a += b; }
EquivariantPoly operator-(EquivariantPoly a, const EquivariantPoly& b) { return a -= b; }
EquivariantPoly operator*(cplx s, EquivariantPoly a) { return a *= s; }

EquivariantPoly multiply(const EquivariantPoly& f, const EquivariantPoly& g, int max_degree) {
  if (f.dim != g.dim) throw Error(ErrorCode::InvalidArgument, "multiplying maps of different sizes");
  const int degree = f.degree + g.degree;
  if (degree > max_degree)
    throw Error(ErrorCode::DegreeOverflow, "product degree " + std::to_string(degree) + " exceeds " + std::to_string(max_degree));
  const std::vector<Monomial> monos = reduced_monomials(degree);
  EquivariantPoly out = EquivariantPoly::zero(f.irrep, f.dim, degree);
  for (std::size_t i = 0; i < f.coeffs.size(); ++i) {
    if (max_abs(f.coeffs[i]) == 0.0) continue;
    for (std::size_t j = 0; j < g.coeffs.size(); ++j) {
      if (max_abs(g.coeffs[j]) == 0.0) continue;
      const Mat prod = f.coeffs[i] * g.coeffs[j];
      const Monomial& p = monos[i];
      const Monomial& q = monos[j];
      for_each_term(p.a + q.a, p.b + q.b, p.c + q.c, [&](int idx, double v) { out.coeffs[static_cast<std::size_t>(idx)] += v * prod; });
    }
  }
  return out;
}

double equivariance_defect(const FiniteSubgroup& group, const UnitaryIrrep& irrep, const EquivariantPoly& f,
                           std::span<const Vec3> points) {
  double worst = 0;
  for (const Vec3& x : points) {
    const Mat fx = f.evaluate(x);
    for (int g = 0; g < group.order(); ++g) {
      const Mat lhs = f.evaluate(Vec3(so3_matrix(group.matrix(g)) * x));
      worst = std::max(worst, max_abs(lhs - irrep(g) * fx * irrep(g).adjoint()));
    }
  }
  return worst;
}

RVec hermitian_coords(const Mat& h) {
  const auto d = h.rows();
  RVec v(d * d);
  Eigen::Index n = 0;
  for (Eigen::Index k = 0; k < d; ++k) v(n++) = h(k, k).real();
  for (Eigen::Index k = 0; k < d; ++k)
    for (Eigen::Index l = k + 1; l < d; ++l) {
      v(n++) = std::sqrt(2.0) * h(k, l).real();
      v(n++) = -std::sqrt(2.0) * h(k, l).imag();
    }
  return v;
}

Mat from_hermitian_coords(const RVec& v, int d) {
  Mat h = Mat::Zero(d, d);
  Eigen::Index n = 0;
  for (int k = 0; k < d; ++k) h(k, k) = v(n++);
  for (int k = 0; k < d; ++k)
    for (int l = k + 1; l < d; ++l) {
      const double re = v(n++) / std::sqrt(2.0);
      const double im = v(n++) / std::sqrt(2.0);
      h(k, l) = cplx(re, -im);
      h(l, k) = cplx(re, im);
    }
  return h;
}

EquivariantPoly average(const FiniteSubgroup& group, const UnitaryIrrep& irrep, const EquivariantPoly& f) {
  EquivariantPoly out = EquivariantPoly::zero(f.irrep, f.dim, f.degree);
  const auto count = static_cast<Eigen::Index>(f.coeffs.size());
  const std::vector<SO3Element> image = so3_image(group);
  for (const SO3Element& e : image) {
    const RMat l = substitution_matrix(e.matrix, f.degree);
    const Mat& rho = irrep(e.source);
    for (Eigen::Index target = 0; target < count; ++target) {
      Mat acc = Mat::Zero(f.dim, f.dim);
      for (Eigen::Index m = 0; m < count; ++m)
        if (l(target, m) != 0.0) acc += l(target, m) * f.coeffs[static_cast<std::size_t>(m)];
      out.coeffs[static_cast<std::size_t>(target)] += rho.adjoint() * acc * rho;
    }
  }
  out *= cplx(1.0 / static_cast<double>(image.size()), 0.0);
  return out;
}

std::vector<EquivariantPoly> equivariant_basis(const FiniteSubgroup& group, const UnitaryIrrep& irrep, int degree) {
  if (degree < 0 || degree > kMaxDegree)
    throw Error(ErrorCode::DegreeOverflow, "basis degree must lie in [0, " + std::to_string(kMaxDegree) + "]");
  const int d = irrep.dim;
  const int d2 = d * d;
  const int count = monomial_count(degree);
  const Eigen::Index n = static_cast<Eigen::Index>(count) * d2;

  // -1 acts trivially on both factors, so Gamma' suffices.
  const std::vector<SO3Element> image = so3_image(group);
  RMat proj = RMat::Zero(n, n);
  for (const SO3Element& e : image) {
    const RMat l = substitution_matrix(e.matrix, degree);
    const Mat& rho = irrep(e.source);
    RMat ad(d2, d2);
    for (int col = 0; col < d2; ++col) {
      RVec unit = RVec::Zero(d2);
      unit(col) = 1.0;
      ad.col(col) = hermitian_coords(rho.adjoint() * from_hermitian_coords(unit, d) * rho);
    }
    for (int i = 0; i < count; ++i)
      for (int j = 0; j < count; ++j)
        if (l(i, j) != 0.0) proj.block(i * d2, j * d2, d2, d2) += l(i, j) * ad;
  }
  proj /= static_cast<double>(image.size());

  // Seeds are monomials times the Hermitian and anti-Hermitian parts of
  // rho(g), which span End(V) for irreducible rho. Orthonormalizing them in a
  // fixed order without pivoting makes the basis covariant under a change of
  // unitary gauge.
  const Eigen::Index rank = std::lround(proj.trace());
  std::vector<RVec> q;
  for (int m = 0; m < count && static_cast<Eigen::Index>(q.size()) < rank; ++m) {
    const auto block = proj.middleCols(static_cast<Eigen::Index>(m) * d2, d2);
    for (const SO3Element& e : image) {
      const Mat& rho = irrep(e.source);
      for (const Mat& seed : {Mat((rho + rho.adjoint()) * 0.5), Mat((rho - rho.adjoint()) * cplx(0, 0.5))}) {
        if (static_cast<Eigen::Index>(q.size()) == rank) break;
        RVec v = block * hermitian_coords(seed);
        for (int pass = 0; pass < 2; ++pass)
          for (const RVec& u : q) v -= u.dot(v) * u;
        const double norm = v.norm();
        if (norm > 1e-8) q.push_back(v / norm);
      }
    }
  }
  if (static_cast<Eigen::Index>(q.size()) != rank)
    throw Error(ErrorCode::SplitFailure, "equivariant seeds do not span the averaged space");

  std::vector<EquivariantPoly> basis;
  for (const RVec& v : q) {
    EquivariantPoly f = EquivariantPoly::zero(irrep.label, d, degree);
    for (int m = 0; m < count; ++m) f.coeffs[static_cast<std::size_t>(m)] = from_hermitian_coords(v.segment(m * d2, d2), d);
    basis.push_back(std::move(f));
  }
  return basis;
}

BlockStructure centralizer_algebra(const FiniteSubgroup& group, const UnitaryIrrep& irrep, const Vec3& x) {
  const std::vector<int> stab = stabilizer(group, x);
  BlockStructure out;
  out.stabilizer_order = static_cast<int>(stab.size());
  int best = 0;
  for (int g : stab) {
    const int k = element_order(group, g);
    if (k > best) {
      best = k;
      out.stabilizer_generator = g;
    }
  }
  if (best != out.stabilizer_order)
    throw Error(ErrorCode::PreconditionFailed, "stabilizer is not cyclic");

  const int d = irrep.dim;
  const Mat& rho = irrep(out.stabilizer_generator);
  struct Piece {
    int size;
    int index;
    cplx eigenvalue;
    Mat basis;
  };
  std::vector<Piece> pieces;
  for (int j = 0; j < best; ++j) {
    const cplx w = std::polar(1.0, 2.0 * kPi * j / best);
    Mat p = Mat::Zero(d, d);
    Mat power = Mat::Identity(d, d);
    for (int s = 0; s < best; ++s) {
      p += std::pow(std::conj(w), s) * power;
      power = power * rho;
    }
    p /= static_cast<double>(best);
    const int rank = static_cast<int>(std::lround(p.trace().real()));
    if (rank == 0) continue;
    Eigen::SelfAdjointEigenSolver<Mat> es((p + p.adjoint()) * 0.5);
    pieces.push_back({rank, j, w, es.eigenvectors().rightCols(rank)});
  }
  std::stable_sort(pieces.begin(), pieces.end(), [](const Piece& a, const Piece& b) { return a.size > b.size; });
  out.U = Mat(d, d);
  int col = 0;
  for (const Piece& p : pieces) {
    out.sizes.push_back(p.size);
    out.eigenvalues.push_back(p.eigenvalue);
    out.U.middleCols(col, p.size) = p.basis;
    col += p.size;
  }
  if (col != d) throw Error(ErrorCode::PreconditionFailed, "eigenspaces of the stabilizer do not fill V");
  return out;
}

std::vector<int> scalar_invariants_dimension(const FiniteSubgroup& group, int degree) {
  if (degree < 0 || degree > kMaxDegree)
    throw Error(ErrorCode::DegreeOverflow, "degree must lie in [0, " + std::to_string(kMaxDegree) + "]");
  const std::vector<SO3Element> image = so3_image(group);
  RMat avg = RMat::Zero(monomial_count(degree), monomial_count(degree));
  for (const SO3Element& e : image) avg += substitution_matrix(e.matrix, degree);
  avg /= static_cast<double>(image.size());
  // Degree-<= k polynomials are a prefix of the basis and an invariant
  // subspace, so the trace of the leading block counts invariants there.
  std::vector<int> out;
  int previous = 0;
  for (int k = 0; k <= degree; ++k) {
    const int m = monomial_count(k);
    const int total = static_cast<int>(std::lround(avg.topLeftCorner(m, m).trace()));
    out.push_back(total - previous);
    previous = total;
  }
  return out;
}

SurjectivityResult surjectivity_probe(const FiniteSubgroup& group, const UnitaryIrrep& irrep,
                                      std::span<const Vec3> points, std::span<const Mat> targets, int max_degree,
                                      double tol) {
  if (points.size() != targets.size()) throw Error(ErrorCode::InvalidArgument, "one target per point required");
  // Each x_j heads its own orbit block in `all`.
  std::vector<Vec3> all;
  std::vector<int> own;
  for (std::size_t j = 0; j < points.size(); ++j) {
    for (int g : stabilizer(group, points[j]))
      if (max_abs(irrep(g) * targets[j] - targets[j] * irrep(g)) > 1e-8)
        throw Error(ErrorCode::PreconditionFailed, "target does not commute with the stabilizer");
    for (const Vec3& y : all)
      if ((y - points[j]).norm() < 1e-8) throw Error(ErrorCode::PreconditionFailed, "orbits are not disjoint");
    own.push_back(static_cast<int>(all.size()));
    all.push_back(points[j]);
    for (const Vec3& y : orbit(group, points[j]))
      if ((y - points[j]).norm() >= 1e-8) all.push_back(y);
  }

  SurjectivityResult out;
  for (int degree = 0; degree <= max_degree; ++degree) {
    const int count = monomial_count(degree);
    if (count < static_cast<int>(all.size())) continue;
    const std::vector<Monomial> monos = reduced_monomials(degree);
    RMat e(static_cast<Eigen::Index>(all.size()), count);
    for (std::size_t p = 0; p < all.size(); ++p)
      for (int m = 0; m < count; ++m) e(static_cast<Eigen::Index>(p), m) = monomial_value(monos[static_cast<std::size_t>(m)], all[p]);
    Eigen::CompleteOrthogonalDecomposition<RMat> cod(e);
    EquivariantPoly f = EquivariantPoly::zero(irrep.label, irrep.dim, degree);
    bool interpolated = true;
    for (std::size_t j = 0; j < points.size(); ++j) {
      RVec rhs = RVec::Zero(static_cast<Eigen::Index>(all.size()));
      rhs(own[j]) = 1.0;
      const RVec bump = cod.solve(rhs);
      if (max_abs(e * bump - rhs) > 1e-9) interpolated = false;
      const double scale = static_cast<double>(group.order()) / stabilizer_order(group, points[j]);
      for (int m = 0; m < count; ++m) f.coeffs[static_cast<std::size_t>(m)] += (scale * bump(m)) * targets[j];
    }
    if (!interpolated) continue;
    f = average(group, irrep, f);
    double residual = 0;
    for (std::size_t j = 0; j < points.size(); ++j) residual = std::max(residual, max_abs(f.evaluate(points[j]) - targets[j]));
    if (residual <= tol) {
      out.degree = degree;
      out.residual = residual;
      out.map = std::move(f);
      return out;
    }
    out.residual = residual;
  }
  return out;
}

}  // namespace adestar
