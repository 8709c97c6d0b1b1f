#include "adestar/presets.hpp"

#include "adestar/error.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <future>
#include <random>
#include <sstream>
#include <thread>

namespace adestar {

namespace {

constexpr int kUnboundedDegree = 64;
constexpr int kMaxIterations = 300;

RVec flatten(const EquivariantPoly& f, int degree) {
  const int d2 = f.dim * f.dim;
  RVec v = RVec::Zero(static_cast<Eigen::Index>(monomial_count(degree)) * d2);
  const std::size_t keep = std::min(f.coeffs.size(), static_cast<std::size_t>(monomial_count(degree)));
  for (std::size_t m = 0; m < keep; ++m)
    v.segment(static_cast<Eigen::Index>(m) * d2, d2) = hermitian_coords((f.coeffs[m] + f.coeffs[m].adjoint()) * 0.5);
  return v;
}

EquivariantPoly combine(const std::vector<EquivariantPoly>& basis, const RVec& c) {
  EquivariantPoly f = EquivariantPoly::zero(basis.front().irrep, basis.front().dim, basis.front().degree);
  for (Eigen::Index k = 0; k < c.size(); ++k) f += cplx(c(k), 0.0) * basis[static_cast<std::size_t>(k)];
  return f;
}

EquivariantPoly shifted(const EquivariantPoly& g, double alpha) {
  EquivariantPoly out = g;
  out.coeffs[0] -= alpha * Mat::Identity(g.dim, g.dim);
  return out;
}

EquivariantPoly one_like(const EquivariantPoly& g) { return EquivariantPoly::constant(g.irrep, Mat::Identity(g.dim, g.dim)); }

EquivariantPoly polynomial_of(const EquivariantPoly& g, const std::vector<double>& roots) {
  EquivariantPoly p = one_like(g);
  for (double a : roots) p = multiply(p, shifted(g, a), kUnboundedDegree);
  return p;
}

// Coefficients of tr F, one per reduced monomial up to `degree`.
RVec trace_coeffs(const EquivariantPoly& f, int degree) {
  RVec v = RVec::Zero(monomial_count(degree));
  const std::size_t keep = std::min(f.coeffs.size(), static_cast<std::size_t>(monomial_count(degree)));
  for (std::size_t m = 0; m < keep; ++m) v(static_cast<Eigen::Index>(m)) = f.coeffs[m].trace().real();
  return v;
}

struct Problem {
  const StarPreset& preset;
  const std::vector<EquivariantPoly>& basis;
  int degree;
  int n;  // generators
  int k;  // basis size
  // Power sums sum_j m_j alpha_j^t, t = 1..q-1, per generator; they pin the
  // eigenvalue multiplicities.
  std::vector<std::vector<double>> power_sums;

  int identity_degree(int i) const { return degree * static_cast<int>(preset.orderings[static_cast<std::size_t>(i)].size()); }

  Eigen::Index rows() const {
    const int d2 = basis.front().dim * basis.front().dim;
    Eigen::Index r = static_cast<Eigen::Index>(monomial_count(degree)) * d2;
    for (int i = 0; i < n; ++i) {
      r += static_cast<Eigen::Index>(monomial_count(identity_degree(i))) * d2;
      for (std::size_t t = 1; t <= power_sums[static_cast<std::size_t>(i)].size(); ++t)
        r += monomial_count(degree * static_cast<int>(t));
    }
    return r;
  }

  // Residuals, and the Jacobian if `jac` is non-null.
  RVec evaluate(const RVec& x, RMat* jac) const {
    const int dim = basis.front().dim;
    const int d2 = dim * dim;
    RVec r(rows());
    if (jac) *jac = RMat::Zero(rows(), static_cast<Eigen::Index>(n) * k);
    Eigen::Index row = 0;
    EquivariantPoly total = EquivariantPoly::zero(basis.front().irrep, dim, degree);
    for (int i = 0; i < n; ++i) {
      const RVec ci = x.segment(static_cast<Eigen::Index>(i) * k, k);
      const EquivariantPoly g = combine(basis, ci);
      total += g;
      const auto& roots = preset.orderings[static_cast<std::size_t>(i)];
      const int deg = identity_degree(i);
      const Eigen::Index len = static_cast<Eigen::Index>(monomial_count(deg)) * d2;
      if (!jac) {
        r.segment(row, len) = flatten(polynomial_of(g, roots), deg);
      } else {
        // prefix[l] = prod_{m<l} (g - a_m), suffix[l] = prod_{m>l} (g - a_m).
        const std::size_t q = roots.size();
        std::vector<EquivariantPoly> prefix(q + 1, one_like(g)), suffix(q + 1, one_like(g));
        for (std::size_t l = 0; l < q; ++l) prefix[l + 1] = multiply(prefix[l], shifted(g, roots[l]), kUnboundedDegree);
        for (std::size_t l = q; l-- > 0;) suffix[l] = multiply(shifted(g, roots[l]), suffix[l + 1], kUnboundedDegree);
        r.segment(row, len) = flatten(prefix[q], deg);
        for (int b = 0; b < k; ++b) {
          EquivariantPoly dp = EquivariantPoly::zero(g.irrep, dim, deg);
          for (std::size_t l = 0; l < q; ++l)
            dp += multiply(multiply(prefix[l], basis[static_cast<std::size_t>(b)], kUnboundedDegree), suffix[l + 1],
                           kUnboundedDegree);
          jac->block(row, static_cast<Eigen::Index>(i) * k + b, len, 1) = flatten(dp, deg);
        }
      }
      row += len;
      // tr g^t - s_t, with d tr g^t = t tr(g^{t-1} dg).
      EquivariantPoly power = one_like(g);
      const auto& sums = power_sums[static_cast<std::size_t>(i)];
      for (std::size_t t = 1; t <= sums.size(); ++t) {
        const int tdeg = degree * static_cast<int>(t);
        const Eigen::Index tlen = monomial_count(tdeg);
        if (jac)
          for (int b = 0; b < k; ++b)
            jac->block(row, static_cast<Eigen::Index>(i) * k + b, tlen, 1) =
                static_cast<double>(t) *
                trace_coeffs(multiply(power, basis[static_cast<std::size_t>(b)], kUnboundedDegree), tdeg);
        power = multiply(power, g, kUnboundedDegree);
        RVec tr = trace_coeffs(power, tdeg);
        tr(0) -= sums[t - 1];
        r.segment(row, tlen) = tr;
        row += tlen;
      }
    }
    const Eigen::Index len = static_cast<Eigen::Index>(monomial_count(degree)) * d2;
    r.segment(row, len) = flatten(shifted(total, preset.mu), degree);
    if (jac)
      for (int i = 0; i < n; ++i)
        for (int b = 0; b < k; ++b)
          jac->block(row, static_cast<Eigen::Index>(i) * k + b, len, 1) = flatten(basis[static_cast<std::size_t>(b)], degree);
    return r;
  }
};

struct Attempt {
  RVec x;
  double residual = 1e300;
  int iterations = 0;
};

Attempt levenberg_marquardt(const Problem& prob, RVec x) {
  Attempt out;
  RMat jac;
  RVec r = prob.evaluate(x, &jac);
  double cost = r.squaredNorm();
  double lambda = 1e-3;
  int it = 0;
  for (; it < kMaxIterations && max_abs(r) > 1e-13; ++it) {
    const RMat a = jac.transpose() * jac;
    const RVec grad = jac.transpose() * r;
    bool accepted = false;
    while (lambda < 1e14) {
      RMat damped = a;
      damped.diagonal() += lambda * (a.diagonal().array() + 1e-9).matrix();
      const RVec step = damped.ldlt().solve(-grad);
      const RVec trial = x + step;
      const RVec rt = prob.evaluate(trial, nullptr);
      if (rt.squaredNorm() < cost) {
        x = trial;
        lambda = std::max(lambda / 3.0, 1e-12);
        accepted = true;
        break;
      }
      lambda *= 4.0;
    }
    if (!accepted) break;
    r = prob.evaluate(x, &jac);
    const double new_cost = r.squaredNorm();
    const bool stalled = cost - new_cost < 1e-16 * cost && max_abs(r) > 1e-6;
    cost = new_cost;
    if (stalled) break;
  }
  out.x = std::move(x);
  out.residual = max_abs(r);
  out.iterations = it;
  return out;
}

Vec3 generic_point(const FiniteSubgroup& group, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n(0, 1);
  for (;;) {
    const Vec3 x = Vec3(n(rng), n(rng), n(rng)).normalized();
    if (stabilizer(group, x, 1e-3).size() == 2) return x;
  }
}

std::vector<Mat> evaluate_all(const std::vector<EquivariantPoly>& gens, const Vec3& x) {
  std::vector<Mat> out;
  for (const auto& g : gens) out.push_back(g.evaluate(x));
  return out;
}

double root_distance(double v, const std::vector<double>& roots) {
  double best = 1e300;
  for (double a : roots) best = std::min(best, std::abs(v - a));
  return best;
}

std::vector<double> spectrum_distances(const StarPreset& p, const std::vector<Mat>& mats) {
  std::vector<double> out;
  for (std::size_t i = 0; i < mats.size(); ++i) {
    Eigen::SelfAdjointEigenSolver<Mat> es((mats[i] + mats[i].adjoint()) * 0.5, Eigen::EigenvaluesOnly);
    double worst = 0;
    for (Eigen::Index e = 0; e < es.eigenvalues().size(); ++e)
      worst = std::max(worst, root_distance(es.eigenvalues()(e), p.orderings[i]));
    out.push_back(worst);
  }
  return out;
}

RVec stack(const std::vector<Mat>& mats) {
  const Eigen::Index d2 = mats.front().size();
  RVec v(2 * d2 * static_cast<Eigen::Index>(mats.size()));
  for (std::size_t i = 0; i < mats.size(); ++i) {
    const Eigen::Index off = 2 * d2 * static_cast<Eigen::Index>(i);
    v.segment(off, d2) = mats[i].real().reshaped();
    v.segment(off + d2, d2) = mats[i].imag().reshaped();
  }
  return v;
}

// Real dimension by which the tuple's unitary equivalence class moves on
// the tangent plane at x0: the directional derivatives modulo the
// infinitesimal conjugations [X, A_i], X anti-Hermitian.
int family_parameters(const std::vector<EquivariantPoly>& gens, const Vec3& x0) {
  const std::vector<Mat> at = evaluate_all(gens, x0);
  const int d = static_cast<int>(at.front().rows());
  std::vector<RVec> cols;
  for (int r = 0; r < d; ++r)
    for (int c = r; c < d; ++c)
      for (int part = 0; part < (r == c ? 1 : 2); ++part) {
        Mat x = Mat::Zero(d, d);
        if (r == c) {
          x(r, r) = cplx(0, 1);
        } else if (part == 0) {
          x(r, c) = 1;
          x(c, r) = -1;
        } else {
          x(r, c) = x(c, r) = cplx(0, 1);
        }
        std::vector<Mat> comm;
        for (const Mat& a : at) comm.push_back(x * a - a * x);
        cols.push_back(stack(comm));
      }
  RMat conj(cols.front().size(), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t k = 0; k < cols.size(); ++k) conj.col(static_cast<Eigen::Index>(k)) = cols[k];

  // Central differences are exact on polynomials of degree <= 2.
  const Vec3 t1 = x0.unitOrthogonal();
  const Vec3 t2 = x0.cross(t1);
  const double eps = 1e-3;
  RMat all(conj.rows(), conj.cols() + 2);
  all.leftCols(conj.cols()) = conj;
  for (int k = 0; k < 2; ++k) {
    const Vec3 t = k == 0 ? t1 : t2;
    std::vector<Mat> diff;
    for (const auto& g : gens) diff.push_back((g.evaluate(Vec3(x0 + eps * t)) - g.evaluate(Vec3(x0 - eps * t))) / (2 * eps));
    all.col(conj.cols() + k) = stack(diff);
  }
  return numerical_rank(all, 1e-8) - numerical_rank(conj, 1e-8);
}

}  // namespace

std::vector<std::vector<double>> StarPreset::arm_weights() const {
  std::vector<std::vector<double>> out;
  for (const auto& o : orderings) {
    std::vector<double> w;
    for (std::size_t j = 1; j < o.size(); ++j) w.push_back(o[j - 1] - o[j]);
    out.push_back(std::move(w));
  }
  return out;
}

std::vector<std::vector<double>> StarPreset::root_sets() const {
  auto out = orderings;
  for (auto& o : out) std::sort(o.begin(), o.end());
  return out;
}

StarPreset preset(const std::string& name) {
  if (name == "D4") return {"D4", GroupKind::dihedral(2), 2, 2.0, {{0, 1}, {0, 1}, {0, 1}, {0, 1}}};
  if (name == "E6") return {"E6", GroupKind::tetrahedral(), 3, 3.0, {{0, 2, 1}, {0, 2, 1}, {0, 2, 1}}};
  if (name == "E7") return {"E7", GroupKind::octahedral(), 4, 4.0, {{0, 3, 1, 2}, {0, 3, 1, 2}, {0, 2}}};
  if (name == "E8") return {"E8", GroupKind::icosahedral(), 6, 6.0, {{0, 5, 1, 4, 2, 3}, {0, 4, 2}, {0, 3}}};
  throw Error(ErrorCode::InvalidArgument, "unknown preset '" + name + "'");
}

const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names{"D4", "E6", "E7", "E8"};
  return names;
}

std::vector<std::vector<int>> StarPreset::multiplicities(const McKayGraph& graph) const {
  const StarArms star = star_arms(graph);
  std::vector<std::vector<int>> by_arm;
  for (const auto& arm : star.arms) {
    std::vector<int> deltas{graph.delta[static_cast<std::size_t>(star.center)]};
    for (int v : arm) deltas.push_back(graph.delta[static_cast<std::size_t>(v)]);
    deltas.push_back(0);
    std::vector<int> m;
    for (std::size_t j = 0; j + 1 < deltas.size(); ++j) m.push_back(deltas[j] - deltas[j + 1]);
    by_arm.push_back(std::move(m));
  }
  // Match arms to generators by length; arms and orderings are both sorted
  // longest first in every preset.
  std::vector<std::vector<int>> out;
  std::vector<bool> used(by_arm.size(), false);
  for (const auto& o : orderings)
    for (std::size_t a = 0; a < by_arm.size(); ++a)
      if (!used[a] && by_arm[a].size() == o.size()) {
        used[a] = true;
        out.push_back(by_arm[a]);
        break;
      }
  return out;
}

void check_preset_against_mckay(const StarPreset& p, const McKayGraph& graph) {
  const StarArms star = star_arms(graph);
  const int c = star.center;
  if (graph.delta[static_cast<std::size_t>(c)] != p.center_dim || std::lround(p.mu) != graph.delta[static_cast<std::size_t>(c)])
    throw Error(ErrorCode::PreconditionFailed, p.name + ": mu and center dimension must equal delta at the center");
  if (star.arms.size() != p.orderings.size())
    throw Error(ErrorCode::PreconditionFailed, p.name + ": generator count differs from the number of arms");
  const int sigma_c = graph.sigma[static_cast<std::size_t>(c)];
  auto weights = p.arm_weights();
  std::vector<bool> used(weights.size(), false);
  for (const auto& arm : star.arms) {
    std::vector<double> expect;
    for (int v : arm) expect.push_back(sigma_c * graph.lambda[static_cast<std::size_t>(v)]);
    bool matched = false;
    for (std::size_t w = 0; w < weights.size() && !matched; ++w)
      if (!used[w] && weights[w] == expect) used[w] = matched = true;
    if (!matched) throw Error(ErrorCode::PreconditionFailed, p.name + ": an arm's weights match no root ordering");
  }
}

double sum_residual(const GeneratorSystem& s) {
  EquivariantPoly total = EquivariantPoly::zero(s.irrep.label, s.irrep.dim, 0);
  for (const auto& g : s.generators) total += g;
  return shifted(total, s.preset.mu).max_coeff();
}

std::vector<double> identity_residuals(const GeneratorSystem& s) {
  std::vector<double> out;
  for (std::size_t i = 0; i < s.generators.size(); ++i)
    out.push_back(polynomial_of(s.generators[i], s.preset.orderings[i]).max_coeff());
  return out;
}

GeneratorSystem synthesize(const StarPreset& p, std::uint64_t seed) {
  const FiniteSubgroup group = build_group(p.group);
  const auto irreps = all_irreps(group, seed);
  check_preset_against_mckay(p, mckay_graph(group, irreps));
  const auto center = std::find_if(irreps.begin(), irreps.end(), [&](const UnitaryIrrep& r) { return r.dim == p.center_dim; });
  if (center == irreps.end() || std::count_if(irreps.begin(), irreps.end(), [&](const UnitaryIrrep& r) { return r.dim == p.center_dim; }) != 1)
    throw Error(ErrorCode::PreconditionFailed, p.name + ": center representation is not unique");
  return synthesize(p, group, *center, seed);
}

GeneratorSystem synthesize(const StarPreset& p, const FiniteSubgroup& group, const UnitaryIrrep& irrep,
                           std::uint64_t seed) {
  GeneratorSystem sys{p, group, irrep, {}, {}, {}, {}};
  sys.report.seed = seed;
  const auto mult = p.multiplicities(mckay_graph(group, all_irreps(group, seed)));
  std::vector<std::vector<double>> power_sums;
  for (std::size_t i = 0; i < p.orderings.size(); ++i) {
    std::vector<double> sums;
    for (std::size_t t = 1; t < p.orderings[i].size(); ++t) {
      double s = 0;
      for (std::size_t j = 0; j < p.orderings[i].size(); ++j) s += mult[i][j] * std::pow(p.orderings[i][j], static_cast<double>(t));
      sums.push_back(s);
    }
    power_sums.push_back(std::move(sums));
  }
  const Vec3 probe_points[] = {generic_point(group, mix_seed(seed, 0x51)), generic_point(group, mix_seed(seed, 0x52))};
  double best = 1e300;

  for (int degree = 1; degree <= 2; ++degree) {
    const std::vector<EquivariantPoly> basis = equivariant_basis(group, irrep, degree);
    const Problem prob{p, basis, degree, p.generators(), static_cast<int>(basis.size()), power_sums};
    double top = 0;
    for (const auto& o : p.orderings) top = std::max(top, *std::max_element(o.begin(), o.end()));
    const double scale = std::max(1.0, top) * std::sqrt(static_cast<double>(irrep.dim)) / 2.0;

    struct Candidate {
      int restart = 0;
      int iterations = 0;
      double residual = 1e300;
      bool accepted = false;
      std::vector<RVec> coeffs;
      std::vector<EquivariantPoly> gens;
    };
    auto attempt = [&](int restart) {
      Candidate c;
      c.restart = restart;
      std::mt19937_64 rng(mix_seed(mix_seed(seed, static_cast<std::uint64_t>(degree)), static_cast<std::uint64_t>(restart)));
      std::normal_distribution<double> normal(0.0, scale);
      RVec x(static_cast<Eigen::Index>(prob.n) * prob.k);
      for (Eigen::Index j = 0; j < x.size(); ++j) x(j) = normal(rng);
      const Attempt at = levenberg_marquardt(prob, x);
      c.residual = at.residual;
      c.iterations = at.iterations;
      if (at.residual > 1e-10) return c;
      for (int i = 0; i < prob.n; ++i) {
        c.coeffs.push_back(at.x.segment(static_cast<Eigen::Index>(i) * prob.k, prob.k));
        c.gens.push_back(combine(basis, c.coeffs.back()));
      }
      // Scalar tuples also solve the relations; keep only irreducible systems.
      bool irreducible = true;
      for (const Vec3& x0 : probe_points) irreducible = irreducible && commutant_dimension(evaluate_all(c.gens, x0)) == 1;
      // Generic orbits must give pairwise inequivalent representations.
      c.accepted = irreducible && family_parameters(c.gens, probe_points[0]) >= 2;
      return c;
    };

    // Restarts run in batches; results are scanned in restart order, so the
    // lowest accepted index wins whatever the schedule.
    const int batch = static_cast<int>(std::clamp(std::thread::hardware_concurrency(), 1u, 8u));
    for (int first = 0; first < kMaxRestarts; first += batch) {
      std::vector<std::future<Candidate>> jobs;
      for (int restart = first; restart < std::min(first + batch, kMaxRestarts); ++restart)
        jobs.push_back(std::async(batch > 1 ? std::launch::async : std::launch::deferred, attempt, restart));
      std::vector<Candidate> results;
      for (auto& j : jobs) results.push_back(j.get());
      for (Candidate& c : results) {
        ++sys.report.restarts_tried;
        best = std::min(best, c.residual);
        if (!c.accepted) continue;
        sys.basis = basis;
        sys.coefficients = std::move(c.coeffs);
        sys.generators = std::move(c.gens);
        sys.report.restart = c.restart;
        sys.report.iterations = c.iterations;
        sys.report.degree = degree;
        sys.report.escalated = degree > 1;
        sys.report.sum_residual = sum_residual(sys);
        sys.report.identity_residuals = identity_residuals(sys);
        const double worst = std::max(sys.report.sum_residual,
                                      *std::max_element(sys.report.identity_residuals.begin(), sys.report.identity_residuals.end()));
        if (worst <= kSynthesisTol) return sys;
      }
    }
  }
  std::ostringstream os;
  os << p.name << ": no solution after " << sys.report.restarts_tried << " restarts; best residual " << best;
  throw Error(ErrorCode::SynthesisFailed, os.str());
}

StarRepresentation rep_at(const GeneratorSystem& s, const Vec3& point) {
  if (std::abs(point.norm() - 1.0) > 1e-9) throw Error(ErrorCode::PreconditionFailed, "point must lie on the unit sphere");
  StarRepresentation rep;
  rep.point = point;
  rep.matrices = evaluate_all(s.generators, point);
  const RepresentationReport r = verify(s.preset, rep);
  for (std::size_t i = 0; i < r.spectrum.size(); ++i)
    if (r.spectrum[i] > 1e-6) {
      std::ostringstream os;
      os << "generator " << i + 1 << " has an eigenvalue " << r.spectrum[i] << " away from its root set";
      throw Error(ErrorCode::SpectrumViolation, os.str());
    }
  if (r.sum > 1e-7) {
    std::ostringstream os;
    os << "sum of generators misses mu by " << r.sum;
    throw Error(ErrorCode::SpectrumViolation, os.str());
  }
  return rep;
}

int irreducibility_check(const StarRepresentation& rep) { return commutant_dimension(rep.matrices, 1e-6); }

CVec fingerprint(const std::vector<Mat>& mats, int max_length) {
  std::vector<cplx> out;
  const int n = static_cast<int>(mats.size());
  std::vector<Mat> words{Mat::Identity(mats.front().rows(), mats.front().cols())};
  for (int len = 1; len <= max_length; ++len) {
    std::vector<Mat> next;
    for (const Mat& w : words)
      for (int i = 0; i < n; ++i) {
        next.push_back(w * mats[static_cast<std::size_t>(i)]);
        out.push_back(next.back().trace());
      }
    words = std::move(next);
  }
  return Eigen::Map<CVec>(out.data(), static_cast<Eigen::Index>(out.size()));
}

bool equivalent(const std::vector<Mat>& a, const std::vector<Mat>& b, double tol) {
  if (a.size() != b.size() || a.front().rows() != b.front().rows()) return false;
  if (max_abs(fingerprint(a, 3) - fingerprint(b, 3)) > tol) return false;
  return max_abs(fingerprint(a, 4) - fingerprint(b, 4)) <= tol;
}

int Catalog::count(int dim) const {
  return static_cast<int>(std::count_if(special.begin(), special.end(), [&](const CatalogEntry& e) { return e.dim == dim; }));
}

int Catalog::count(int dim, OrbitKind orbit) const {
  return static_cast<int>(
      std::count_if(special.begin(), special.end(), [&](const CatalogEntry& e) { return e.dim == dim && e.orbit == orbit; }));
}

Catalog classify(const GeneratorSystem& s) {
  Catalog cat;
  const Vec3 x0 = generic_point(s.group, 0x9e3779b9ULL);
  cat.generic.dim = s.irrep.dim;
  cat.generic.commutant = commutant_dimension(evaluate_all(s.generators, x0));

  cat.generic.parameters = family_parameters(s.generators, x0);

  for (const SpecialOrbit& orbit : special_orbits(s.group)) {
    const Vec3& p = orbit.representative;
    const BlockStructure bs = centralizer_algebra(s.group, s.irrep, p);
    std::vector<Mat> rotated;
    for (const Mat& a : evaluate_all(s.generators, p)) rotated.push_back(bs.U.adjoint() * a * bs.U);
    // Everything outside the diagonal blocks must vanish.
    for (const Mat& b : rotated) {
      Mat off = b;
      int start = 0;
      for (int size : bs.sizes) {
        off.block(start, start, size, size).setZero();
        start += size;
      }
      if (max_abs(off) > 1e-7) {
        std::ostringstream os;
        os << "generator leaks " << max_abs(off) << " outside the blocks at a " << orbit_kind_name(orbit.kind) << " point";
        throw Error(ErrorCode::BlockLeakage, os.str());
      }
    }
    int start = 0;
    for (std::size_t k = 0; k < bs.sizes.size(); ++k) {
      const int size = bs.sizes[k];
      CatalogEntry e;
      e.orbit = orbit.kind;
      e.block = static_cast<int>(k);
      e.dim = size;
      for (const Mat& b : rotated) e.matrices.push_back(b.block(start, start, size, size));
      start += size;
      e.commutant = commutant_dimension(e.matrices);
      e.fingerprint = fingerprint(e.matrices);
      const bool seen = std::any_of(cat.special.begin(), cat.special.end(),
                                    [&](const CatalogEntry& o) { return equivalent(o.matrices, e.matrices); });
      if (!seen) cat.special.push_back(std::move(e));
    }
  }
  return cat;
}

double ResidualReport::worst() const {
  double w = std::max({sum, hermiticity, equivariance, pointwise_sum});
  for (double v : identities) w = std::max(w, v);
  for (double v : spectrum) w = std::max(w, v);
  return w;
}

ResidualReport verify(const GeneratorSystem& s, int samples, std::uint64_t seed) {
  ResidualReport r;
  r.sum = sum_residual(s);
  r.identities = identity_residuals(s);
  for (const auto& g : s.generators) r.hermiticity = std::max(r.hermiticity, g.hermiticity_defect());
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n(0, 1);
  std::vector<Vec3> pts;
  for (int k = 0; k < samples; ++k) pts.push_back(Vec3(n(rng), n(rng), n(rng)).normalized());
  for (const auto& g : s.generators) r.equivariance = std::max(r.equivariance, equivariance_defect(s.group, s.irrep, g, pts));
  r.spectrum.assign(s.generators.size(), 0.0);
  for (const Vec3& x : pts) {
    StarRepresentation rep;
    rep.matrices = evaluate_all(s.generators, x);
    const RepresentationReport rr = verify(s.preset, rep);
    for (std::size_t i = 0; i < rr.spectrum.size(); ++i) r.spectrum[i] = std::max(r.spectrum[i], rr.spectrum[i]);
    r.pointwise_sum = std::max(r.pointwise_sum, rr.sum);
  }
  return r;
}

double RepresentationReport::worst() const {
  double w = std::max(hermiticity, sum);
  for (double v : spectrum) w = std::max(w, v);
  return w;
}

RepresentationReport verify(const StarPreset& p, const StarRepresentation& rep) {
  RepresentationReport r;
  const auto d = rep.matrices.front().rows();
  Mat total = Mat::Zero(d, d);
  for (const Mat& a : rep.matrices) {
    r.hermiticity = std::max(r.hermiticity, hermiticity_defect(a));
    total += a;
  }
  r.sum = max_abs(total - p.mu * Mat::Identity(d, d));
  r.spectrum = spectrum_distances(p, rep.matrices);
  return r;
}

}  // namespace adestar
