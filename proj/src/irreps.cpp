#include "adestar/irreps.hpp"

#include "adestar/error.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <random>

namespace adestar {

namespace {

constexpr int kMaxProbeRetries = 10;

// Subspace of the regular representation, columns orthonormal.
struct Subspace {
  Mat basis;
  std::uint64_t key = 0;
};

// tr(P^* R(g) P) for every g, where R(g) e_h = e_{gh}.
CVec regular_traces(const FiniteSubgroup& group, const Mat& p) {
  const int n = group.order();
  CVec traces = CVec::Zero(n);
  for (int g = 0; g < n; ++g) {
    cplx t = 0;
    for (int h = 0; h < n; ++h) t += p.row(group.mul(g, h)).conjugate().cwiseProduct(p.row(h)).sum();
    traces(g) = t;
  }
  return traces;
}

Mat restricted(const FiniteSubgroup& group, const Mat& p, int g) {
  Mat rp(p.rows(), p.cols());
  for (int h = 0; h < group.order(); ++h) rp.row(group.mul(g, h)) = p.row(h);
  return p.adjoint() * rp;
}

int commutant_dim_from_traces(const CVec& traces) {
  return static_cast<int>(std::lround(traces.squaredNorm() / static_cast<double>(traces.size())));
}

Mat random_hermitian(Eigen::Index m, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Mat a(m, m);
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = 0; j < m; ++j) a(i, j) = cplx(normal(rng), normal(rng));
  return (a + a.adjoint()) * (0.5 / std::sqrt(static_cast<double>(m)));
}

// Group-averaged probe on a subspace; commutes with the restricted action.
Mat averaged_probe(const FiniteSubgroup& group, const Mat& basis, std::uint64_t seed) {
  const int n = group.order();
  const Eigen::Index m = basis.cols();
  const Mat probe = random_hermitian(m, seed);
  Mat t = Mat::Zero(m, m);
  if (m == n) {
    // Full regular representation: T[a,b] = avg_g M[g^-1 a, g^-1 b].
    for (int g = 0; g < n; ++g) {
      const int gi = group.inverse(g);
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) t(a, b) += probe(group.mul(gi, a), group.mul(gi, b));
    }
    // The regular basis is the identity; fold the given basis back in.
    t = basis.adjoint() * t * basis;
  } else {
    for (int g = 0; g < n; ++g) {
      const Mat r = restricted(group, basis, g);
      t += r * probe * r.adjoint();
    }
  }
  t /= static_cast<double>(n);
  return (t + t.adjoint()) * 0.5;
}

void split(const FiniteSubgroup& group, const Subspace& space, std::uint64_t seed, std::vector<Mat>& out) {
  for (int attempt = 0; attempt < kMaxProbeRetries; ++attempt) {
    const std::uint64_t probe_seed = mix_seed(mix_seed(seed, space.key), static_cast<std::uint64_t>(attempt));
    const Mat t = averaged_probe(group, space.basis, probe_seed);
    Eigen::SelfAdjointEigenSolver<Mat> es(t);
    const std::vector<int> starts = cluster_sorted(es.eigenvalues(), kClusterTol);
    if (starts.size() <= 2) continue;  // probe did not split this subspace
    for (std::size_t c = 0; c + 1 < starts.size(); ++c) {
      const int lo = starts[c];
      const int width = starts[c + 1] - lo;
      Subspace child{space.basis * es.eigenvectors().middleCols(lo, width), mix_seed(space.key, c + 1)};
      const int comm = commutant_dim_from_traces(regular_traces(group, child.basis));
      if (comm == 1) {
        out.push_back(std::move(child.basis));
      } else {
        split(group, child, seed, out);
      }
    }
    return;
  }
  throw Error(ErrorCode::SplitFailure, "probe failed to split a reducible subspace of dimension " +
                                           std::to_string(space.basis.cols()));
}

bool characters_close(const CVec& a, const CVec& b) { return max_abs(a - b) <= kCharacterTol; }

}  // namespace

ConjugacyClassSet conjugacy_classes(const FiniteSubgroup& group) {
  const int n = group.order();
  ConjugacyClassSet out;
  out.class_of.assign(static_cast<std::size_t>(n), -1);
  for (int g = 0; g < n; ++g) {
    if (out.class_of[static_cast<std::size_t>(g)] >= 0) continue;
    std::vector<int> cls;
    for (int h = 0; h < n; ++h) {
      const int c = group.mul(group.mul(h, g), group.inverse(h));
      if (out.class_of[static_cast<std::size_t>(c)] < 0) {
        out.class_of[static_cast<std::size_t>(c)] = out.size();
        cls.push_back(c);
      }
    }
    std::sort(cls.begin(), cls.end());
    out.representatives.push_back(g);
    out.classes.push_back(std::move(cls));
  }
  return out;
}

cplx character_inner(const ConjugacyClassSet& classes, const CVec& a, const CVec& b) {
  cplx s = 0;
  double total = 0;
  for (int c = 0; c < classes.size(); ++c) {
    const double w = static_cast<double>(classes.classes[static_cast<std::size_t>(c)].size());
    s += w * std::conj(a(c)) * b(c);
    total += w;
  }
  return s / total;
}

void unitarize(std::vector<Mat>& matrices) {
  if (matrices.empty()) return;
  const Eigen::Index d = matrices.front().rows();
  Mat h = Mat::Zero(d, d);
  for (const Mat& m : matrices) h += m.adjoint() * m;
  h /= static_cast<double>(matrices.size());
  // rho(g)^* H rho(g) = H, so with H = L L^*, L^* rho L^{-*} is unitary.
  Eigen::LLT<Mat> llt(h);
  const Mat lstar = llt.matrixU();
  const Mat lstar_inv = lstar.inverse();
  for (Mat& m : matrices) m = lstar * m * lstar_inv;
}

std::vector<UnitaryIrrep> all_irreps(const FiniteSubgroup& group, std::uint64_t seed) {
  const int n = group.order();
  const ConjugacyClassSet classes = conjugacy_classes(group);

  std::vector<Mat> pieces;
  split(group, Subspace{Mat::Identity(n, n), 0}, seed, pieces);

  std::vector<UnitaryIrrep> irreps;
  for (const Mat& basis : pieces) {
    UnitaryIrrep rep;
    rep.dim = static_cast<int>(basis.cols());
    rep.character.resize(classes.size());
    for (int c = 0; c < classes.size(); ++c)
      rep.character(c) = restricted(group, basis, classes.representatives[static_cast<std::size_t>(c)]).trace();
    const bool duplicate = std::any_of(irreps.begin(), irreps.end(), [&](const UnitaryIrrep& r) {
      return r.dim == rep.dim && characters_close(r.character, rep.character);
    });
    if (duplicate) continue;
    rep.matrices.reserve(static_cast<std::size_t>(n));
    for (int g = 0; g < n; ++g) rep.matrices.push_back(restricted(group, basis, g));
    unitarize(rep.matrices);
    irreps.push_back(std::move(rep));
  }

  auto char_key = [](const UnitaryIrrep& r) {
    std::vector<std::int64_t> key;
    for (Eigen::Index c = 0; c < r.character.size(); ++c) {
      key.push_back(-std::llround(r.character(c).real() / kCharacterTol));
      key.push_back(-std::llround(r.character(c).imag() / kCharacterTol));
    }
    return key;
  };
  std::sort(irreps.begin(), irreps.end(), [&](const UnitaryIrrep& a, const UnitaryIrrep& b) {
    if (a.dim != b.dim) return a.dim < b.dim;
    return char_key(a) < char_key(b);
  });

  for (std::size_t k = 0; k < irreps.size(); ++k) {
    UnitaryIrrep& r = irreps[k];
    r.label = static_cast<int>(k);
    if (r.dim == 1) {
      const bool trivial = max_abs(r.character - CVec::Ones(r.character.size())) <= kCharacterTol;
      for (int g = 0; g < n; ++g) {
        const cplx v = trivial ? cplx(1.0, 0.0) : r.matrices[static_cast<std::size_t>(g)](0, 0);
        r.matrices[static_cast<std::size_t>(g)] = Mat::Constant(1, 1, v / std::abs(v));
      }
      if (trivial) r.character = CVec::Ones(r.character.size());
    }
  }

  long dim_sq = 0;
  for (const auto& r : irreps) dim_sq += static_cast<long>(r.dim) * r.dim;
  if (dim_sq != n || static_cast<int>(irreps.size()) != classes.size()) {
    throw Error(ErrorCode::SplitFailure, "decomposition incomplete: sum dim^2 = " + std::to_string(dim_sq) +
                                             ", |G| = " + std::to_string(n));
  }
  return irreps;
}

UnitaryIrrep tautological_rep(const FiniteSubgroup& group, std::span<const UnitaryIrrep> irreps) {
  const ConjugacyClassSet classes = conjugacy_classes(group);
  CVec chi(classes.size());
  for (int c = 0; c < classes.size(); ++c) chi(c) = group.matrix(classes.representatives[static_cast<std::size_t>(c)]).trace();
  for (const UnitaryIrrep& r : irreps) {
    if (r.dim == 2 && characters_close(r.character, chi)) {
      UnitaryIrrep taut;
      taut.label = r.label;
      taut.dim = 2;
      taut.character = chi;
      for (const auto& e : group.elements()) taut.matrices.push_back(e.matrix);
      return taut;
    }
  }
  throw Error(ErrorCode::NotFound, "no irrep matches the tautological character");
}

double homomorphism_defect(const FiniteSubgroup& group, const UnitaryIrrep& rep) {
  double worst = 0;
  for (int g = 0; g < group.order(); ++g)
    for (int h = 0; h < group.order(); ++h)
      worst = std::max(worst, max_abs(rep(g) * rep(h) - rep(group.mul(g, h))));
  return worst;
}

double rep_unitarity_defect(const UnitaryIrrep& rep) {
  double worst = 0;
  for (const Mat& m : rep.matrices) worst = std::max(worst, unitarity_defect(m));
  return worst;
}

}  // namespace adestar
