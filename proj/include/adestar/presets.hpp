#pragma once

#include "adestar/equivariant.hpp"
#include "adestar/groups.hpp"
#include "adestar/irreps.hpp"
#include "adestar/mckay.hpp"
#include "adestar/sphere.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace adestar {

/// One of the algebras with generators a_1..a_n, relations P_i(a_i) = 0 and
/// a_1 + ... + a_n = mu, and a_i self-adjoint.
struct StarPreset {
  std::string name;
  GroupKind group;
  int center_dim = 0;
  double mu = 0;
  // Ordered roots (alpha_i0, ..., alpha_ik) per generator.
  std::vector<std::vector<double>> orderings;

  int generators() const { return static_cast<int>(orderings.size()); }
  // alpha_{j-1} - alpha_j along each ordering.
  std::vector<std::vector<double>> arm_weights() const;
  // Roots sorted ascending.
  std::vector<std::vector<double>> root_sets() const;
  // Eigenvalue multiplicities along each arm of the McKay star (delta
  // differences); the solver imposes them through power-sum traces.
  std::vector<std::vector<int>> multiplicities(const McKayGraph& graph) const;
};

StarPreset preset(const std::string& name);
const std::vector<std::string>& preset_names();

// Arm weights must equal sigma_c * lambda along the star's arms and mu must
// equal delta_c. Throws PreconditionFailed on mismatch.
void check_preset_against_mckay(const StarPreset& p, const McKayGraph& graph);

struct SolverReport {
  std::uint64_t seed = 0;
  int restart = -1;  // winning restart index
  int restarts_tried = 0;
  int iterations = 0;
  int degree = 1;
  bool escalated = false;
  double sum_residual = 0;
  std::vector<double> identity_residuals;
};

struct GeneratorSystem {
  StarPreset preset;
  FiniteSubgroup group;
  UnitaryIrrep irrep;
  std::vector<EquivariantPoly> basis;
  std::vector<RVec> coefficients;  // per generator, over `basis`
  std::vector<EquivariantPoly> generators;
  SolverReport report;
};

// Coefficient-level residuals of sum g_i = mu and P_i(g_i) = 0.
double sum_residual(const GeneratorSystem& system);
std::vector<double> identity_residuals(const GeneratorSystem& system);

// Multi-start Levenberg-Marquardt over the self-adjoint affine equivariant
// basis of V_c, escalating to degree 2 if degree 1 fails. Restart r is seeded
// from (seed, degree, r); restarts run in concurrent batches and the lowest
// accepted index wins.
GeneratorSystem synthesize(const StarPreset& p, std::uint64_t seed);
GeneratorSystem synthesize(const StarPreset& p, const FiniteSubgroup& group, const UnitaryIrrep& irrep,
                           std::uint64_t seed);

inline constexpr int kMaxRestarts = 200;
inline constexpr double kSynthesisTol = 1e-8;

struct StarRepresentation {
  std::vector<Mat> matrices;
  Vec3 point = Vec3::Zero();
  std::string tag = "whole";
};

// A_i = g_i(x). Throws SpectrumViolation if an eigenvalue is more than 1e-6
// from its root set or the sum misses mu by more than 1e-7.
StarRepresentation rep_at(const GeneratorSystem& system, const Vec3& point);

int irreducibility_check(const StarRepresentation& rep);

// Traces of all words of length <= max_length in the matrices.
CVec fingerprint(const std::vector<Mat>& matrices, int max_length = 3);
// Unitary equivalence by fingerprint; a tie at length 3 is rechecked at 4.
bool equivalent(const std::vector<Mat>& a, const std::vector<Mat>& b, double tol = 1e-6);

struct CatalogEntry {
  OrbitKind orbit = OrbitKind::Vertex;
  int block = 0;
  int dim = 0;
  int commutant = 0;
  std::vector<Mat> matrices;
  CVec fingerprint;
};

struct GenericFamily {
  int dim = 0;
  int parameters = 0;  // rank of the tangent map modulo infinitesimal conjugation
  int commutant = 0;   // at a sample generic point
};

struct Catalog {
  GenericFamily generic;
  std::vector<CatalogEntry> special;

  int count(int dim) const;
  int count(int dim, OrbitKind orbit) const;
};

// Throws BlockLeakage if A_i(P) is not block diagonal in the standard
// position of the centralizer at P.
Catalog classify(const GeneratorSystem& system);

struct ResidualReport {
  double sum = 0;
  std::vector<double> identities;
  double hermiticity = 0;
  double equivariance = 0;
  // Per generator, worst eigenvalue-to-root distance over the sample points.
  std::vector<double> spectrum;
  double pointwise_sum = 0;
  double worst() const;
};

ResidualReport verify(const GeneratorSystem& system, int samples = 20, std::uint64_t seed = 7);

struct RepresentationReport {
  double hermiticity = 0;
  double sum = 0;
  std::vector<double> spectrum;
  double worst() const;
};

RepresentationReport verify(const StarPreset& p, const StarRepresentation& rep);

}  // namespace adestar
