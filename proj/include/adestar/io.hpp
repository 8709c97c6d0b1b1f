#pragma once

#include "adestar/exceptional.hpp"
#include "adestar/presets.hpp"
#include "adestar/trivializer.hpp"

#include <json.hpp>

#include <span>
#include <string>
#include <vector>

namespace adestar {

using Json = nlohmann::json;

/// Floats are written with 12 significant digits. Matrices are arrays of
/// rows whose entries are [re, im] pairs; loaders throw FormatError.
double round12(double v);

Json to_json(const Mat& m);
Mat mat_from_json(const Json& j);
Json to_json(const Vec3& v);
Vec3 vec3_from_json(const Json& j);
Json to_json(cplx z);
cplx cplx_from_json(const Json& j);

Json group_json(const FiniteSubgroup& group);
FiniteSubgroup group_from_json(const Json& j);

Json irreps_json(const FiniteSubgroup& group, std::span<const UnitaryIrrep> irreps, std::uint64_t seed);
Json irrep_json(const UnitaryIrrep& irrep);
UnitaryIrrep irrep_from_json(const Json& j, const FiniteSubgroup& group);

Json mckay_json(const McKayGraph& graph);
// One row per vertex: vertex, name, delta, sigma, lambda, then the adjacency row.
std::string mckay_csv(const McKayGraph& graph);

Json orbits_json(const std::vector<SpecialOrbit>& orbits);

Json domain_json(const FundamentalDomain& domain);
FundamentalDomain domain_from_json(const Json& j);

Json blocks_json(const BlockStructure& blocks);

// {irrep, D, terms: [{a, b, c, matrix}]}.
Json poly_json(const EquivariantPoly& f);
EquivariantPoly poly_from_json(const Json& j);

Json preset_json(const StarPreset& p);
StarPreset preset_from_json(const Json& j);

// Embeds the group elements, the irrep matrices, generators in coefficient
// format and the solver report. Loading recomputes the basis.
Json system_json(const GeneratorSystem& system);
GeneratorSystem system_from_json(const Json& j);

Json representation_json(const StarRepresentation& rep);
Json catalog_json(const Catalog& catalog);
Json residual_json(const ResidualReport& report);
Json exceptional_json(const FiniteSubgroup& group, std::span<const UnitaryIrrep> irreps, const McKayGraph& graph);

Json clutching_json(const ClutchingData& c);
ClutchingData clutching_from_json(const Json& j);

// Mesh nodes and t, with the domain and both clutching data so that the
// file can be checked on its own.
Json gauge_json(const GaugeField& gauge, const ClutchingData& c1, const ClutchingData& c2);
struct GaugeFile {
  GaugeField gauge;
  ClutchingData c1, c2;
};
GaugeFile gauge_from_json(const Json& j);

Json gauge_report_json(const GaugeReport& r);
Json transport_report_json(const TransportReport& r);

Json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& j);

}  // namespace adestar
