#include "adestar/io.hpp"

#include "adestar/error.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace adestar {

namespace {

const char* family_name(GroupFamily f) {
  switch (f) {
    case GroupFamily::BinaryCyclic: return "BinaryCyclic";
    case GroupFamily::BinaryDihedral: return "BinaryDihedral";
    case GroupFamily::BinaryTetrahedral: return "BinaryTetrahedral";
    case GroupFamily::BinaryOctahedral: return "BinaryOctahedral";
    case GroupFamily::BinaryIcosahedral: return "BinaryIcosahedral";
  }
  return "?";
}

Json kind_json(const GroupKind& k) { return {{"family", family_name(k.family)}, {"n", k.n}}; }

GroupKind kind_from_json(const Json& j) { return parse_group_kind(j.at("family").get<std::string>(), j.at("n").get<int>()); }

Json rot_json(const Rot3& r) {
  Json rows = Json::array();
  for (int i = 0; i < 3; ++i) rows.push_back({round12(r(i, 0)), round12(r(i, 1)), round12(r(i, 2))});
  return rows;
}

Rot3 rot_from_json(const Json& j) {
  Rot3 r;
  for (int i = 0; i < 3; ++i)
    for (int k = 0; k < 3; ++k) r(i, k) = j.at(static_cast<std::size_t>(i)).at(static_cast<std::size_t>(k)).get<double>();
  return r;
}

Json reals(const std::vector<double>& v) {
  Json a = Json::array();
  for (double x : v) a.push_back(round12(x));
  return a;
}

Json segment_json(const SegmentMap& m) {
  Json a = Json::array();
  for (const Mat& s : m.samples) a.push_back(to_json(s));
  return a;
}

SegmentMap segment_from_json(const Json& j) {
  SegmentMap m;
  for (const Json& s : j) m.samples.push_back(mat_from_json(s));
  return m;
}

template <typename F>
auto guarded(const char* what, F&& f) {
  try {
    return f();
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::FormatError, std::string(what) + ": " + e.what());
  }
}

}  // namespace

double round12(double v) {
  if (!std::isfinite(v)) throw Error(ErrorCode::FormatError, "non-finite value");
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  const double r = std::strtod(buf, nullptr);
  return r == 0.0 ? 0.0 : r;
}

Json to_json(cplx z) { return {round12(z.real()), round12(z.imag())}; }

cplx cplx_from_json(const Json& j) { return {j.at(0).get<double>(), j.at(1).get<double>()}; }

Json to_json(const Mat& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Mat mat_from_json(const Json& j) {
  return guarded("matrix", [&] {
    const auto rows = static_cast<Eigen::Index>(j.size());
    const auto cols = rows == 0 ? Eigen::Index(0) : static_cast<Eigen::Index>(j.at(0).size());
    Mat m(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r) {
      const Json& row = j.at(static_cast<std::size_t>(r));
      if (static_cast<Eigen::Index>(row.size()) != cols) throw Error(ErrorCode::FormatError, "ragged matrix");
      for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = cplx_from_json(row.at(static_cast<std::size_t>(c)));
    }
    return m;
  });
}

Json to_json(const Vec3& v) { return {round12(v(0)), round12(v(1)), round12(v(2))}; }

Vec3 vec3_from_json(const Json& j) {
  return guarded("point", [&] {
    if (j.size() != 3) throw Error(ErrorCode::FormatError, "point needs three coordinates");
    return Vec3(j.at(0).get<double>(), j.at(1).get<double>(), j.at(2).get<double>());
  });
}

Json group_json(const FiniteSubgroup& g) {
  Json elements = Json::array();
  for (const GroupElement& e : g.elements()) elements.push_back(to_json(Mat(e.matrix)));
  std::ostringstream checksum;
  checksum << std::hex << g.table_checksum();
  return {{"kind", kind_json(g.kind())}, {"name", group_kind_name(g.kind())}, {"order", g.order()},
          {"elements", elements}, {"table_checksum", checksum.str()}};
}

FiniteSubgroup group_from_json(const Json& j) {
  return guarded("group", [&] {
    std::vector<Mat2> mats;
    for (const Json& e : j.at("elements")) {
      const Mat m = mat_from_json(e);
      if (m.rows() != 2 || m.cols() != 2) throw Error(ErrorCode::FormatError, "group elements must be 2x2");
      mats.push_back(m);
    }
    return group_from_elements(kind_from_json(j.at("kind")), mats);
  });
}

Json irreps_json(const FiniteSubgroup& group, std::span<const UnitaryIrrep> irreps, std::uint64_t seed) {
  const ConjugacyClassSet classes = conjugacy_classes(group);
  Json cls = Json::array();
  for (int c = 0; c < classes.size(); ++c)
    cls.push_back({{"representative", classes.representatives[static_cast<std::size_t>(c)]},
                   {"size", classes.classes[static_cast<std::size_t>(c)].size()}});
  Json reps = Json::array();
  for (const UnitaryIrrep& r : irreps) reps.push_back({{"label", r.label}, {"dim", r.dim}});
  Json table = Json::array();
  for (int c = 0; c < classes.size(); ++c) {
    Json row = Json::array();
    for (const UnitaryIrrep& r : irreps) row.push_back(to_json(r.character(c)));
    table.push_back(std::move(row));
  }
  return {{"group", group_kind_name(group.kind())}, {"seed", seed}, {"classes", cls}, {"irreps", reps},
          {"character_table", table}};
}

Json irrep_json(const UnitaryIrrep& r) {
  Json mats = Json::array();
  for (const Mat& m : r.matrices) mats.push_back(to_json(m));
  return {{"label", r.label}, {"dim", r.dim}, {"matrices", mats}};
}

UnitaryIrrep irrep_from_json(const Json& j, const FiniteSubgroup& group) {
  return guarded("irrep", [&] {
    UnitaryIrrep r;
    r.label = j.at("label").get<int>();
    r.dim = j.at("dim").get<int>();
    for (const Json& m : j.at("matrices")) {
      r.matrices.push_back(mat_from_json(m));
      if (r.matrices.back().rows() != r.dim || r.matrices.back().cols() != r.dim)
        throw Error(ErrorCode::FormatError, "irrep matrix has the wrong size");
    }
    if (static_cast<int>(r.matrices.size()) != group.order()) throw Error(ErrorCode::FormatError, "irrep needs one matrix per element");
    const ConjugacyClassSet classes = conjugacy_classes(group);
    r.character.resize(classes.size());
    for (int c = 0; c < classes.size(); ++c) r.character(c) = r(classes.representatives[static_cast<std::size_t>(c)]).trace();
    return r;
  });
}

Json mckay_json(const McKayGraph& g) {
  Json adj = Json::array();
  for (int i = 0; i < g.size(); ++i) {
    Json row = Json::array();
    for (int k = 0; k < g.size(); ++k) row.push_back(g.adjacency(i, k));
    adj.push_back(std::move(row));
  }
  return {{"type", graph_shape(g).name()}, {"adjacency", adj},       {"delta", g.delta},
          {"sigma", g.sigma},              {"lambda", g.lambda},     {"names", g.names},
          {"extending_vertex", g.extending_vertex}, {"tautological", g.tautological}};
}

std::string mckay_csv(const McKayGraph& g) {
  std::ostringstream os;
  os << "vertex,name,delta,sigma,lambda";
  for (int k = 0; k < g.size(); ++k) os << ",a" << k;
  os << "\n";
  for (int i = 0; i < g.size(); ++i) {
    const auto u = static_cast<std::size_t>(i);
    os << i << "," << g.names[u] << "," << g.delta[u] << "," << g.sigma[u] << "," << g.lambda[u];
    for (int k = 0; k < g.size(); ++k) os << "," << g.adjacency(i, k);
    os << "\n";
  }
  return os.str();
}

Json orbits_json(const std::vector<SpecialOrbit>& orbits) {
  Json out = Json::array();
  for (const SpecialOrbit& o : orbits) {
    Json pts = Json::array();
    for (const Vec3& p : o.points) pts.push_back(to_json(p));
    out.push_back({{"kind", orbit_kind_name(o.kind)},
                   {"representative", to_json(o.representative)},
                   {"stabilizer_order", o.stabilizer_order_in_image},
                   {"stabilizer_order_in_group", o.stabilizer_elements.size()},
                   {"size", o.points.size()},
                   {"points", pts}});
  }
  return out;
}

Json domain_json(const FundamentalDomain& d) {
  Json nodes = Json::array();
  for (const DomainNode& n : d.nodes) nodes.push_back({{"x", to_json(n.x)}, {"side", n.side}, {"ijk", {n.i, n.j, n.k}}});
  return {{"A", to_json(d.A)},
          {"B", to_json(d.B)},
          {"C", to_json(d.C)},
          {"A_prime", to_json(d.A_prime)},
          {"a", rot_json(d.a)},
          {"b", rot_json(d.b)},
          {"c", rot_json(d.c)},
          {"lifts", {d.lift_a, d.lift_b, d.lift_c}},
          {"orders", {d.order_a, d.order_b, d.order_c}},
          {"angles", {round12(d.angle_a), round12(d.angle_b), round12(d.angle_c)}},
          {"orientation", d.orientation()},
          {"h", round12(d.h)},
          {"N", d.N},
          {"nodes", nodes},
          {"triangles", d.triangles},
          {"marked_nodes", {d.node_A, d.node_B, d.node_C, d.node_A_prime}},
          {"b_pairs", d.b_pairs},
          {"c_pairs", d.c_pairs}};
}

FundamentalDomain domain_from_json(const Json& j) {
  return guarded("domain", [&] {
    FundamentalDomain d;
    d.A = vec3_from_json(j.at("A"));
    d.B = vec3_from_json(j.at("B"));
    d.C = vec3_from_json(j.at("C"));
    d.A_prime = vec3_from_json(j.at("A_prime"));
    d.a = rot_from_json(j.at("a"));
    d.b = rot_from_json(j.at("b"));
    d.c = rot_from_json(j.at("c"));
    d.lift_a = j.at("lifts").at(0).get<int>();
    d.lift_b = j.at("lifts").at(1).get<int>();
    d.lift_c = j.at("lifts").at(2).get<int>();
    d.order_a = j.at("orders").at(0).get<int>();
    d.order_b = j.at("orders").at(1).get<int>();
    d.order_c = j.at("orders").at(2).get<int>();
    d.angle_a = j.at("angles").at(0).get<double>();
    d.angle_b = j.at("angles").at(1).get<double>();
    d.angle_c = j.at("angles").at(2).get<double>();
    d.h = j.at("h").get<double>();
    d.N = j.at("N").get<int>();
    for (const Json& n : j.at("nodes")) {
      const auto ijk = n.at("ijk").get<std::array<int, 3>>();
      d.nodes.push_back({vec3_from_json(n.at("x")), n.at("side").get<int>(), ijk[0], ijk[1], ijk[2]});
    }
    d.triangles = j.at("triangles").get<std::vector<std::array<int, 3>>>();
    const auto marks = j.at("marked_nodes").get<std::array<int, 4>>();
    d.node_A = marks[0];
    d.node_B = marks[1];
    d.node_C = marks[2];
    d.node_A_prime = marks[3];
    d.b_pairs = j.at("b_pairs").get<std::vector<std::pair<int, int>>>();
    d.c_pairs = j.at("c_pairs").get<std::vector<std::pair<int, int>>>();
    const auto n = static_cast<int>(d.nodes.size());
    auto valid = [n](int v) { return v >= 0 && v < n; };
    d.neighbours.assign(d.nodes.size(), {});
    for (const auto& t : d.triangles)
      for (int e = 0; e < 3; ++e) {
        const int p = t[static_cast<std::size_t>(e)], q = t[static_cast<std::size_t>((e + 1) % 3)];
        if (!valid(p) || !valid(q)) throw Error(ErrorCode::FormatError, "triangle refers to a missing node");
        auto& np = d.neighbours[static_cast<std::size_t>(p)];
        auto& nq = d.neighbours[static_cast<std::size_t>(q)];
        if (std::find(np.begin(), np.end(), q) == np.end()) np.push_back(q);
        if (std::find(nq.begin(), nq.end(), p) == nq.end()) nq.push_back(p);
      }
    for (auto& nb : d.neighbours) std::sort(nb.begin(), nb.end());
    for (int v : marks)
      if (!valid(v)) throw Error(ErrorCode::FormatError, "marked node out of range");
    for (const auto* pairs : {&d.b_pairs, &d.c_pairs})
      for (const auto& [s, t] : *pairs)
        if (!valid(s) || !valid(t)) throw Error(ErrorCode::FormatError, "boundary pair out of range");
    return d;
  });
}

Json blocks_json(const BlockStructure& b) {
  Json eig = Json::array();
  for (cplx z : b.eigenvalues) eig.push_back(to_json(z));
  return {{"sizes", b.sizes},
          {"eigenvalues", eig},
          {"U", to_json(b.U)},
          {"stabilizer_generator", b.stabilizer_generator},
          {"stabilizer_order", b.stabilizer_order}};
}

Json poly_json(const EquivariantPoly& f) {
  Json terms = Json::array();
  const auto monos = reduced_monomials(f.degree);
  for (std::size_t m = 0; m < monos.size(); ++m)
    terms.push_back({{"a", monos[m].a}, {"b", monos[m].b}, {"c", monos[m].c}, {"matrix", to_json(f.coeffs[m])}});
  return {{"irrep", f.irrep}, {"dim", f.dim}, {"D", f.degree}, {"terms", terms}};
}

EquivariantPoly poly_from_json(const Json& j) {
  return guarded("polynomial", [&] {
    const int degree = j.at("D").get<int>();
    if (degree < 0 || degree > kMaxDegree) throw Error(ErrorCode::FormatError, "degree out of range");
    EquivariantPoly f = EquivariantPoly::zero(j.at("irrep").get<int>(), j.at("dim").get<int>(), degree);
    for (const Json& t : j.at("terms")) {
      const Monomial m{t.at("a").get<int>(), t.at("b").get<int>(), t.at("c").get<int>()};
      if (m.a < 0 || m.a > 1 || m.b < 0 || m.c < 0 || m.degree() > degree)
        throw Error(ErrorCode::FormatError, "monomial outside the reduced basis");
      const Mat c = mat_from_json(t.at("matrix"));
      if (c.rows() != f.dim || c.cols() != f.dim) throw Error(ErrorCode::FormatError, "coefficient has the wrong size");
      f.coeffs[static_cast<std::size_t>(monomial_index(m))] = c;
    }
    return f;
  });
}

Json preset_json(const StarPreset& p) {
  Json orderings = Json::array();
  for (const auto& o : p.orderings) orderings.push_back(reals(o));
  return {{"name", p.name}, {"group", kind_json(p.group)}, {"center_dim", p.center_dim}, {"mu", round12(p.mu)},
          {"orderings", orderings}};
}

StarPreset preset_from_json(const Json& j) {
  return guarded("preset", [&] {
    StarPreset p;
    p.name = j.at("name").get<std::string>();
    p.group = kind_from_json(j.at("group"));
    p.center_dim = j.at("center_dim").get<int>();
    p.mu = j.at("mu").get<double>();
    p.orderings = j.at("orderings").get<std::vector<std::vector<double>>>();
    return p;
  });
}

Json system_json(const GeneratorSystem& s) {
  Json gens = Json::array();
  for (const EquivariantPoly& g : s.generators) gens.push_back(poly_json(g));
  Json coeffs = Json::array();
  for (const RVec& c : s.coefficients) coeffs.push_back(reals(std::vector<double>(c.data(), c.data() + c.size())));
  const SolverReport& r = s.report;
  return {{"preset", preset_json(s.preset)},
          {"group", group_json(s.group)},
          {"irrep", irrep_json(s.irrep)},
          {"generators", gens},
          {"coefficients", coeffs},
          {"solver",
           {{"seed", r.seed},
            {"restart", r.restart},
            {"restarts_tried", r.restarts_tried},
            {"iterations", r.iterations},
            {"degree", r.degree},
            {"escalated", r.escalated},
            {"sum_residual", round12(r.sum_residual)},
            {"identity_residuals", reals(r.identity_residuals)}}}};
}

GeneratorSystem system_from_json(const Json& j) {
  return guarded("system", [&] {
    GeneratorSystem s{preset_from_json(j.at("preset")), group_from_json(j.at("group")), {}, {}, {}, {}, {}};
    s.irrep = irrep_from_json(j.at("irrep"), s.group);
    for (const Json& g : j.at("generators")) {
      s.generators.push_back(poly_from_json(g));
      if (s.generators.back().dim != s.irrep.dim) throw Error(ErrorCode::FormatError, "generator does not act on the irrep");
    }
    if (static_cast<int>(s.generators.size()) != s.preset.generators())
      throw Error(ErrorCode::FormatError, "generator count does not match the preset");
    for (const Json& c : j.at("coefficients")) {
      const auto v = c.get<std::vector<double>>();
      s.coefficients.push_back(Eigen::Map<const RVec>(v.data(), static_cast<Eigen::Index>(v.size())));
    }
    const Json& r = j.at("solver");
    s.report.seed = r.at("seed").get<std::uint64_t>();
    s.report.restart = r.at("restart").get<int>();
    s.report.restarts_tried = r.at("restarts_tried").get<int>();
    s.report.iterations = r.at("iterations").get<int>();
    s.report.degree = r.at("degree").get<int>();
    s.report.escalated = r.at("escalated").get<bool>();
    s.report.sum_residual = r.at("sum_residual").get<double>();
    s.report.identity_residuals = r.at("identity_residuals").get<std::vector<double>>();
    s.basis = equivariant_basis(s.group, s.irrep, s.report.degree);
    return s;
  });
}

Json representation_json(const StarRepresentation& rep) {
  Json mats = Json::array();
  for (const Mat& m : rep.matrices) mats.push_back(to_json(m));
  return {{"point", to_json(rep.point)}, {"tag", rep.tag}, {"matrices", mats}};
}

Json catalog_json(const Catalog& c) {
  Json special = Json::array();
  for (const CatalogEntry& e : c.special) {
    Json mats = Json::array();
    for (const Mat& m : e.matrices) mats.push_back(to_json(m));
    Json fp = Json::array();
    for (Eigen::Index k = 0; k < e.fingerprint.size(); ++k) fp.push_back(to_json(e.fingerprint(k)));
    special.push_back({{"orbit", orbit_kind_name(e.orbit)},
                       {"block", e.block},
                       {"dim", e.dim},
                       {"commutant", e.commutant},
                       {"matrices", mats},
                       {"fingerprint", fp}});
  }
  Json counts = Json::object();
  int top = c.generic.dim;
  for (const CatalogEntry& e : c.special) top = std::max(top, e.dim);
  for (int d = 1; d <= top; ++d)
    if (c.count(d) > 0) counts[std::to_string(d)] = c.count(d);
  return {{"generic", {{"dim", c.generic.dim}, {"parameters", c.generic.parameters}, {"commutant", c.generic.commutant}}},
          {"special", special},
          {"counts", counts}};
}

Json residual_json(const ResidualReport& r) {
  return {{"sum", round12(r.sum)},
          {"identities", reals(r.identities)},
          {"hermiticity", round12(r.hermiticity)},
          {"equivariance", round12(r.equivariance)},
          {"spectrum", reals(r.spectrum)},
          {"pointwise_sum", round12(r.pointwise_sum)},
          {"worst", round12(r.worst())}};
}

Json exceptional_json(const FiniteSubgroup& group, std::span<const UnitaryIrrep> irreps, const McKayGraph& graph) {
  Json found = Json::array();
  for (const ExceptionalIrrep& e : find_exceptional(group, irreps)) {
    Json scalars = Json::array();
    for (cplx z : e.scalars) scalars.push_back(to_json(z));
    found.push_back({{"irrep", e.irrep}, {"dim", e.dim}, {"elements", e.elements}, {"scalars", scalars}});
  }
  Json labelings = Json::array();
  for (const TraceLabeling& l : enumerate_labelings(graph)) {
    Json labels = Json::array();
    for (cplx z : l.labels) labels.push_back(to_json(z));
    const auto g = realizability_check(group, irreps, graph, l);
    labelings.push_back({{"labels", labels}, {"norm_squared", round12(l.norm_squared())},
                         {"realized_by", g ? Json(*g) : Json(nullptr)}});
  }
  return {{"group", group_kind_name(group.kind())}, {"exceptional", found}, {"labelings", labelings}};
}

Json clutching_json(const ClutchingData& c) {
  Json m = Json::array();
  for (const BlockAlgebra& b : c.M) m.push_back({{"sizes", b.sizes}, {"U", to_json(b.U)}});
  return {{"dim", c.dim}, {"m_b", segment_json(c.m_b)}, {"m_c", segment_json(c.m_c)}, {"M", m}};
}

ClutchingData clutching_from_json(const Json& j) {
  return guarded("clutching", [&] {
    ClutchingData c;
    c.dim = j.at("dim").get<int>();
    c.m_b = segment_from_json(j.at("m_b"));
    c.m_c = segment_from_json(j.at("m_c"));
    if (c.m_b.samples.empty() || c.m_c.samples.empty()) throw Error(ErrorCode::FormatError, "clutching maps need samples");
    const Json& m = j.at("M");
    if (m.size() != 4) throw Error(ErrorCode::FormatError, "clutching data need four algebras");
    for (std::size_t p = 0; p < 4; ++p) c.M[p] = {m.at(p).at("sizes").get<std::vector<int>>(), mat_from_json(m.at(p).at("U"))};
    return c;
  });
}

Json gauge_json(const GaugeField& g, const ClutchingData& c1, const ClutchingData& c2) {
  Json t = Json::array();
  for (const Mat& m : g.t) t.push_back(to_json(m));
  Json u = Json::array();
  for (const Mat& m : g.u) u.push_back(to_json(m));
  return {{"domain", domain_json(g.domain)},
          {"c1", clutching_json(c1)},
          {"c2", clutching_json(c2)},
          {"t", t},
          {"u", u},
          {"disk_radius", round12(g.disk_radius)},
          {"exclusion_radius", round12(g.exclusion_radius)},
          {"max_jump", round12(g.max_jump)},
          {"sweeps", g.sweeps},
          {"last_update", round12(g.last_update)},
          {"refined", g.refined}};
}

GaugeFile gauge_from_json(const Json& j) {
  return guarded("gauge", [&] {
    GaugeFile f;
    f.gauge.domain = domain_from_json(j.at("domain"));
    f.c1 = clutching_from_json(j.at("c1"));
    f.c2 = clutching_from_json(j.at("c2"));
    for (const Json& m : j.at("t")) f.gauge.t.push_back(mat_from_json(m));
    if (f.gauge.t.size() != f.gauge.domain.nodes.size()) throw Error(ErrorCode::FormatError, "gauge needs one matrix per node");
    for (std::size_t p = 0; p < 4; ++p) f.gauge.u[p] = mat_from_json(j.at("u").at(p));
    f.gauge.disk_radius = j.at("disk_radius").get<double>();
    f.gauge.exclusion_radius = j.at("exclusion_radius").get<double>();
    f.gauge.max_jump = j.at("max_jump").get<double>();
    f.gauge.sweeps = j.at("sweeps").get<int>();
    f.gauge.last_update = j.at("last_update").get<double>();
    f.gauge.refined = j.at("refined").get<bool>();
    return f;
  });
}

Json gauge_report_json(const GaugeReport& r) {
  return {{"boundary_b", round12(r.boundary_b)}, {"boundary_c", round12(r.boundary_c)}, {"locality", round12(r.locality)},
          {"membership", round12(r.membership)}, {"special_unitary", round12(r.special_unitary)}, {"worst", round12(r.worst())}};
}

Json transport_report_json(const TransportReport& r) {
  return {{"product", round12(r.product)}, {"adjoint", round12(r.adjoint)}, {"membership", round12(r.membership)},
          {"gluing", round12(r.gluing)}, {"worst", round12(r.worst())}};
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidArgument, "cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::FormatError, path + ": " + e.what());
  }
}

void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::InvalidArgument, "cannot write " + path);
  out << j.dump(1) << "\n";
}

}  // namespace adestar
