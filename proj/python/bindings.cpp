#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "adestar/cli.hpp"
#include "adestar/error.hpp"
#include "adestar/io.hpp"

#include <sstream>

namespace py = pybind11;
using namespace adestar;

namespace {

// Artifacts cross the boundary as JSON text; the Python side parses them.
std::string dump(const Json& j) { return j.dump(); }

struct Setup {
  FiniteSubgroup group;
  std::vector<UnitaryIrrep> irreps;
};

Setup setup(const std::string& kind, int n, std::uint64_t seed) {
  FiniteSubgroup g = build_group(parse_group_kind(kind, n));
  auto irreps = all_irreps(g, seed);
  return {std::move(g), std::move(irreps)};
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Equivariant star-shaped quiver representations over binary polyhedral groups";

  py::register_exception<Error>(m, "AdestarError", PyExc_RuntimeError);

  m.def("run", [](const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = run(args, out, err);
    return py::make_tuple(code, out.str(), err.str());
  }, "Runs one CLI subcommand and returns (exit code, stdout, stderr).", py::arg("args"));

  m.def("preset_names", &preset_names);

  m.def("group", [](const std::string& kind, int n) { return dump(group_json(build_group(parse_group_kind(kind, n)))); },
        py::arg("kind"), py::arg("n") = 0);

  m.def("irreps", [](const std::string& kind, int n, std::uint64_t seed) {
    const Setup s = setup(kind, n, seed);
    return dump(irreps_json(s.group, s.irreps, seed));
  }, py::arg("kind"), py::arg("n") = 0, py::arg("seed") = 1);

  m.def("mckay", [](const std::string& kind, int n) {
    const Setup s = setup(kind, n, 1);
    return dump(mckay_json(mckay_graph(s.group, s.irreps)));
  }, py::arg("kind"), py::arg("n") = 0);

  m.def("orbits", [](const std::string& kind, int n) {
    return dump(orbits_json(special_orbits(build_group(parse_group_kind(kind, n)))));
  }, py::arg("kind"), py::arg("n") = 0);

  m.def("exceptional", [](const std::string& kind, int n) {
    const Setup s = setup(kind, n, 1);
    return dump(exceptional_json(s.group, s.irreps, mckay_graph(s.group, s.irreps)));
  }, py::arg("kind"), py::arg("n") = 0);

  m.def("synthesize", [](const std::string& name, std::uint64_t seed) {
    py::gil_scoped_release release;
    return dump(system_json(synthesize(preset(name), seed)));
  }, py::arg("preset"), py::arg("seed") = 1);

  m.def("rep_at", [](const std::string& system, const std::vector<double>& point) {
    if (point.size() != 3) throw Error(ErrorCode::InvalidArgument, "point needs three coordinates");
    const GeneratorSystem s = system_from_json(Json::parse(system));
    return dump(representation_json(rep_at(s, Vec3(point[0], point[1], point[2]))));
  }, py::arg("system"), py::arg("point"));

  m.def("classify", [](const std::string& system) {
    const GeneratorSystem s = system_from_json(Json::parse(system));
    py::gil_scoped_release release;
    return dump(catalog_json(classify(s)));
  }, py::arg("system"));

  m.def("verify", [](const std::string& system) {
    return dump(residual_json(verify(system_from_json(Json::parse(system)))));
  }, py::arg("system"));

  m.def("trivialize", [](const std::string& system, double h) {
    const GeneratorSystem s = system_from_json(Json::parse(system));
    py::gil_scoped_release release;
    const FundamentalDomain d = fundamental_domain(s.group, h);
    const ClutchingData c1 = equivariant_to_clutching(s, d);
    const ClutchingData c2 = standard_clutching(s.group, s.irrep, d);
    const GaugeField g = build_gauge(c1, c2, d);
    Json j = gauge_json(g, c1, c2);
    j["report"] = gauge_report_json(check_gauge(c1, c2, g));
    return dump(j);
  }, py::arg("system"), py::arg("h") = 0.1);
}
