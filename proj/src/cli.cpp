#include "adestar/cli.hpp"

#include "adestar/error.hpp"
#include "adestar/io.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>

namespace adestar {

namespace {

struct Usage : std::runtime_error {
  using std::runtime_error::runtime_error;
};

bool usage_code(ErrorCode c) {
  switch (c) {
    case ErrorCode::InvalidArgument:
    case ErrorCode::FormatError:
    case ErrorCode::MeshTooCoarse:
    case ErrorCode::PreconditionFailed:
    case ErrorCode::NotFound:
    case ErrorCode::OddCycleUnsupported:
      return true;
    default:
      return false;
  }
}

Vec3 parse_point(const std::string& s) {
  std::vector<double> v;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      v.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw Usage("bad coordinate '" + item + "' in --point (expected x,y,z)");
    }
  }
  if (v.size() != 3) throw Usage("--point needs three comma-separated coordinates");
  return {v[0], v[1], v[2]};
}

// Checks accumulated by verify and selftest.
struct Checklist {
  double tolerance;
  Json items = Json::array();
  bool pass = true;

  void value(const std::string& name, double v, double tol) {
    const bool ok = std::isfinite(v) && v <= tol;
    items.push_back({{"check", name}, {"value", round12(v)}, {"tolerance", tol}, {"pass", ok}});
    pass = pass && ok;
  }
  void residual(const std::string& name, double v) { value(name, v, tolerance); }
  void equal(const std::string& name, const Json& got, const Json& want) {
    const bool ok = got == want;
    items.push_back({{"check", name}, {"value", got}, {"expected", want}, {"pass", ok}});
    pass = pass && ok;
  }
  Json json() const { return {{"checks", items}, {"pass", pass}}; }
};

std::string expected_shape(const std::string& preset_name) { return preset_name.substr(0, 1) + "~" + preset_name.substr(1); }

std::vector<Vec3> random_points(std::uint64_t seed, int count) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  std::vector<Vec3> pts;
  while (static_cast<int>(pts.size()) < count) {
    const Vec3 v(normal(rng), normal(rng), normal(rng));
    if (v.norm() > 1e-6) pts.push_back(v.normalized());
  }
  return pts;
}

void check_system(Checklist& c, const GeneratorSystem& s, std::uint64_t seed) {
  c.value("sum_residual", sum_residual(s), kSynthesisTol);
  const auto ids = identity_residuals(s);
  for (std::size_t i = 0; i < ids.size(); ++i) c.value("identity_residual_" + std::to_string(i + 1), ids[i], kSynthesisTol);
  const ResidualReport r = verify(s, 20, seed);
  c.residual("hermiticity", r.hermiticity);
  c.residual("equivariance", r.equivariance);
  c.residual("pointwise_sum", r.pointwise_sum);
  for (std::size_t i = 0; i < r.spectrum.size(); ++i) c.residual("spectrum_" + std::to_string(i + 1), r.spectrum[i]);
  int worst_commutant = 1;
  std::string spectra = "ok";
  for (const Vec3& x : random_points(mix_seed(seed, 0xc0), 5)) {
    try {
      worst_commutant = std::max(worst_commutant, irreducibility_check(rep_at(s, x)));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::SpectrumViolation) throw;
      spectra = e.what();
    }
  }
  c.equal("representations_at_random_points", spectra, "ok");
  c.equal("generic_commutant_dimension", worst_commutant, 1);
}

void check_gauge_file(Checklist& c, const GaugeFile& f) {
  const ClutchingReport r1 = check_clutching(f.c1), r2 = check_clutching(f.c2);
  c.residual("clutching_c1", r1.worst());
  c.residual("clutching_c2", r2.worst());
  const GaugeReport g = check_gauge(f.c1, f.c2, f.gauge);
  c.residual("gauge_boundary_b", g.boundary_b);
  c.residual("gauge_boundary_c", g.boundary_c);
  c.residual("gauge_locality", g.locality);
  c.residual("gauge_membership", g.membership);
  c.value("gauge_special_unitary", g.special_unitary, 1e-8);
}

Json transport_all(const GaugeFile& f, const GeneratorSystem& s, std::vector<std::vector<Mat>>* samples) {
  std::vector<std::vector<Mat>> gens;
  for (const EquivariantPoly& g : s.generators) gens.push_back(sample_on_domain(g, f.gauge.domain));
  TransportReport worst;
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t k = 0; k < gens.size(); ++k) {
      const TransportReport r = check_transport(f.c2, f.gauge, gens[i], gens[k]);
      worst.product = std::max(worst.product, r.product);
      worst.adjoint = std::max(worst.adjoint, r.adjoint);
      worst.membership = std::max(worst.membership, r.membership);
      worst.gluing = std::max(worst.gluing, r.gluing);
    }
  if (samples)
    for (const auto& g : gens) samples->push_back(apply_gauge(f.gauge, g));
  return transport_report_json(worst);
}

}  // namespace

std::uint64_t default_seed() {
  const char* env = std::getenv("ADESTAR_SEED");
  if (!env || !*env) return 1;
  try {
    std::size_t used = 0;
    const std::string s(env);
    if (s.front() == '-') throw std::invalid_argument(s);
    const unsigned long long v = std::stoull(s, &used, 0);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw Error(ErrorCode::InvalidArgument, std::string("ADESTAR_SEED is not an unsigned 64-bit integer: ") + env);
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  try {
    cfg.seed = default_seed();
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  CLI::App app{"Finite subgroups of SU(2), McKay graphs and matrix-function algebras on the sphere", "adestar"};
  app.require_subcommand(1, 1);
  // --h is the mesh size, so help is --help only.
  app.set_help_flag("--help", "Print this help message and exit");
  app.set_help_all_flag("--help-all", "Show help for all subcommands");

  std::string kind_name, preset_name, system_path, gauge_path, point_text;
  int n = 0, irrep_label = -1, degree = 1;
  bool with_samples = false;
  std::function<int()> action;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--seed", cfg.seed, "Random seed (default: ADESTAR_SEED or 1)");
    sub->add_option("--tol", cfg.tolerance, "Pass threshold for verification residuals")->check(CLI::PositiveNumber);
    sub->add_option("--out", cfg.out, "Write the artifact to this file instead of stdout");
  };
  auto add_emit = [&](CLI::App* sub, std::vector<std::string> formats) {
    sub->add_option("--emit", cfg.emit, "Output format")->check(CLI::IsMember(std::move(formats)));
  };
  auto add_kind = [&](CLI::App* sub) {
    sub->add_option("--kind", kind_name, "Group: BC, BD, BT, BO, BI or the long names")->required();
    sub->add_option("-n", n, "Parameter of BC (order) and BD (order 4n)");
  };
  auto add_h = [&](CLI::App* sub, bool required) {
    auto* o = sub->add_option("--h", cfg.h, "Mesh size")->check(CLI::PositiveNumber);
    if (required) o->required();
  };

  auto emit = [&](const Json& j) {
    if (cfg.out.empty()) {
      out << j.dump(1) << "\n";
    } else {
      write_json_file(cfg.out, j);
    }
  };
  auto emit_text = [&](const std::string& text) {
    if (cfg.out.empty()) {
      out << text;
    } else {
      std::ofstream f(cfg.out);
      if (!f) throw Error(ErrorCode::InvalidArgument, "cannot write " + cfg.out);
      f << text;
    }
  };
  auto group = [&] { return build_group(parse_group_kind(kind_name, n)); };
  auto load_system = [&] { return system_from_json(read_json_file(system_path)); };
  auto system_or_preset = [&]() -> GeneratorSystem {
    if (!system_path.empty()) return load_system();
    if (preset_name.empty()) throw Usage("give --system or --preset");
    return synthesize(preset(preset_name), cfg.seed);
  };

  auto* cmd = app.add_subcommand("group", "Enumerate a finite subgroup of SU(2)");
  add_kind(cmd);
  add_emit(cmd, {"json"});
  add_common(cmd);
  cmd->callback([&] {
    action = [&] {
      emit(group_json(group()));
      return kExitOk;
    };
  });

  cmd = app.add_subcommand("irreps", "Irreducible unitary representations and the character table");
  add_kind(cmd);
  add_emit(cmd, {"json"});
  add_common(cmd);
  cmd->callback([&] {
    action = [&] {
      const FiniteSubgroup g = group();
      emit(irreps_json(g, all_irreps(g, cfg.seed), cfg.seed));
      return kExitOk;
    };
  });

  cmd = app.add_subcommand("mckay", "McKay graph with delta, sigma and lambda");
  add_kind(cmd);
  add_emit(cmd, {"json", "csv", "dot"});
  add_common(cmd);
  cmd->callback([&] {
    action = [&] {
      const FiniteSubgroup g = group();
      const McKayGraph graph = mckay_graph(g, all_irreps(g, cfg.seed));
      if (cfg.emit == "csv") {
        emit_text(mckay_csv(graph));
      } else if (cfg.emit == "dot") {
        emit_text(to_dot(graph, group_kind_name(g.kind())));
      } else {
        emit(mckay_json(graph));
      }
      return kExitOk;
    };
  });

  cmd = app.add_subcommand("orbits", "Special orbits of the rotation image");
  add_kind(cmd);
  add_emit(cmd, {"json"});
  add_common(cmd);
  cmd->callback([&] {
    action = [&] {
      const FiniteSubgroup g = group();
      emit({{"group", group_kind_name(g.kind())}, {"orbits", orbits_json(special_orbits(g))}});
      return kExitOk;
    };
  });

  cmd = app.add_subcommand("domain", "Meshed fundamental domain");
  add_kind(cmd);
  add_h(cmd, true);
  add_emit(cmd, {"json"});
  add_common(cmd);
  cmd->callback([&] {
    action = [&] {
      emit(domain_json(fundamental_domain(group(), cfg.h)));
      return kExitOk;
    };
  });

  cmd = app.add_subcommand("blocks", "Centralizer blocks at a point and the self-adjoint equivariant basis");
  add_kind(cmd);
  cmd->add_option("--irrep", irrep_label, "Irrep label")->required();
  cmd->add_option("--point", point_text, "Point x,y,z on the sphere")->required();
  cmd->add_option("--degree", degree, "Degree of the equivariant basis")->check(CLI::Range(0, kMaxDegree));
  add_emit(cmd, {"json"});
  add_common(cmd);
  cmd->callback([&] {
    action = [&] {
      const FiniteSubgroup g = group();
      const auto irreps = all_irreps(g, cfg.seed);
      if (irrep_label < 0 || irrep_label >= static_cast<int>(irreps.size()))
        throw Usage("--irrep must be between 0 and " + std::to_string(irreps.size() - 1));
      const Vec3 x = parse_point(point_text);
      if (x.norm() < 1e-12) throw Usage("--point must be nonzero");
      const UnitaryIrrep& r = irreps[static_cast<std::size_t>(irrep_label)];
      Json basis = Json::array();
      for (const EquivariantPoly& f : equivariant_basis(g, r, degree)) basis.push_back(poly_json(f));
      emit({{"irrep", irrep_label},
            {"dim", r.dim},
            {"point", to_json(Vec3(x.normalized()))},
            {"blocks", blocks_json(centralizer_algebra(g, r, x.normalized()))},
            {"D", degree},
            {"basis", basis}});
      return kExitOk;
    };
  });

  cmd = app.add_subcommand("synth", "Synthesize the generator system of a preset");
  cmd->add_option("--preset", preset_name, "D4, E6, E7 or E8")->required();
  add_common(cmd);
  cmd->callback([&] {
    action = [&] {
      emit(system_json(synthesize(preset(preset_name), cfg.seed)));
      return kExitOk;
    };
  });

  cmd = app.add_subcommand("rep-at", "Representation at a point of the sphere");
  cmd->add_option("--system", system_path, "system.json")->required()->check(CLI::ExistingFile);
  cmd->add_option("--point", point_text, "Point x,y,z on the unit sphere")->required();
  add_emit(cmd, {"json"});
  add_common(cmd);
  cmd->callback([&] {
    action = [&] {
      const GeneratorSystem s = load_system();
      const StarRepresentation rep = rep_at(s, parse_point(point_text));
      const RepresentationReport r = verify(s.preset, rep);
      Json j = representation_json(rep);
      j["commutant_dimension"] = irreducibility_check(rep);
      j["residuals"] = {{"hermiticity", round12(r.hermiticity)}, {"sum", round12(r.sum)}, {"worst", round12(r.worst())}};
      emit(j);
      return r.worst() <= cfg.tolerance ? kExitOk : kExitVerification;
    };
  });

  cmd = app.add_subcommand("classify", "Catalog of irreducible representations");
  cmd->add_option("--system", system_path, "system.json")->check(CLI::ExistingFile);
  cmd->add_option("--preset", preset_name, "Synthesize this preset instead of reading a system");
  add_emit(cmd, {"json"});
  add_common(cmd);
  cmd->callback([&] {
    action = [&] {
      const GeneratorSystem s = system_or_preset();
      Json j = catalog_json(classify(s));
      j["preset"] = s.preset.name;
      emit(j);
      return kExitOk;
    };
  });

  cmd = app.add_subcommand("exceptional", "Irreps on which order-4 elements act as scalars, and trace labelings");
  add_kind(cmd);
  add_emit(cmd, {"json"});
  add_common(cmd);
  cmd->callback([&] {
    action = [&] {
      const FiniteSubgroup g = group();
      const auto irreps = all_irreps(g, cfg.seed);
      emit(exceptional_json(g, irreps, mckay_graph(g, irreps)));
      return kExitOk;
    };
  });

  cmd = app.add_subcommand("trivialize", "Gauge from the equivariant clutching data to the standard one");
  cmd->add_option("--system", system_path, "system.json")->required()->check(CLI::ExistingFile);
  add_h(cmd, true);
  add_common(cmd);
  cmd->callback([&] {
    action = [&] {
      const GeneratorSystem s = load_system();
      const FundamentalDomain d = fundamental_domain(s.group, cfg.h);
      const ClutchingData c1 = equivariant_to_clutching(s, d);
      const ClutchingData c2 = standard_clutching(s.group, s.irrep, d);
      const GaugeField g = build_gauge(c1, c2, d);
      const GaugeReport r = check_gauge(c1, c2, g);
      Json j = gauge_json(g, c1, c2);
      j["report"] = gauge_report_json(r);
      emit(j);
      return r.worst() <= cfg.tolerance ? kExitOk : kExitVerification;
    };
  });

  cmd = app.add_subcommand("apply-gauge", "Transport the generators through a gauge and check the result");
  cmd->add_option("--gauge", gauge_path, "gauge.json")->required()->check(CLI::ExistingFile);
  cmd->add_option("--system", system_path, "system.json")->required()->check(CLI::ExistingFile);
  cmd->add_flag("--samples", with_samples, "Include the transported samples");
  add_common(cmd);
  cmd->callback([&] {
    action = [&] {
      const GaugeFile f = gauge_from_json(read_json_file(gauge_path));
      const GeneratorSystem s = load_system();
      if (f.c1.dim != s.irrep.dim) throw Usage("gauge and system act on different dimensions");
      std::vector<std::vector<Mat>> samples;
      Json j = {{"report", transport_all(f, s, with_samples ? &samples : nullptr)}};
      if (with_samples) {
        Json all = Json::array();
        for (const auto& g : samples) {
          Json per = Json::array();
          for (const Mat& m : g) per.push_back(to_json(m));
          all.push_back(std::move(per));
        }
        j["transported"] = all;
      }
      emit(j);
      return j["report"]["worst"].get<double>() <= cfg.tolerance ? kExitOk : kExitVerification;
    };
  });

  cmd = app.add_subcommand("verify", "Recompute every invariant from serialized artifacts");
  cmd->add_option("--system", system_path, "system.json")->check(CLI::ExistingFile);
  cmd->add_option("--gauge", gauge_path, "gauge.json")->check(CLI::ExistingFile);
  add_common(cmd);
  cmd->callback([&] {
    action = [&] {
      if (system_path.empty() && gauge_path.empty()) throw Usage("give --system, --gauge or both");
      Checklist c{cfg.tolerance};
      std::optional<GeneratorSystem> s;
      if (!system_path.empty()) {
        s = load_system();
        check_system(c, *s, cfg.seed);
      }
      if (!gauge_path.empty()) {
        const GaugeFile f = gauge_from_json(read_json_file(gauge_path));
        check_gauge_file(c, f);
        if (s) {
          const Json t = transport_all(f, *s, nullptr);
          c.residual("transport_product", t["product"].get<double>());
          c.residual("transport_adjoint", t["adjoint"].get<double>());
          c.residual("transport_membership", t["membership"].get<double>());
          c.residual("transport_gluing", t["gluing"].get<double>());
        }
      }
      emit(c.json());
      return c.pass ? kExitOk : kExitVerification;
    };
  });

  cmd = app.add_subcommand("selftest", "Run the whole pipeline for a preset and report every residual");
  cmd->add_option("--preset", preset_name, "D4, E6, E7 or E8")->required();
  add_h(cmd, false);
  add_common(cmd);
  cmd->callback([&] {
    action = [&] {
      const StarPreset p = preset(preset_name);
      Checklist c{cfg.tolerance};
      const FiniteSubgroup g = build_group(p.group);
      const auto irreps = all_irreps(g, cfg.seed);
      int sum_sq = 0;
      double hom = 0, unit = 0;
      for (const UnitaryIrrep& r : irreps) {
        sum_sq += r.dim * r.dim;
        hom = std::max(hom, homomorphism_defect(g, r));
        unit = std::max(unit, rep_unitarity_defect(r));
      }
      c.equal("sum_of_squared_dimensions", sum_sq, g.order());
      c.residual("homomorphism_defect", hom);
      c.residual("unitarity_defect", unit);
      const McKayGraph graph = mckay_graph(g, irreps);
      c.equal("mckay_shape", graph_shape(graph).name(), expected_shape(p.name));
      long lambda_delta = 0;
      for (int v = 0; v < graph.size(); ++v)
        lambda_delta += static_cast<long>(graph.lambda[static_cast<std::size_t>(v)]) * graph.delta[static_cast<std::size_t>(v)];
      c.equal("lambda_dot_delta", lambda_delta, 0);

      const GeneratorSystem s = synthesize(p, g, *std::find_if(irreps.begin(), irreps.end(),
                                                               [&](const UnitaryIrrep& r) { return r.dim == p.center_dim; }),
                                           cfg.seed);
      check_system(c, s, cfg.seed);
      const Catalog cat = classify(s);
      c.equal("generic_dimension", cat.generic.dim, p.center_dim);
      c.equal("generic_commutant", cat.generic.commutant, 1);
      int reducible = 0;
      for (const CatalogEntry& e : cat.special) reducible += e.commutant != 1;
      c.equal("reducible_catalog_entries", reducible, 0);

      const FundamentalDomain d = fundamental_domain(g, cfg.h);
      GaugeFile f{{}, equivariant_to_clutching(s, d), standard_clutching(g, s.irrep, d)};
      f.gauge = build_gauge(f.c1, f.c2, d);
      check_gauge_file(c, f);
      const Json t = transport_all(f, s, nullptr);
      c.residual("transport_product", t["product"].get<double>());
      c.residual("transport_adjoint", t["adjoint"].get<double>());
      c.residual("transport_membership", t["membership"].get<double>());
      c.residual("transport_gluing", t["gluing"].get<double>());

      Json j = c.json();
      j["preset"] = p.name;
      j["seed"] = cfg.seed;
      j["h"] = cfg.h;
      emit(j);
      return c.pass ? kExitOk : kExitVerification;
    };
  });

  std::vector<const char*> argv{"adestar"};
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    if (!app.get_subcommands().empty()) err << "see '" << app.get_subcommands().front()->get_name() << " --help'\n";
    else err << "see '--help' for the list of subcommands\n";
    return kExitUsage;
  }

  try {
    return action();
  } catch (const Usage& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return usage_code(e.code()) ? kExitUsage : kExitVerification;
  }
}

}  // namespace adestar
