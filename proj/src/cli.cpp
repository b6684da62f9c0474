#include "transpoly/cli.hpp"

#include <omp.h>

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>

#include "transpoly/central.hpp"
#include "transpoly/ehrhart.hpp"
#include "transpoly/json_io.hpp"
#include "transpoly/oracle.hpp"

namespace transpoly {

namespace {

struct RunConfig {
  std::string command;
  std::string margins_file;
  std::vector<long> central;  // k n a
  std::string format = "json";
  std::string emit = "counts";
  std::uint64_t seed = 1;
  std::size_t points = 5;
};

class VerificationFailed : public Error {
 public:
  using Error::Error;
};

Margins load_margins(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open margins file '" + path + "'");
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::exception& e) {
    throw ParseError(std::string("margins file is not valid JSON: ") + e.what());
  }
  return margins_from_json(j);
}

CentralSpec central_from(const std::vector<long>& kna) {
  if (kna.size() != 3 || kna[0] < 1 || kna[1] < 1 || kna[2] < 1) throw ParseError("--central expects K N A >= 1");
  return CentralSpec(static_cast<std::size_t>(kna[0]), static_cast<std::size_t>(kna[1]), kna[2]);
}

Margins input_margins(const RunConfig& cfg) {
  return cfg.margins_file.empty() ? central_from(cfg.central).margins() : load_margins(cfg.margins_file);
}

MgfExpression input_mgf(const RunConfig& cfg) {
  return cfg.margins_file.empty() ? central_mgf(central_from(cfg.central)) : polytope_mgf(load_margins(cfg.margins_file));
}

Json integer_json(const Integer& x) {
  if (x.fits_slong_p()) return Json(x.get_si());
  return Json(x.get_str());
}

std::string matrix_text(const RationalMatrix& mat, const std::string& indent) {
  std::ostringstream out;
  for (std::size_t i = 0; i < mat.rows(); ++i) {
    out << indent;
    for (std::size_t j = 0; j < mat.cols(); ++j) out << (j ? " " : "") << mat(i, j).get_str();
    out << '\n';
  }
  return out.str();
}

std::string matrix_text(const IntMatrix& mat, const std::string& indent) { return matrix_text(to_rational(mat), indent); }

std::string polynomial_text(const EhrhartPolynomial& p) {
  std::ostringstream out;
  bool first = true;
  for (std::size_t k = p.coeffs.size(); k-- > 0;) {
    if (p.coeffs[k] == 0) continue;
    out << (first ? "" : " + ") << '(' << p.coeffs[k].get_str() << ')';
    if (k >= 1) out << " t";
    if (k >= 2) out << '^' << k;
    first = false;
  }
  return first ? "0" : out.str();
}

void emit(const RunConfig& cfg, std::ostream& out, const Json& j, const std::string& text) {
  if (cfg.format == "text")
    out << text;
  else
    out << j.dump(2) << '\n';
}

void cmd_vertices(const RunConfig& cfg, std::ostream& out) {
  auto verts = enumerate_vertices(input_margins(cfg));
  Json list = Json::array();
  std::ostringstream text;
  text << verts.size() << " vertices\n";
  for (std::size_t k = 0; k < verts.size(); ++k) {
    list.push_back(vertex_to_json(verts[k]));
    text << "\nM" << k << (verts[k].degenerate ? " (degenerate)" : "") << '\n' << matrix_text(verts[k].matrix, "  ");
  }
  emit(cfg, out, Json{{"count", verts.size()}, {"vertices", list}}, text.str());
}

void cmd_cones(const RunConfig& cfg, std::ostream& out) {
  Margins mar = input_margins(cfg);
  PerturbationSpec spec = make_spec(mar);
  Grouping g = group_by_limit(spec);
  Json list = Json::array();
  std::ostringstream text;
  for (std::size_t k = 0; k < g.groups.size(); ++k) {
    const auto& v = g.groups[k].vertex;
    auto rays = feasible_cone_rays(v);
    Json jr = Json::array();
    for (const auto& r : rays) jr.push_back(matrix_to_json(r));
    Json trees = Json::array();
    for (auto idx : g.groups[k].trees) trees.push_back(forest_to_json(g.perturbed[idx].tree()));
    list.push_back(Json{{"vertex", vertex_to_json(v)}, {"rays", jr}, {"pert_aux", trees}});
    text << "M" << k << ": " << rays.size() << " rays, " << g.groups[k].trees.size() << " unimodular cones\n"
         << matrix_text(v.matrix, "  ");
    for (const auto& r : rays) text << "  ray\n" << matrix_text(r, "    ");
  }
  emit(cfg, out, Json{{"cones", list}}, text.str());
}

void cmd_perturb(const RunConfig& cfg, std::ostream& out) {
  PerturbationSpec spec = make_spec(input_margins(cfg));
  Grouping g = group_by_limit(spec);
  std::ostringstream text;
  text << "K = " << spec.K << ", t0 = " << spec.t0 << ", " << g.perturbed.size() << " perturbed vertices\n";
  for (std::size_t k = 0; k < g.groups.size(); ++k) {
    text << "\nM" << k << " <- " << g.groups[k].trees.size() << " perturbed vertices\n"
         << matrix_text(g.groups[k].vertex.matrix, "  ");
    for (auto idx : g.groups[k].trees) text << "  at t0:\n" << matrix_text(g.perturbed[idx].matrix_at_t0, "    ");
  }
  emit(cfg, out, perturbation_to_json(spec, g), text.str());
}

void cmd_mgf(const RunConfig& cfg, std::ostream& out) {
  MgfExpression expr = input_mgf(cfg);
  emit(cfg, out, mgf_to_json(expr), pretty_print(expr));
}

void cmd_ehrhart(const RunConfig& cfg, std::ostream& out, bool volume_only) {
  MgfExpression expr = input_mgf(cfg);
  DirectionVector dir = pick_direction(expr);
  EhrhartPolynomial poly = ehrhart_from_mgf(expr, dir);
  Volume vol = normalized_volume(expr, dir);
  if (volume_only) {
    Json j{{"dim", vol.dim},
           {"leading", format_rational(vol.leading)},
           {"normalized_volume", format_rational(vol.normalized)},
           {"direction_base", dir.base}};
    emit(cfg, out, j,
         "dim " + std::to_string(vol.dim) + "\nleading " + vol.leading.get_str() + "\nnormalized volume " +
             vol.normalized.get_str() + '\n');
    return;
  }
  emit(cfg, out, ehrhart_to_json(poly, vol, dir),
       "i(t) = " + polynomial_text(poly) + "\nnormalized volume " + vol.normalized.get_str() + '\n');
}

void cmd_central(const RunConfig& cfg, std::ostream& out) {
  CentralSpec spec = central_from(cfg.central);
  if (cfg.emit == "counts") {
    CentralCounts c = central_counts(spec.k, spec.n);
    emit(cfg, out, Json{{"vertices", integer_json(c.vertices)}, {"max_vertices", integer_json(c.max_vertices)}},
         "vertices " + c.vertices.get_str() + "\nmax_vertices " + c.max_vertices.get_str() + '\n');
  } else if (cfg.emit == "vertices") {
    auto matchings = enumerate_matchings(spec.k, spec.n);
    Json list = Json::array();
    std::ostringstream text;
    for (const auto& mm : matchings) {
      IntMatrix v = mm.matrix();
      for (std::size_t i = 0; i < v.rows(); ++i)
        for (std::size_t j = 0; j < v.cols(); ++j) v(i, j) *= spec.a;
      list.push_back(matrix_to_json(v));
      text << matrix_text(v, "  ") << '\n';
    }
    emit(cfg, out, Json{{"count", matchings.size()}, {"vertices", list}}, text.str());
  } else if (cfg.emit == "mgf") {
    MgfExpression expr = central_mgf(spec);
    emit(cfg, out, mgf_to_json(expr), pretty_print(expr));
  } else {
    RunConfig sub = cfg;
    cmd_ehrhart(sub, out, cfg.emit == "volume");
  }
}

// Oracle cross-checks; throws VerificationFailed on the first mismatch.
void cmd_verify(const RunConfig& cfg, std::ostream& out) {
  Margins mar = input_margins(cfg);
  Json checks = Json::array();
  auto pass = [&](const std::string& name) { checks.push_back(Json{{"name", name}, {"ok", true}}); };
  auto fail = [&](const std::string& name, const std::string& detail) {
    checks.push_back(Json{{"name", name}, {"ok", false}, {"counterexample", detail}});
    out << Json{{"ok", false}, {"checks", checks}}.dump(2) << '\n';
    throw VerificationFailed(name + ": " + detail);
  };

  if (mar.shape().edge_count() <= 16) {
    auto verts = enumerate_vertices(mar);
    auto brute = brute_vertices(mar);
    std::vector<TransportMatrix> mats;
    for (const auto& v : verts) mats.push_back(v.matrix);
    if (mats != brute)
      fail("vertices", std::to_string(mats.size()) + " vertices from the perturbation, " + std::to_string(brute.size()) +
                           " by forest enumeration");
    pass("vertices");
    bool all_simple = std::all_of(brute.begin(), brute.end(), [&](const TransportMatrix& m) {
      return aux(m).size() + 1 == mar.shape().vertex_count();
    });
    if (all_simple != is_nondegenerate(mar)) fail("degeneracy", "subset-sum test disagrees with vertex supports");
    pass("degeneracy");
  }

  if (mar.is_integral()) {
    MgfExpression expr = cfg.margins_file.empty() ? central_mgf(central_from(cfg.central)) : polytope_mgf(mar);
    std::mt19937_64 rng(cfg.seed);
    for (long t : {1L, 2L}) {
      MgfExpression dil = dilate(expr, t);
      Margins dm = mar.dilated(t);
      for (std::size_t p = 0; p < cfg.points; ++p) {
        RationalMatrix point = random_regular_point(dil, rng);
        Rational lhs = evaluate(dil, point), rhs = lattice_monomial_sum(dm, point);
        if (lhs != rhs)
          fail("mgf_evaluation", "dilation " + std::to_string(t) + ": " + lhs.get_str() + " vs " + rhs.get_str());
      }
    }
    pass("mgf_evaluation");

    if (cfg.margins_file.empty()) {
      MgfExpression generic = polytope_mgf(mar);
      for (std::size_t p = 0; p < cfg.points; ++p) {
        RationalMatrix point = random_regular_point(generic, rng);
        if (evaluate(generic, point) != evaluate(expr, point))
          fail("central_pipeline", "central and generic expressions differ at a point");
      }
      pass("central_pipeline");
    }

    EhrhartPolynomial poly = ehrhart_from_mgf(expr, pick_direction(expr));
    for (std::size_t skip = 1; skip < 3; ++skip)
      if (!(ehrhart_from_mgf(expr, pick_direction(expr, skip)) == poly))
        fail("direction_independence", "Ehrhart polynomial depends on the direction");
    pass("direction_independence");
    CountTable table = lattice_count_table(mar, static_cast<long>(poly.dim) + 1);
    for (const auto& [t, count] : table)
      if (poly(Rational(t)) != count)
        fail("ehrhart", "t = " + std::to_string(t) + ": polynomial " + poly(Rational(t)).get_str() + ", count " +
                            count.get_str());
    pass("ehrhart");
  }
  out << Json{{"ok", true}, {"checks", checks}}.dump(2) << '\n';
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  if (const char* threads = std::getenv("TRANSPOLY_THREADS")) {
    int n = std::atoi(threads);
    if (n > 0) omp_set_num_threads(n);
  }

  RunConfig cfg;
  CLI::App app{"Exact vertices, cones, generating functions and Ehrhart polynomials of transportation polytopes",
               "tpoly"};
  app.require_subcommand(1);

  auto add_input = [&](CLI::App* sub) {
    auto* m = sub->add_option("--margins", cfg.margins_file, "JSON file {\"r\": [...], \"c\": [...]}");
    auto* c = sub->add_option("--central", cfg.central, "central kn x n polytope given by K N A")->expected(3);
    m->excludes(c);
    c->excludes(m);
    sub->add_option("--format", cfg.format, "json or text")->check(CLI::IsMember({"json", "text"}));
  };
  const std::pair<const char*, const char*> plain[] = {
      {"vertices", "vertices with their feasible trees"},
      {"cones", "feasible cone rays at each vertex"},
      {"perturb", "perturbed vertices grouped by limit"},
      {"mgf", "Brion expression of the lattice point generating function"},
      {"ehrhart", "Ehrhart polynomial"},
      {"volume", "normalized volume"}};
  for (const auto& [name, help] : plain) add_input(app.add_subcommand(name, help));
  auto* verify = app.add_subcommand("verify", "oracle cross-checks; exit 2 on mismatch");
  add_input(verify);
  verify->add_option("--seed", cfg.seed, "seed for evaluation points");
  verify->add_option("--points", cfg.points, "evaluation points per check");

  auto* central = app.add_subcommand("central", "closed forms for central kn x n polytopes");
  std::size_t k = 0, n = 0;
  long a = 0;
  central->add_option("--k", k)->required();
  central->add_option("--n", n)->required();
  central->add_option("--a", a)->required();
  central->add_option("--emit", cfg.emit)->check(CLI::IsMember({"counts", "vertices", "mgf", "ehrhart", "volume"}));
  central->add_option("--format", cfg.format)->check(CLI::IsMember({"json", "text"}));

  std::vector<std::string> argv_store{"tpoly"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : argv_store) argv.push_back(s.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kOk : kBadInput;
  }

  cfg.command = app.get_subcommands().front()->get_name();
  if (cfg.command == "central") cfg.central = {static_cast<long>(k), static_cast<long>(n), a};

  try {
    if (cfg.command != "central" && cfg.margins_file.empty() == cfg.central.empty())
      throw ParseError("give exactly one of --margins or --central");
    if (cfg.command == "vertices") cmd_vertices(cfg, out);
    else if (cfg.command == "cones") cmd_cones(cfg, out);
    else if (cfg.command == "perturb") cmd_perturb(cfg, out);
    else if (cfg.command == "mgf") cmd_mgf(cfg, out);
    else if (cfg.command == "ehrhart") cmd_ehrhart(cfg, out, false);
    else if (cfg.command == "volume") cmd_ehrhart(cfg, out, true);
    else if (cfg.command == "central") cmd_central(cfg, out);
    else if (cfg.command == "verify") cmd_verify(cfg, out);
  } catch (const VerificationFailed& e) {
    err << "verification failed: " << e.what() << '\n';
    return kVerifyFailed;
  } catch (const InternalError& e) {
    err << "internal error: " << e.what() << '\n';
    return kInternal;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kBadInput;
  }
  return kOk;
}

}  // namespace transpoly
