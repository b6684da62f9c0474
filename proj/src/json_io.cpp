#include "transpoly/json_io.hpp"

namespace transpoly {

namespace {

Rational rational_from_json(const Json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long>());
  throw ParseError("expected a rational string or an integer, got " + j.dump());
}

std::vector<Rational> rationals_from_json(const Json& j) {
  if (!j.is_array()) throw ParseError("expected an array of rationals");
  std::vector<Rational> out;
  for (const auto& x : j) out.push_back(rational_from_json(x));
  return out;
}

Json rationals_to_json(const std::vector<Rational>& xs) {
  Json out = Json::array();
  for (const auto& x : xs) out.push_back(format_rational(x));
  return out;
}

std::size_t index_from_json(const Json& j, std::size_t bound) {
  if (!j.is_number_integer()) throw ParseError("expected a 1-based index");
  long v = j.get<long>();
  if (v < 1 || static_cast<std::size_t>(v) > bound) throw ParseError("index " + std::to_string(v) + " out of range");
  return static_cast<std::size_t>(v - 1);
}

}  // namespace

Margins margins_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("r") || !j.contains("c")) throw ParseError("margins need \"r\" and \"c\"");
  return Margins(rationals_from_json(j.at("r")), rationals_from_json(j.at("c")));
}

Json margins_to_json(const Margins& mar) { return Json{{"r", rationals_to_json(mar.r())}, {"c", rationals_to_json(mar.c())}}; }

Json forest_to_json(const LabeledForest& forest) {
  Json edges = Json::array();
  for (const Edge& e : forest.edges()) edges.push_back({e.i + 1, e.j + 1});
  return Json{{"m", forest.shape().m}, {"n", forest.shape().n}, {"edges", edges}};
}

LabeledForest forest_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("m") || !j.contains("n") || !j.contains("edges"))
    throw ParseError("forest needs \"m\", \"n\" and \"edges\"");
  BipartiteShape shape(j.at("m").get<std::size_t>(), j.at("n").get<std::size_t>());
  std::vector<Edge> edges;
  for (const auto& e : j.at("edges")) {
    if (!e.is_array() || e.size() != 2) throw ParseError("edge must be an [i, j] pair");
    edges.push_back({index_from_json(e[0], shape.m), index_from_json(e[1], shape.n)});
  }
  return LabeledForest(shape, std::move(edges));
}

Json matrix_to_json(const RationalMatrix& mat) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < mat.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < mat.cols(); ++j) row.push_back(format_rational(mat(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json matrix_to_json(const IntMatrix& mat) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < mat.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < mat.cols(); ++j) row.push_back(mat(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

RationalMatrix rational_matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty() || !j[0].is_array()) throw ParseError("expected a row-major matrix");
  RationalMatrix mat(j.size(), j[0].size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_array() || j[i].size() != mat.cols()) throw ParseError("ragged matrix");
    for (std::size_t c = 0; c < mat.cols(); ++c) mat(i, c) = rational_from_json(j[i][c]);
  }
  return mat;
}

IntMatrix int_matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty() || !j[0].is_array()) throw ParseError("expected a row-major matrix");
  IntMatrix mat(j.size(), j[0].size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_array() || j[i].size() != mat.cols()) throw ParseError("ragged matrix");
    for (std::size_t c = 0; c < mat.cols(); ++c) {
      if (!j[i][c].is_number_integer()) throw ParseError("expected integer matrix entries");
      mat(i, c) = j[i][c].get<std::int64_t>();
    }
  }
  return mat;
}

Json vertex_to_json(const VertexRecord& v) {
  return Json{{"matrix", matrix_to_json(v.matrix)}, {"aux", forest_to_json(v.aux)}, {"degenerate", v.degenerate}};
}

Json mgf_to_json(const MgfExpression& expr) {
  Json terms = Json::array();
  for (const auto& t : expr.terms) {
    Json rays = Json::array();
    for (const auto& r : t.rays) rays.push_back(matrix_to_json(r));
    terms.push_back(Json{{"sign", t.sign}, {"apex", matrix_to_json(t.apex)}, {"rays", rays}});
  }
  return Json{{"m", expr.shape.m}, {"n", expr.shape.n}, {"terms", terms}};
}

MgfExpression mgf_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("terms")) throw ParseError("generating function needs \"terms\"");
  MgfExpression expr;
  for (const auto& t : j.at("terms")) {
    MgfTerm term;
    term.sign = t.at("sign").get<int>();
    if (term.sign != 1 && term.sign != -1) throw ParseError("term sign must be 1 or -1");
    term.apex = int_matrix_from_json(t.at("apex"));
    for (const auto& r : t.at("rays")) term.rays.push_back(int_matrix_from_json(r));
    expr.terms.push_back(std::move(term));
  }
  if (j.contains("m") && j.contains("n"))
    expr.shape = BipartiteShape(j.at("m").get<std::size_t>(), j.at("n").get<std::size_t>());
  else if (!expr.terms.empty())
    expr.shape = BipartiteShape(expr.terms.front().apex.rows(), expr.terms.front().apex.cols());
  return expr;
}

Json perturbation_to_json(const PerturbationSpec& spec, const Grouping& grouping) {
  Json vertices = Json::array();
  for (const auto& pv : grouping.perturbed)
    vertices.push_back(Json{{"tree", forest_to_json(pv.tree())},
                            {"matrix_at_t0", matrix_to_json(pv.matrix_at_t0)},
                            {"limit", matrix_to_json(pv.limit)}});
  Json groups = Json::object();
  for (const auto& g : grouping.groups) groups[matrix_key(g.vertex.matrix)] = g.trees;
  return Json{{"K", spec.K.get_str()},
              {"t0", format_rational(spec.t0)},
              {"perturbed_margins", margins_to_json(spec.perturbed())},
              {"perturbed_vertices", vertices},
              {"groups", groups}};
}

Json ehrhart_to_json(const EhrhartPolynomial& poly, const Volume& vol, const DirectionVector& dir) {
  return Json{{"ehrhart", rationals_to_json(poly.coeffs)},
              {"dim", poly.dim},
              {"leading", format_rational(vol.leading)},
              {"normalized_volume", format_rational(vol.normalized)},
              {"direction_base", dir.base}};
}

}  // namespace transpoly
