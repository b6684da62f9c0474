#include "transpoly/mgf.hpp"

#include <algorithm>
#include <sstream>

#include "transpoly/perturb.hpp"

namespace transpoly {

namespace {

ExponentMatrix zero_exponent(const BipartiteShape& shape) { return ExponentMatrix(shape.m, shape.n); }

void require_integral(const Margins& mar) {
  if (!mar.is_integral()) throw NonIntegral("generating functions need integral margins");
}

std::vector<RayMatrix> tree_rays(const LabeledForest& tree) {
  std::vector<RayMatrix> rays;
  for (const Edge& e : all_edges(tree.shape()))
    if (!tree.contains(e)) rays.push_back(cyc(tree, {e}));
  return rays;
}

Rational term_value(const MgfTerm& term, std::size_t index, const RationalMatrix& point) {
  Rational denom = 1;
  for (std::size_t r = 0; r < term.rays.size(); ++r) {
    Rational factor = 1 - monomial(point, term.rays[r]);
    if (factor == 0) throw PoleAt(index, r);
    denom *= factor;
  }
  Rational v = monomial(point, term.apex) / denom;
  return term.sign < 0 ? Rational(-v) : v;
}

void check_point(const MgfExpression& expr, const RationalMatrix& point) {
  if (point.rows() != expr.shape.m || point.cols() != expr.shape.n) throw Error("evaluation point has wrong shape");
  for (const auto& x : point.data())
    if (x == 0) throw Error("evaluation point has a zero coordinate");
}

std::string monomial_text(const ExponentMatrix& v) {
  std::ostringstream out;
  bool wide = v.rows() >= 10 || v.cols() >= 10;
  bool any = false;
  for (std::size_t i = 0; i < v.rows(); ++i)
    for (std::size_t j = 0; j < v.cols(); ++j) {
      auto e = v(i, j);
      if (e == 0) continue;
      if (any) out << ' ';
      any = true;
      if (wide)
        out << "z_" << i + 1 << '_' << j + 1;
      else
        out << 'z' << i + 1 << j + 1;
      if (e != 1) out << '^' << e;
    }
  return any ? out.str() : "1";
}

}  // namespace

Rational monomial(const RationalMatrix& point, const ExponentMatrix& exponent) {
  Rational out = 1;
  for (std::size_t i = 0; i < exponent.rows(); ++i)
    for (std::size_t j = 0; j < exponent.cols(); ++j)
      if (exponent(i, j) != 0) out *= pow(point(i, j), exponent(i, j));
  return out;
}

MgfTerm unimodular_cone_mgf(const BipartiteShape& shape, std::vector<RayMatrix> rays) {
  for (const auto& r : rays)
    if (std::all_of(r.data().begin(), r.data().end(), [](auto x) { return x == 0; }))
      throw Error("zero ray in a unimodular cone");
  return {1, zero_exponent(shape), std::move(rays)};
}

MgfExpression polytope_mgf_nondegenerate(const Margins& mar) {
  if (!is_nondegenerate(mar)) throw DegeneratePolytope("polytope is degenerate");
  require_integral(mar);
  MgfExpression expr{mar.shape(), {}};
  for (const auto& v : pivot_enumerate(mar)) {
    MgfTerm term = unimodular_cone_mgf(mar.shape(), tree_rays(v.tree));
    term.apex = to_integer(v.matrix);
    expr.terms.push_back(std::move(term));
  }
  return expr;
}

MgfExpression polytope_mgf(const Margins& mar) {
  require_integral(mar);
  MgfExpression expr{mar.shape(), {}};
  for (const auto& pv : enumerate_perturbed_vertices(make_spec(mar))) {
    MgfTerm term = unimodular_cone_mgf(mar.shape(), tree_rays(pv.tree()));
    term.apex = to_integer(pv.limit);
    expr.terms.push_back(std::move(term));
  }
  return expr;
}

MgfExpression feasible_cone_mgf(const VertexRecord& v, const PerturbationSpec& spec) {
  MgfExpression expr{spec.base.shape(), {}};
  for (const auto& pv : enumerate_perturbed_vertices(spec))
    if (pv.tree().graph().contains(v.aux.graph()))
      expr.terms.push_back(unimodular_cone_mgf(spec.base.shape(), tree_rays(pv.tree())));
  return expr;
}

Rational evaluate_serial(const MgfExpression& expr, const RationalMatrix& point) {
  check_point(expr, point);
  Rational sum = 0;
  for (std::size_t k = 0; k < expr.terms.size(); ++k) sum += term_value(expr.terms[k], k, point);
  return sum;
}

Rational evaluate(const MgfExpression& expr, const RationalMatrix& point) {
  check_point(expr, point);
  const auto count = static_cast<std::ptrdiff_t>(expr.terms.size());
  std::vector<Rational> values(expr.terms.size());
  std::vector<int> pole(expr.terms.size(), -1);
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t k = 0; k < count; ++k) {
    try {
      values[k] = term_value(expr.terms[k], static_cast<std::size_t>(k), point);
    } catch (const PoleAt& p) {
      pole[k] = static_cast<int>(p.ray());
    }
  }
  for (std::size_t k = 0; k < pole.size(); ++k)
    if (pole[k] >= 0) throw PoleAt(k, static_cast<std::size_t>(pole[k]));
  Rational sum = 0;
  for (const auto& v : values) sum += v;
  return sum;
}

RationalMatrix random_point(const BipartiteShape& shape, std::mt19937_64& rng) {
  std::uniform_int_distribution<long> digit(1, 9);
  std::uniform_int_distribution<int> coin(0, 1);
  RationalMatrix point(shape.m, shape.n);
  for (std::size_t i = 0; i < shape.m; ++i)
    for (std::size_t j = 0; j < shape.n; ++j) {
      Rational x;
      do {
        x = Rational(digit(rng), digit(rng));
        x.canonicalize();
      } while (x == 1);
      point(i, j) = coin(rng) ? Rational(-x) : x;
    }
  return point;
}

RationalMatrix random_regular_point(const MgfExpression& expr, std::mt19937_64& rng) {
  for (int attempt = 0; attempt < 100; ++attempt) {
    RationalMatrix point = random_point(expr.shape, rng);
    bool pole = false;
    for (const auto& term : expr.terms) {
      for (const auto& ray : term.rays)
        if (monomial(point, ray) == 1) {
          pole = true;
          break;
        }
      if (pole) break;
    }
    if (!pole) return point;
  }
  throw Error("no pole-free evaluation point found");
}

MgfExpression dilate(const MgfExpression& expr, long t) {
  if (t <= 0) throw Error("dilation factor must be positive");
  MgfExpression out = expr;
  for (auto& term : out.terms)
    for (std::size_t i = 0; i < term.apex.rows(); ++i)
      for (std::size_t j = 0; j < term.apex.cols(); ++j) term.apex(i, j) *= t;
  return out;
}

std::string pretty_print(const MgfExpression& expr) {
  std::ostringstream out;
  for (const auto& term : expr.terms) {
    out << (term.sign < 0 ? "- " : "+ ") << monomial_text(term.apex);
    if (!term.rays.empty()) {
      out << " / (";
      for (std::size_t r = 0; r < term.rays.size(); ++r) {
        if (r) out << ' ';
        out << "(1 - " << monomial_text(term.rays[r]) << ')';
      }
      out << ')';
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace transpoly
