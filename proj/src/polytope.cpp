#include "transpoly/polytope.hpp"

#include <algorithm>
#include <queue>

#include "transpoly/perturb.hpp"

namespace transpoly {

namespace {

// Sums of all proper nonempty subsets, sorted.
std::vector<Rational> proper_subset_sums(const std::vector<Rational>& xs) {
  if (xs.size() > 30) throw Error("too many margins for subset-sum degeneracy test");
  const std::size_t full = (std::size_t{1} << xs.size()) - 1;
  std::vector<Rational> sums(full + 1);
  for (std::size_t mask = 1; mask <= full; ++mask) {
    std::size_t low = mask & (~mask + 1);
    sums[mask] = sums[mask ^ low] + xs[static_cast<std::size_t>(__builtin_ctzll(low))];
  }
  std::vector<Rational> out(sums.begin() + 1, sums.end() - 1);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

Margins::Margins(std::vector<Rational> r, std::vector<Rational> c) : r_(std::move(r)), c_(std::move(c)) {
  if (r_.empty() || c_.empty()) throw InvalidMargins("margins must be nonempty");
  for (auto& x : r_) {
    x.canonicalize();
    if (x <= 0) throw InvalidMargins("row margin " + format_rational(x) + " is not positive");
  }
  for (auto& x : c_) {
    x.canonicalize();
    if (x <= 0) throw InvalidMargins("column margin " + format_rational(x) + " is not positive");
  }
  Rational sr = 0, sc = 0;
  for (const auto& x : r_) sr += x;
  for (const auto& x : c_) sc += x;
  if (sr != sc)
    throw InvalidMargins("row sum " + format_rational(sr) + " differs from column sum " + format_rational(sc));
}

Margins integer_margins(const std::vector<long>& r, const std::vector<long>& c) {
  std::vector<Rational> rr, cc;
  for (long x : r) rr.emplace_back(x);
  for (long x : c) cc.emplace_back(x);
  return Margins(std::move(rr), std::move(cc));
}

Rational Margins::total() const {
  Rational s = 0;
  for (const auto& x : r_) s += x;
  return s;
}

bool Margins::is_integral() const {
  return std::all_of(r_.begin(), r_.end(), is_integer) && std::all_of(c_.begin(), c_.end(), is_integer);
}

bool Margins::is_central() const {
  return std::all_of(r_.begin(), r_.end(), [&](const Rational& x) { return x == r_.front(); }) &&
         std::all_of(c_.begin(), c_.end(), [&](const Rational& x) { return x == c_.front(); });
}

Margins Margins::dilated(const Rational& t) const {
  auto r = r_;
  auto c = c_;
  for (auto& x : r) x *= t;
  for (auto& x : c) x *= t;
  return Margins(std::move(r), std::move(c));
}

bool is_nondegenerate(const Margins& mar) {
  auto a = proper_subset_sums(mar.r());
  auto b = proper_subset_sums(mar.c());
  std::size_t p = 0, q = 0;
  while (p < a.size() && q < b.size()) {
    int cmpv = cmp(a[p], b[q]);
    if (cmpv == 0) return false;
    if (cmpv < 0)
      ++p;
    else
      ++q;
  }
  return true;
}

bool is_nondegenerate_reference(const Margins& mar) {
  const std::size_t m = mar.m(), n = mar.n();
  for (std::size_t I = 1; I + 1 < (std::size_t{1} << m); ++I) {
    Rational si = 0;
    for (std::size_t i = 0; i < m; ++i)
      if (I >> i & 1) si += mar.r()[i];
    for (std::size_t J = 1; J + 1 < (std::size_t{1} << n); ++J) {
      Rational sj = 0;
      for (std::size_t j = 0; j < n; ++j)
        if (J >> j & 1) sj += mar.c()[j];
      if (si == sj) return false;
    }
  }
  return true;
}

Subgraph aux(const TransportMatrix& mat) {
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < mat.rows(); ++i)
    for (std::size_t j = 0; j < mat.cols(); ++j)
      if (mat(i, j) > 0) edges.push_back({i, j});
  return Subgraph(BipartiteShape(mat.rows(), mat.cols()), std::move(edges));
}

bool satisfies_margins(const TransportMatrix& mat, const Margins& mar) {
  if (mat.rows() != mar.m() || mat.cols() != mar.n()) return false;
  for (std::size_t i = 0; i < mar.m(); ++i) {
    Rational s = 0;
    for (std::size_t j = 0; j < mar.n(); ++j) {
      if (mat(i, j) < 0) return false;
      s += mat(i, j);
    }
    if (s != mar.r()[i]) return false;
  }
  for (std::size_t j = 0; j < mar.n(); ++j) {
    Rational s = 0;
    for (std::size_t i = 0; i < mar.m(); ++i) s += mat(i, j);
    if (s != mar.c()[j]) return false;
  }
  return true;
}

ForestSolution solve_on_forest(const Margins& mar, const LabeledForest& forest) {
  const BipartiteShape shape = mar.shape();
  if (!(forest.shape() == shape)) throw Error("forest and margins have different shapes");

  std::vector<Rational> residual(shape.vertex_count());
  for (std::size_t i = 0; i < shape.m; ++i) residual[shape.left(i)] = mar.r()[i];
  for (std::size_t j = 0; j < shape.n; ++j) residual[shape.right(j)] = mar.c()[j];

  // Each component must carry equal left and right mass.
  auto comp = forest.components();
  std::size_t comp_count = *std::max_element(comp.begin(), comp.end()) + 1;
  std::vector<Rational> balance(comp_count);
  for (std::size_t v = 0; v < shape.vertex_count(); ++v)
    balance[comp[v]] += shape.is_left(v) ? residual[v] : -residual[v];
  for (const auto& b : balance)
    if (b != 0) return {SolveStatus::NotUnique, {}};

  const auto& edges = forest.edges();
  std::vector<std::vector<std::size_t>> incident(shape.vertex_count());
  for (std::size_t k = 0; k < edges.size(); ++k) {
    incident[shape.left(edges[k].i)].push_back(k);
    incident[shape.right(edges[k].j)].push_back(k);
  }
  std::vector<std::size_t> degree(shape.vertex_count());
  std::queue<std::size_t> leaves;
  for (std::size_t v = 0; v < shape.vertex_count(); ++v) {
    degree[v] = incident[v].size();
    if (degree[v] == 1) leaves.push(v);
  }
  std::vector<bool> used(edges.size(), false);
  TransportMatrix mat(shape.m, shape.n);
  bool negative = false;
  while (!leaves.empty()) {
    std::size_t v = leaves.front();
    leaves.pop();
    if (degree[v] != 1) continue;
    std::size_t k = *std::find_if(incident[v].begin(), incident[v].end(), [&](std::size_t x) { return !used[x]; });
    used[k] = true;
    const Edge& e = edges[k];
    std::size_t other = shape.is_left(v) ? shape.right(e.j) : shape.left(e.i);
    mat(e.i, e.j) = residual[v];
    if (residual[v] < 0) negative = true;
    residual[other] -= residual[v];
    residual[v] = 0;
    degree[v] = 0;
    if (--degree[other] == 1) leaves.push(other);
  }
  if (negative) return {SolveStatus::Infeasible, {}};
  return {SolveStatus::Ok, std::move(mat)};
}

VertexRecord make_vertex_record(const TransportMatrix& mat) {
  LabeledForest forest(aux(mat));
  bool degenerate = forest.size() + 1 < forest.shape().vertex_count();
  return {mat, std::move(forest), degenerate};
}

std::vector<VertexRecord> enumerate_vertices(const Margins& mar) {
  Grouping grouping = group_by_limit(make_spec(mar));
  std::vector<VertexRecord> out;
  out.reserve(grouping.groups.size());
  for (auto& g : grouping.groups) out.push_back(std::move(g.vertex));
  return out;
}

std::vector<RayMatrix> feasible_cone_rays(const VertexRecord& v) {
  std::vector<RayMatrix> rays;
  for (auto& a : enumerate_augmentations(v.aux)) rays.push_back(std::move(a.ray));
  std::sort(rays.begin(), rays.end());
  rays.erase(std::unique(rays.begin(), rays.end()), rays.end());
  return rays;
}

std::optional<RayMatrix> adjacent(const VertexRecord& u, const VertexRecord& v) {
  if (u.matrix == v.matrix) throw SameVertex("adjacency of a vertex with itself");
  CycleResult c = unique_cycle_of_union(u.aux.graph(), v.aux.graph());
  if (c.kind != CycleKind::Unique) return std::nullopt;
  std::vector<Edge> extra;
  for (const Edge& e : c.cycle)
    if (!u.aux.contains(e)) extra.push_back(e);
  return cyc(u.aux, extra);
}

}  // namespace transpoly
