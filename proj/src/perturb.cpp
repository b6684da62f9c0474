#include "transpoly/perturb.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>

#include "transpoly/central.hpp"

namespace transpoly {

Margins PerturbationSpec::at(const Rational& t) const {
  auto r = base.r();
  auto c = base.c();
  for (auto& x : r) x -= t;
  c.back() -= Rational(static_cast<long>(base.m())) * t;
  return Margins(std::move(r), std::move(c));
}

Rational PerturbationSpec::t_bound() const {
  Rational b(Integer(1), K * static_cast<unsigned long>(base.m()));
  b.canonicalize();
  return b;
}

PerturbationSpec make_spec(const Margins& mar) {
  auto all = mar.r();
  all.insert(all.end(), mar.c().begin(), mar.c().end());
  PerturbationSpec spec{mar, lcm_of_denominators(all), 0};
  spec.t0 = spec.t_bound() / 2;
  return spec;
}

PerturbationSpec make_spec(const Margins& mar, const Rational& t) {
  PerturbationSpec spec = make_spec(mar);
  if (t <= 0 || t >= spec.t_bound())
    throw Error("perturbation parameter " + format_rational(t) + " outside (0, " + format_rational(spec.t_bound()) +
                ")");
  spec.t0 = t;
  return spec;
}

PivotTree northwest_corner(const Margins& mar) {
  const std::size_t m = mar.m(), n = mar.n();
  auto r = mar.r();
  auto c = mar.c();
  TransportMatrix mat(m, n);
  std::vector<Edge> edges;
  std::size_t i = 0, j = 0;
  while (i < m && j < n) {
    Rational x = std::min(r[i], c[j]);
    mat(i, j) = x;
    edges.push_back({i, j});
    r[i] -= x;
    c[j] -= x;
    bool row_done = r[i] == 0, col_done = c[j] == 0;
    if (row_done && col_done && !(i + 1 == m && j + 1 == n))
      throw DegenerateMargins("northwest corner hit a degenerate step");
    if (row_done)
      ++i;
    else
      ++j;
  }
  return {LabeledForest(mar.shape(), std::move(edges)), std::move(mat)};
}

namespace {

std::vector<PivotTree> pivot_neighbors(const PivotTree& at) {
  const auto& shape = at.tree.shape();
  std::vector<PivotTree> out;
  for (const Edge& e : all_edges(shape)) {
    if (at.tree.contains(e)) continue;
    RayMatrix ray = cyc(at.tree, {e});
    std::optional<Edge> leaving;
    Rational step;
    bool tie = false;
    for (const Edge& f : at.tree.edges()) {
      if (ray(f.i, f.j) != -1) continue;
      const Rational& x = at.matrix(f.i, f.j);
      if (!leaving || x < step) {
        leaving = f;
        step = x;
        tie = false;
      } else if (x == step) {
        tie = true;
      }
    }
    if (tie || !leaving || step <= 0) throw DegenerateMargins("degenerate pivot");
    TransportMatrix next = at.matrix;
    std::vector<Edge> edges;
    for (const Edge& f : at.tree.edges()) {
      if (ray(f.i, f.j) != 0) next(f.i, f.j) += step * ray(f.i, f.j);
      if (!(f == *leaving)) edges.push_back(f);
    }
    next(e.i, e.j) = step;
    next(leaving->i, leaving->j) = 0;
    edges.push_back(e);
    out.push_back({LabeledForest(shape, std::move(edges)), std::move(next)});
  }
  return out;
}

void check_start(const Margins& mar, const PivotTree& start) {
  if (!start.tree.is_spanning_tree()) throw DegenerateMargins("starting basis is not a spanning tree");
  if (!is_nondegenerate(mar)) throw DegenerateMargins("pivot enumeration needs non-degenerate margins");
}

}  // namespace

std::vector<PivotTree> pivot_enumerate_serial(const Margins& mar) {
  PivotTree start = northwest_corner(mar);
  check_start(mar, start);
  std::map<LabeledForest, TransportMatrix> seen;
  std::queue<PivotTree> work;
  seen.emplace(start.tree, start.matrix);
  work.push(std::move(start));
  while (!work.empty()) {
    PivotTree at = std::move(work.front());
    work.pop();
    for (auto& nb : pivot_neighbors(at))
      if (seen.emplace(nb.tree, nb.matrix).second) work.push(std::move(nb));
  }
  std::vector<PivotTree> out;
  out.reserve(seen.size());
  for (auto& [tree, mat] : seen) out.push_back({tree, mat});
  return out;
}

std::vector<PivotTree> pivot_enumerate(const Margins& mar) {
  PivotTree start = northwest_corner(mar);
  check_start(mar, start);
  std::map<LabeledForest, TransportMatrix> seen;
  seen.emplace(start.tree, start.matrix);
  std::vector<PivotTree> frontier{std::move(start)};
  while (!frontier.empty()) {
    std::vector<std::vector<PivotTree>> expanded(frontier.size());
    const auto count = static_cast<std::ptrdiff_t>(frontier.size());
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t k = 0; k < count; ++k) expanded[k] = pivot_neighbors(frontier[k]);
    std::vector<PivotTree> next;
    for (auto& list : expanded)
      for (auto& nb : list)
        if (seen.emplace(nb.tree, nb.matrix).second) next.push_back(std::move(nb));
    frontier = std::move(next);
  }
  std::vector<PivotTree> out;
  out.reserve(seen.size());
  for (auto& [tree, mat] : seen) out.push_back({tree, mat});
  return out;
}

TransportMatrix limit_vertex(const RootedTreeView& tree, const TransportMatrix& matrix_at_t0, const Integer& K) {
  TransportMatrix limit(matrix_at_t0.rows(), matrix_at_t0.cols());
  for (const Edge& e : tree.tree.edges()) {
    Rational scaled = matrix_at_t0(e.i, e.j) * K;
    Integer grid = tree.right_is_parent(e) ? ceil(scaled) : floor(scaled);
    limit(e.i, e.j) = Rational(grid, K);
    limit(e.i, e.j).canonicalize();
  }
  return limit;
}

TransportMatrix limit_vertex(const LabeledForest& tree, const PerturbationSpec& spec) {
  ForestSolution sol = solve_on_forest(spec.perturbed(), tree);
  if (sol.status != SolveStatus::Ok) throw Error("tree is not a vertex of the perturbed polytope");
  return limit_vertex(root_at_wn(tree), sol.matrix, spec.K);
}

TransportMatrix matrix_at(const RootedTreeView& tree, const TransportMatrix& limit, const Rational& t) {
  const auto& shape = tree.tree.shape();
  TransportMatrix out(limit.rows(), limit.cols());
  for (const Edge& e : tree.tree.edges()) {
    if (tree.right_is_parent(e))
      out(e.i, e.j) = limit(e.i, e.j) - Rational(static_cast<long>(tree.left_count[shape.left(e.i)])) * t;
    else
      out(e.i, e.j) = limit(e.i, e.j) + Rational(static_cast<long>(tree.left_count[shape.right(e.j)])) * t;
  }
  return out;
}

std::vector<PerturbedVertex> enumerate_perturbed_vertices(const PerturbationSpec& spec) {
  std::vector<PivotTree> trees = pivot_enumerate(spec.perturbed());
  std::vector<PerturbedVertex> out(trees.size());
  const auto count = static_cast<std::ptrdiff_t>(trees.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t k = 0; k < count; ++k) {
    PerturbedVertex& pv = out[k];
    pv.rooted = root_at_wn(trees[k].tree);
    pv.matrix_at_t0 = std::move(trees[k].matrix);
    pv.limit = limit_vertex(pv.rooted, pv.matrix_at_t0, spec.K);
  }
  for (const auto& pv : out)
    if (!(matrix_at(pv.rooted, pv.limit, spec.t0) == pv.matrix_at_t0))
      throw InternalError("perturbed vertex does not follow the left-count pattern");
  return out;
}

Grouping group_by_limit(const PerturbationSpec& spec) {
  Grouping g;
  g.perturbed = enumerate_perturbed_vertices(spec);

  std::map<TransportMatrix, std::vector<std::size_t>> by_limit;
  for (std::size_t k = 0; k < g.perturbed.size(); ++k) by_limit[g.perturbed[k].limit].push_back(k);

  for (auto& [mat, trees] : by_limit) {
    if (!satisfies_margins(mat, spec.base)) throw InternalError("limit matrix misses the base margins");
    g.groups.push_back({make_vertex_record(mat), trees});
  }

  // Each perturbed tree contains the support of exactly one base vertex,
  // and that vertex is its limit.
  for (std::size_t k = 0; k < g.perturbed.size(); ++k) {
    const Subgraph& tree = g.perturbed[k].tree().graph();
    std::size_t hits = 0;
    for (const auto& grp : g.groups)
      if (tree.contains(grp.vertex.aux.graph())) {
        ++hits;
        if (!(grp.vertex.matrix == g.perturbed[k].limit)) throw InternalError("tree contains a foreign vertex support");
      }
    if (hits != 1) throw InternalError("tree contains " + std::to_string(hits) + " base vertex supports");
  }
  return g;
}

MaxVertexCheck max_vertex_count_check(const PerturbationSpec& spec) {
  if (!spec.base.is_central()) throw NotCentral("margins are not central");
  MaxVertexCheck check;
  check.perturbed_count = pivot_enumerate(spec.perturbed()).size();
  const std::size_t m = spec.base.m(), n = spec.base.n();
  if (m % n == 0) {
    check.formula = central_counts(m / n, n).max_vertices;
    check.matches = *check.formula == static_cast<unsigned long>(check.perturbed_count);
  }
  return check;
}

}  // namespace transpoly
