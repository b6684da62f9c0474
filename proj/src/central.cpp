#include "transpoly/central.hpp"

#include <algorithm>
#include <numeric>

namespace transpoly {

CentralSpec::CentralSpec(std::size_t k_, std::size_t n_, long a_) : k(k_), n(n_), a(a_) {
  if (k == 0 || n == 0 || a <= 0) throw Error("central spec needs k, n, a >= 1");
}

Margins CentralSpec::margins() const {
  return integer_margins(std::vector<long>(m(), a), std::vector<long>(n, b()));
}

IntMatrix MatchingMatrix::matrix() const {
  IntMatrix mat(column_of_row.size(), n());
  for (std::size_t i = 0; i < column_of_row.size(); ++i) mat(i, column_of_row[i]) = 1;
  return mat;
}

bool MatchingMatrix::valid() const {
  if (k == 0 || column_of_row.empty() || column_of_row.size() % k != 0) return false;
  std::vector<std::size_t> load(n(), 0);
  for (auto c : column_of_row) {
    if (c >= n()) return false;
    ++load[c];
  }
  return std::all_of(load.begin(), load.end(), [&](std::size_t x) { return x == k; });
}

bool RootedRightTree::valid() const {
  const std::size_t count = n();
  if (count == 0 || parent.back() != kNoParent) return false;
  for (std::size_t j = 0; j + 1 < count; ++j) {
    // Walk to the root; a cycle or a dangling index shows up as a long walk.
    std::size_t at = j, steps = 0;
    while (at != count - 1) {
      if (at >= count || parent[at] == kNoParent || ++steps > count) return false;
      at = parent[at];
    }
  }
  return true;
}

std::vector<MatchingMatrix> enumerate_matchings(std::size_t k, std::size_t n) {
  std::vector<MatchingMatrix> out;
  MatchingMatrix cur{k, std::vector<std::size_t>(k * n)};
  std::vector<std::size_t> load(n, 0);
  auto place = [&](auto&& self, std::size_t row) -> void {
    if (row == k * n) {
      out.push_back(cur);
      return;
    }
    for (std::size_t c = 0; c < n; ++c) {
      if (load[c] == k) continue;
      ++load[c];
      cur.column_of_row[row] = c;
      self(self, row + 1);
      --load[c];
    }
  };
  place(place, 0);
  return out;
}

std::vector<RootedRightTree> enumerate_rooted_trees(std::size_t n) {
  if (n == 0) throw Error("rooted trees need n >= 1");
  std::vector<RootedRightTree> out;
  auto orient = [&](const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
    std::vector<std::vector<std::size_t>> adj(n);
    for (auto [x, y] : edges) {
      adj[x].push_back(y);
      adj[y].push_back(x);
    }
    RootedRightTree t{std::vector<std::size_t>(n, RootedRightTree::kNoParent)};
    std::vector<std::size_t> order{n - 1};
    std::vector<bool> seen(n, false);
    seen[n - 1] = true;
    for (std::size_t q = 0; q < order.size(); ++q)
      for (auto w : adj[order[q]])
        if (!seen[w]) {
          seen[w] = true;
          t.parent[w] = order[q];
          order.push_back(w);
        }
    out.push_back(std::move(t));
  };
  if (n <= 2) {
    orient(n == 2 ? std::vector<std::pair<std::size_t, std::size_t>>{{0, 1}}
                  : std::vector<std::pair<std::size_t, std::size_t>>{});
    return out;
  }
  // Decode every Prüfer sequence of length n - 2.
  std::vector<std::size_t> seq(n - 2, 0);
  while (true) {
    std::vector<std::size_t> degree(n, 1);
    for (auto x : seq) ++degree[x];
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    for (auto x : seq) {
      std::size_t leaf = 0;
      while (degree[leaf] != 1) ++leaf;
      edges.push_back({leaf, x});
      --degree[leaf];
      --degree[x];
    }
    std::size_t u = n, v = n;
    for (std::size_t x = 0; x < n; ++x)
      if (degree[x] == 1) (u == n ? u : v) = x;
    edges.push_back({u, v});
    orient(edges);

    std::size_t pos = 0;
    while (pos < seq.size() && ++seq[pos] == n) seq[pos++] = 0;
    if (pos == seq.size()) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<BranchChoices> enumerate_branch_choices(std::size_t k, std::size_t n) {
  std::vector<BranchChoices> out;
  BranchChoices cur{std::vector<std::size_t>(n - 1, 1)};
  while (true) {
    out.push_back(cur);
    std::size_t pos = 0;
    while (pos < cur.f.size() && ++cur.f[pos] > k) cur.f[pos++] = 1;
    if (pos == cur.f.size()) break;
  }
  return out;
}

LabeledForest phi(const MatchingMatrix& matching, const RootedRightTree& tree, const BranchChoices& branches) {
  const std::size_t n = tree.n();
  const std::size_t k = matching.k;
  if (!matching.valid() || !tree.valid() || matching.n() != n || branches.f.size() + 1 != n)
    throw Error("phi: inconsistent arguments");
  std::vector<std::vector<std::size_t>> rows_of(n);
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < matching.column_of_row.size(); ++i) {
    rows_of[matching.column_of_row[i]].push_back(i);
    edges.push_back({i, matching.column_of_row[i]});
  }
  for (std::size_t j = 0; j + 1 < n; ++j) {
    std::size_t f = branches.f[j];
    if (f < 1 || f > k) throw Error("phi: branch choice out of range");
    edges.push_back({rows_of[tree.parent[j]][f - 1], j});
  }
  return LabeledForest(BipartiteShape(k * n, n), std::move(edges));
}

bool in_st(const LabeledForest& tree, std::size_t k) {
  const auto& shape = tree.shape();
  if (k == 0 || shape.m != k * shape.n || !tree.is_spanning_tree()) return false;
  auto deg = right_degree_sequence(tree);
  for (std::size_t j = 0; j < shape.n; ++j)
    if (deg[j] != (j + 1 == shape.n ? k : k + 1)) return false;
  return true;
}

PhiPreimage phi_inverse(const LabeledForest& tree, std::size_t k) {
  if (!in_st(tree, k)) throw NotInST("tree is not in ST_{k,n}");
  const auto& shape = tree.shape();
  RootedTreeView view = root_at_wn(tree);

  PhiPreimage pre;
  pre.matching.k = k;
  pre.matching.column_of_row.resize(shape.m);
  for (std::size_t i = 0; i < shape.m; ++i) {
    std::size_t p = view.parent[shape.left(i)];
    pre.matching.column_of_row[i] = p - shape.m;
  }
  pre.tree.parent.assign(shape.n, RootedRightTree::kNoParent);
  pre.branches.f.assign(shape.n - 1, 0);
  for (std::size_t j = 0; j + 1 < shape.n; ++j) {
    std::size_t u = view.parent[shape.right(j)];
    std::size_t up = view.parent[u] - shape.m;
    pre.tree.parent[j] = up;
    const auto& siblings = view.children[shape.right(up)];  // ascending left indices
    pre.branches.f[j] = static_cast<std::size_t>(std::find(siblings.begin(), siblings.end(), u) - siblings.begin()) + 1;
  }
  if (!pre.matching.valid()) throw InternalError("E_1 is not a k-to-1 matching");
  return pre;
}

std::vector<LabeledForest> enumerate_st(std::size_t k, std::size_t n) {
  const auto matchings = enumerate_matchings(k, n);
  const auto trees = enumerate_rooted_trees(n);
  const auto choices = enumerate_branch_choices(k, n);
  std::vector<std::vector<LabeledForest>> parts(matchings.size());
  const auto count = static_cast<std::ptrdiff_t>(matchings.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t x = 0; x < count; ++x)
    for (const auto& r : trees)
      for (const auto& f : choices) parts[x].push_back(phi(matchings[x], r, f));
  std::vector<LabeledForest> out;
  for (auto& p : parts) out.insert(out.end(), std::make_move_iterator(p.begin()), std::make_move_iterator(p.end()));
  std::sort(out.begin(), out.end());
  return out;
}

RationalMatrix AffineMatrix::at(const Rational& t) const {
  RationalMatrix out(constant.rows(), constant.cols());
  for (std::size_t i = 0; i < constant.rows(); ++i)
    for (std::size_t j = 0; j < constant.cols(); ++j)
      out(i, j) = Rational(static_cast<long>(constant(i, j))) + Rational(static_cast<long>(slope(i, j))) * t;
  return out;
}

CentralVertex central_vertex(const LabeledForest& tree, const CentralSpec& spec) {
  if (!in_st(tree, spec.k) || !(tree.shape() == spec.shape())) throw NotInST("tree is not in ST_{k,n}");
  const auto& shape = tree.shape();
  RootedTreeView view = root_at_wn(tree);
  CentralVertex v;
  v.perturbed.constant = IntMatrix(shape.m, shape.n);
  v.perturbed.slope = IntMatrix(shape.m, shape.n);
  for (const Edge& e : tree.edges()) {
    if (view.right_is_parent(e)) {
      v.perturbed.constant(e.i, e.j) = spec.a;
      v.perturbed.slope(e.i, e.j) = -static_cast<std::int64_t>(view.left_count[shape.left(e.i)]);
    } else {
      v.perturbed.slope(e.i, e.j) = static_cast<std::int64_t>(view.left_count[shape.right(e.j)]);
    }
  }
  v.limit = v.perturbed.constant;
  v.at_t0 = v.perturbed.at(Rational(1, 2 * static_cast<unsigned long>(shape.m)));
  return v;
}

MgfExpression central_mgf(const CentralSpec& spec) {
  const auto trees = enumerate_st(spec.k, spec.n);
  const BipartiteShape shape = spec.shape();
  MgfExpression expr{shape, std::vector<MgfTerm>(trees.size())};
  const auto count = static_cast<std::ptrdiff_t>(trees.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t x = 0; x < count; ++x) {
    const LabeledForest& t = trees[x];
    std::vector<RayMatrix> rays;
    for (const Edge& e : all_edges(shape))
      if (!t.contains(e)) rays.push_back(cyc(t, {e}));
    MgfTerm term = unimodular_cone_mgf(shape, std::move(rays));
    term.apex = central_vertex(t, spec).limit;
    expr.terms[x] = std::move(term);
  }
  return expr;
}

CentralCounts central_counts(std::size_t k, std::size_t n) {
  if (k == 0 || n == 0) throw Error("central counts need k, n >= 1");
  Integer kfact = factorial(static_cast<unsigned>(k));
  Integer denom;
  mpz_pow_ui(denom.get_mpz_t(), kfact.get_mpz_t(), n);
  CentralCounts c;
  c.vertices = factorial(static_cast<unsigned>(k * n)) / denom;
  Integer trees = 1, branches;
  if (n >= 2) mpz_ui_pow_ui(trees.get_mpz_t(), n, n - 2);
  mpz_ui_pow_ui(branches.get_mpz_t(), k, n - 1);
  c.max_vertices = c.vertices * trees * branches;
  return c;
}

}  // namespace transpoly
