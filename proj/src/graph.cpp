#include "transpoly/graph.hpp"

#include <algorithm>
#include <numeric>
#include <queue>

namespace transpoly {

namespace {

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent_[b] = a;
    return true;
  }

 private:
  std::vector<std::size_t> parent_;
};

using Adjacency = std::vector<std::vector<std::pair<std::size_t, Edge>>>;

Adjacency adjacency(const BipartiteShape& shape, const std::vector<Edge>& edges) {
  Adjacency adj(shape.vertex_count());
  for (const Edge& e : edges) {
    adj[shape.left(e.i)].push_back({shape.right(e.j), e});
    adj[shape.right(e.j)].push_back({shape.left(e.i), e});
  }
  return adj;
}

// Edges of the 2-core, obtained by repeatedly stripping degree-1 vertices.
std::vector<Edge> two_core(const BipartiteShape& shape, const std::vector<Edge>& edges) {
  Adjacency adj = adjacency(shape, edges);
  std::vector<std::size_t> degree(adj.size());
  for (std::size_t v = 0; v < adj.size(); ++v) degree[v] = adj[v].size();
  std::vector<bool> removed(adj.size(), false);
  std::queue<std::size_t> leaves;
  for (std::size_t v = 0; v < adj.size(); ++v)
    if (degree[v] <= 1) leaves.push(v);
  while (!leaves.empty()) {
    std::size_t v = leaves.front();
    leaves.pop();
    if (removed[v]) continue;
    removed[v] = true;
    for (const auto& [w, e] : adj[v])
      if (!removed[w] && --degree[w] == 1) leaves.push(w);
  }
  std::vector<Edge> core;
  for (const Edge& e : edges)
    if (!removed[shape.left(e.i)] && !removed[shape.right(e.j)]) core.push_back(e);
  return core;
}

// Walks a single cycle starting with `first`, traversed from its left end.
// Returns the edges in order together with their orientation signs.
std::vector<std::pair<Edge, int>> walk_cycle(const BipartiteShape& shape, const std::vector<Edge>& cycle,
                                             const Edge& first) {
  Adjacency adj = adjacency(shape, cycle);
  std::vector<std::pair<Edge, int>> out;
  std::size_t start = shape.left(first.i);
  std::size_t at = shape.right(first.j);
  Edge came = first;
  out.push_back({first, +1});
  while (at != start) {
    bool moved = false;
    for (const auto& [w, e] : adj[at]) {
      if (e == came) continue;
      out.push_back({e, shape.is_left(at) ? +1 : -1});
      came = e;
      at = w;
      moved = true;
      break;
    }
    if (!moved || out.size() > cycle.size()) throw InternalError("cycle walk left the cycle");
  }
  return out;
}

std::vector<Edge> sorted_unique(std::vector<Edge> edges) {
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return edges;
}

}  // namespace

BipartiteShape::BipartiteShape(std::size_t m_, std::size_t n_) : m(m_), n(n_) {
  if (m == 0 || n == 0) throw Error("K_{m,n} needs m >= 1 and n >= 1");
}

std::vector<Edge> all_edges(const BipartiteShape& shape) {
  std::vector<Edge> edges;
  edges.reserve(shape.edge_count());
  for (std::size_t j = 0; j < shape.n; ++j)
    for (std::size_t i = 0; i < shape.m; ++i) edges.push_back({i, j});
  return edges;
}

Subgraph::Subgraph(BipartiteShape shape, std::vector<Edge> edges) : shape_(shape), edges_(sorted_unique(std::move(edges))) {
  for (const Edge& e : edges_)
    if (e.i >= shape_.m || e.j >= shape_.n) throw Error("edge outside K_{m,n}");
}

bool Subgraph::contains(const Edge& e) const { return std::binary_search(edges_.begin(), edges_.end(), e); }

bool Subgraph::contains(const Subgraph& other) const {
  return std::includes(edges_.begin(), edges_.end(), other.edges_.begin(), other.edges_.end());
}

std::size_t Subgraph::component_count() const {
  UnionFind uf(shape_.vertex_count());
  std::size_t components = shape_.vertex_count();
  for (const Edge& e : edges_)
    if (uf.unite(shape_.left(e.i), shape_.right(e.j))) --components;
  return components;
}

std::size_t Subgraph::cyclomatic_number() const {
  return edges_.size() + component_count() - shape_.vertex_count();
}

LabeledForest::LabeledForest(Subgraph g) : graph_(std::move(g)) {
  if (!graph_.is_forest()) throw NotAForest("edge set contains a cycle");
}

std::vector<std::size_t> LabeledForest::components() const {
  const auto& shape = graph_.shape();
  UnionFind uf(shape.vertex_count());
  for (const Edge& e : graph_.edges()) uf.unite(shape.left(e.i), shape.right(e.j));
  std::vector<std::size_t> id(shape.vertex_count(), RootedTreeView::kNoParent);
  std::vector<std::size_t> label(shape.vertex_count(), RootedTreeView::kNoParent);
  std::size_t next = 0;
  for (std::size_t v = 0; v < shape.vertex_count(); ++v) {
    std::size_t r = uf.find(v);
    if (label[r] == RootedTreeView::kNoParent) label[r] = next++;
    id[v] = label[r];
  }
  return id;
}

std::vector<std::size_t> right_degree_sequence(const Subgraph& g) {
  std::vector<std::size_t> deg(g.shape().n, 0);
  for (const Edge& e : g.edges()) ++deg[e.j];
  return deg;
}

RootedTreeView root_at_wn(const LabeledForest& tree) {
  if (!tree.is_spanning_tree()) throw NotSpanningTree("forest is not a spanning tree of K_{m,n}");
  const auto& shape = tree.shape();
  Adjacency adj = adjacency(shape, tree.edges());

  RootedTreeView view;
  view.tree = tree;
  view.parent.assign(shape.vertex_count(), RootedTreeView::kNoParent);
  view.children.assign(shape.vertex_count(), {});
  view.left_count.assign(shape.vertex_count(), 0);

  std::vector<std::size_t> order;
  std::vector<bool> seen(shape.vertex_count(), false);
  std::size_t root = view.root();
  order.push_back(root);
  seen[root] = true;
  for (std::size_t k = 0; k < order.size(); ++k) {
    std::size_t v = order[k];
    for (const auto& [w, e] : adj[v]) {
      if (seen[w]) continue;
      seen[w] = true;
      view.parent[w] = v;
      view.children[v].push_back(w);
      order.push_back(w);
    }
  }
  for (auto& c : view.children) std::sort(c.begin(), c.end());
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    std::size_t v = *it;
    view.left_count[v] += shape.is_left(v) ? 1 : 0;
    if (view.parent[v] != RootedTreeView::kNoParent) view.left_count[view.parent[v]] += view.left_count[v];
  }
  return view;
}

RayMatrix cyc(const LabeledForest& tree, const std::vector<Edge>& extra_in) {
  const auto& shape = tree.shape();
  std::vector<Edge> extra = sorted_unique(extra_in);
  if (extra.empty()) throw InvalidAugmentation(AugmentationFailure::NoCycle, "empty augmentation");
  for (const Edge& e : extra) {
    if (e.i >= shape.m || e.j >= shape.n) throw Error("edge outside K_{m,n}");
    if (tree.contains(e))
      throw InvalidAugmentation(AugmentationFailure::EdgeInForest, "augmenting edge already in the forest");
  }

  std::vector<Edge> all = tree.edges();
  all.insert(all.end(), extra.begin(), extra.end());
  Subgraph joined(shape, all);
  std::size_t cycles = joined.cyclomatic_number();
  if (cycles == 0) throw InvalidAugmentation(AugmentationFailure::NoCycle, "T ∪ e is acyclic");
  if (cycles > 1) throw InvalidAugmentation(AugmentationFailure::MultipleCycles, "T ∪ e has several cycles");

  std::vector<Edge> core = two_core(shape, joined.edges());
  for (const Edge& e : extra)
    if (!std::binary_search(core.begin(), core.end(), e))
      throw InvalidAugmentation(AugmentationFailure::EdgeOffCycle, "augmenting edge is not on the cycle");

  RayMatrix ray(shape.m, shape.n);
  for (const auto& [e, sign] : walk_cycle(shape, core, extra.front())) {
    if (sign < 0 && std::binary_search(extra.begin(), extra.end(), e))
      throw InvalidAugmentation(AugmentationFailure::OddDistance, "augmenting edges at odd distance");
    ray(e.i, e.j) = sign;
  }
  return ray;
}

std::vector<Augmentation> enumerate_augmentations(const LabeledForest& tree) {
  const auto& shape = tree.shape();
  std::vector<std::size_t> comp = tree.components();
  std::size_t comp_count = comp.empty() ? 0 : *std::max_element(comp.begin(), comp.end()) + 1;

  std::vector<Augmentation> out;
  std::vector<Edge> bridges;  // non-forest edges joining two components
  for (const Edge& e : all_edges(shape)) {
    if (tree.contains(e)) continue;
    std::size_t a = comp[shape.left(e.i)], b = comp[shape.right(e.j)];
    if (a == b)
      out.push_back({{e}, cyc(tree, {e})});
    else
      bridges.push_back(e);
  }

  // Edge sets that form exactly one cycle in the component multigraph.
  std::vector<Edge> chosen;
  std::vector<int> degree(comp_count, 0);
  auto try_candidate = [&] {
    try {
      out.push_back({chosen, cyc(tree, chosen)});
    } catch (const InvalidAugmentation& ex) {
      if (ex.why() != AugmentationFailure::OddDistance) throw InternalError(ex.what());
    }
  };
  auto search = [&](auto&& self, std::size_t next, std::vector<std::size_t> group) -> void {
    for (std::size_t k = next; k < bridges.size(); ++k) {
      const Edge& e = bridges[k];
      std::size_t a = comp[shape.left(e.i)], b = comp[shape.right(e.j)];
      if (degree[a] == 2 || degree[b] == 2) continue;
      ++degree[a];
      ++degree[b];
      chosen.push_back(e);
      std::size_t ga = group[a], gb = group[b];
      if (ga == gb) {
        bool closed = true;
        for (std::size_t c = 0; c < comp_count; ++c)
          if (degree[c] == 1) closed = false;
        if (closed) try_candidate();
      } else {
        auto merged = group;
        for (auto& g : merged)
          if (g == gb) g = ga;
        self(self, k + 1, std::move(merged));
      }
      chosen.pop_back();
      --degree[a];
      --degree[b];
    }
  };
  std::vector<std::size_t> group(comp_count);
  std::iota(group.begin(), group.end(), 0);
  search(search, 0, group);

  std::sort(out.begin(), out.end(), [](const Augmentation& x, const Augmentation& y) { return x.extra < y.extra; });
  return out;
}

CycleResult unique_cycle_of_union(const Subgraph& a, const Subgraph& b) {
  if (!(a.shape() == b.shape())) throw Error("subgraphs of different K_{m,n}");
  std::vector<Edge> all = a.edges();
  all.insert(all.end(), b.edges().begin(), b.edges().end());
  Subgraph joined(a.shape(), all);
  std::size_t cycles = joined.cyclomatic_number();
  if (cycles == 0) return {CycleKind::None, {}};
  if (cycles > 1) return {CycleKind::Multiple, {}};

  std::vector<Edge> core = two_core(a.shape(), joined.edges());
  Edge first = core.front();
  for (const Edge& e : core)
    if (!a.contains(e)) {
      first = e;
      break;
    }
  CycleResult result{CycleKind::Unique, {}};
  for (const auto& step : walk_cycle(a.shape(), core, first)) result.cycle.push_back(step.first);
  return result;
}

bool is_valid_ray(const RayMatrix& ray) {
  const std::size_t m = ray.rows(), n = ray.cols();
  if (m == 0 || n == 0) return false;
  std::vector<Edge> support;
  std::vector<int> deg(m + n, 0);
  std::vector<std::int64_t> row(m, 0), col(n, 0);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      auto x = ray(i, j);
      if (x < -1 || x > 1) return false;
      row[i] += x;
      col[j] += x;
      if (x != 0) {
        support.push_back({i, j});
        ++deg[i];
        ++deg[m + j];
      }
    }
  if (support.empty()) return false;
  for (auto s : row)
    if (s != 0) return false;
  for (auto s : col)
    if (s != 0) return false;
  for (int d : deg)
    if (d != 0 && d != 2) return false;
  Subgraph g(BipartiteShape(m, n), support);
  std::size_t isolated = std::count(deg.begin(), deg.end(), 0);
  return g.component_count() == isolated + 1;
}

}  // namespace transpoly
