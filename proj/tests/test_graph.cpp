#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <optional>
#include <random>

#include "support.hpp"
#include "transpoly/json_io.hpp"

using namespace testing;

namespace {

// Independent check of the cycle conditions on T ∪ ee. Returns the signed
// cycle matrix, or nothing when some condition fails.
std::optional<IntMatrix> oracle_cyc(const LabeledForest& tree, const std::vector<Edge>& extra) {
  const BipartiteShape shape = tree.shape();
  for (const auto& e : extra)
    if (tree.contains(e)) return std::nullopt;
  std::vector<Edge> all = tree.edges();
  all.insert(all.end(), extra.begin(), extra.end());

  auto connected_without = [&](std::size_t skip) {
    std::vector<std::size_t> root(shape.vertex_count());
    std::iota(root.begin(), root.end(), 0);
    auto find = [&](std::size_t x) {
      while (root[x] != x) x = root[x] = root[root[x]];
      return x;
    };
    for (std::size_t k = 0; k < all.size(); ++k)
      if (k != skip) root[find(shape.left(all[k].i))] = find(shape.right(all[k].j));
    return find(shape.left(all[skip].i)) == find(shape.right(all[skip].j));
  };
  // An edge lies on a cycle iff its endpoints stay connected without it.
  std::vector<Edge> on_cycle;
  for (std::size_t k = 0; k < all.size(); ++k)
    if (connected_without(k)) on_cycle.push_back(all[k]);
  if (on_cycle.empty()) return std::nullopt;
  // One cycle: every vertex touched by cycle edges has degree exactly 2 and
  // the cycle edges are connected.
  std::vector<std::vector<std::size_t>> inc(shape.vertex_count());
  for (std::size_t k = 0; k < on_cycle.size(); ++k) {
    inc[shape.left(on_cycle[k].i)].push_back(k);
    inc[shape.right(on_cycle[k].j)].push_back(k);
  }
  for (const auto& l : inc)
    if (!l.empty() && l.size() != 2) return std::nullopt;
  // Walk it.
  std::vector<std::size_t> order{0};
  std::vector<bool> used(on_cycle.size(), false);
  used[0] = true;
  std::size_t at = shape.right(on_cycle[0].j);
  while (order.size() < on_cycle.size()) {
    std::size_t next = used[inc[at][0]] ? inc[at][1] : inc[at][0];
    if (used[next]) return std::nullopt;  // several cycles
    used[next] = true;
    order.push_back(next);
    const Edge& e = on_cycle[next];
    at = at == shape.left(e.i) ? shape.right(e.j) : shape.left(e.i);
  }
  std::optional<std::size_t> parity;
  for (const auto& x : extra) {
    auto it = std::find(on_cycle.begin(), on_cycle.end(), x);
    if (it == on_cycle.end()) return std::nullopt;
    std::size_t pos = std::find(order.begin(), order.end(), std::size_t(it - on_cycle.begin())) - order.begin();
    if (parity && *parity != pos % 2) return std::nullopt;
    parity = pos % 2;
  }
  IntMatrix ray(shape.m, shape.n);
  for (std::size_t p = 0; p < order.size(); ++p) {
    const Edge& e = on_cycle[order[p]];
    ray(e.i, e.j) = (p % 2 == *parity) ? 1 : -1;
  }
  return ray;
}

LabeledForest random_forest(std::mt19937_64& rng, const BipartiteShape& shape, std::size_t max_edges) {
  auto pool = all_edges(shape);
  std::shuffle(pool.begin(), pool.end(), rng);
  std::vector<std::size_t> root(shape.vertex_count());
  std::iota(root.begin(), root.end(), 0);
  auto find = [&](std::size_t x) {
    while (root[x] != x) x = root[x];
    return x;
  };
  std::vector<Edge> chosen;
  for (const auto& e : pool) {
    if (chosen.size() == max_edges) break;
    std::size_t a = find(shape.left(e.i)), b = find(shape.right(e.j));
    if (a == b) continue;
    root[a] = b;
    chosen.push_back(e);
  }
  return LabeledForest(shape, chosen);
}

std::vector<std::pair<std::vector<Edge>, IntMatrix>> oracle_augmentations(const LabeledForest& tree) {
  std::vector<Edge> free;
  for (const auto& e : all_edges(tree.shape()))
    if (!tree.contains(e)) free.push_back(e);
  std::vector<std::pair<std::vector<Edge>, IntMatrix>> out;
  for (std::size_t mask = 1; mask < (std::size_t(1) << free.size()); ++mask) {
    std::vector<Edge> extra;
    for (std::size_t k = 0; k < free.size(); ++k)
      if (mask >> k & 1) extra.push_back(free[k]);
    if (auto ray = oracle_cyc(tree, extra)) out.emplace_back(extra, *ray);
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

AugmentationFailure failure_of(const LabeledForest& tree, const std::vector<Edge>& extra) {
  try {
    cyc(tree, extra);
  } catch (const InvalidAugmentation& e) {
    return e.why();
  }
  FAIL("cyc accepted an invalid augmentation");
  return AugmentationFailure::NoCycle;
}

bool cyclic_equal(std::vector<Edge> a, const std::vector<Edge>& b) {
  if (a.size() != b.size()) return false;
  for (int flip = 0; flip < 2; ++flip) {
    for (std::size_t s = 0; s < a.size(); ++s) {
      std::rotate(a.begin(), a.begin() + 1, a.end());
      if (a == b) return true;
    }
    std::reverse(a.begin(), a.end());
  }
  return false;
}

}  // namespace

TEST_CASE("right degree sequence") {
  CHECK(right_degree_sequence(example_forests()[0]) == std::vector<std::size_t>{1, 1, 1});
  CHECK(right_degree_sequence(LabeledForest(BipartiteShape(2, 2), {})) == std::vector<std::size_t>{0, 0});
  CHECK(right_degree_sequence(example_forests()[6]) == std::vector<std::size_t>{1, 1, 2});
}

TEST_CASE("bipartite shape rejects empty sides") {
  CHECK_THROWS_AS(BipartiteShape(0, 2), Error);
  CHECK_THROWS_AS(BipartiteShape(2, 0), Error);
}

TEST_CASE("subgraph cycle counts") {
  Subgraph k22 = subgraph(2, 2, {{1, 1}, {1, 2}, {2, 1}, {2, 2}});
  CHECK(k22.cyclomatic_number() == 1);
  CHECK(k22.component_count() == 1);
  CHECK_FALSE(k22.is_forest());
  CHECK_THROWS_AS(LabeledForest{k22}, NotAForest);
  Subgraph t0 = example_forests()[0].graph();
  CHECK(t0.component_count() == 3);
  CHECK(t0.is_forest());
  CHECK_FALSE(t0.is_spanning_tree());
  CHECK(subgraph(3, 3, {{1, 1}, {2, 2}}).contains(edges({{2, 2}})[0]));
}

TEST_CASE("root at w_n on a single edge") {
  RootedTreeView v = root_at_wn(forest(1, 1, {{1, 1}}));
  CHECK(v.root() == 1);
  CHECK(v.parent[0] == 1);
  CHECK(v.parent[1] == RootedTreeView::kNoParent);
  CHECK(v.left_count[0] == 1);
  CHECK(v.left_count[1] == 1);
}

TEST_CASE("root at w_n on a five-edge tree") {
  LabeledForest t = forest(3, 3, {{1, 1}, {1, 2}, {2, 2}, {3, 1}, {3, 3}});
  RootedTreeView v = root_at_wn(t);
  const BipartiteShape s = t.shape();
  CHECK(v.parent[s.left(2)] == s.right(2));
  CHECK(v.parent[s.right(0)] == s.left(2));
  CHECK(v.left_count[s.right(0)] == 2);
  CHECK(v.left_count[s.right(1)] == 1);
  CHECK(v.left_count[s.left(2)] == 3);
  CHECK(v.left_count[s.right(2)] == 3);
  CHECK(v.right_is_parent(edges({{2, 2}})[0]));
  CHECK_FALSE(v.right_is_parent(edges({{1, 2}})[0]));
}

TEST_CASE("root at w_n rejects forests") {
  CHECK_THROWS_AS(root_at_wn(example_forests()[0]), NotSpanningTree);
}

TEST_CASE("left counts agree with subtree recomputation") {
  std::mt19937_64 rng(11);
  for (int round = 0; round < 40; ++round) {
    BipartiteShape shape(1 + rng() % 4, 1 + rng() % 4);
    LabeledForest t = random_forest(rng, shape, shape.vertex_count() - 1);
    RootedTreeView v = root_at_wn(t);
    CHECK(v.left_count[v.root()] == shape.m);
    std::vector<std::size_t> count(shape.vertex_count(), 0);
    for (std::size_t i = 0; i < shape.m; ++i)
      for (std::size_t x = shape.left(i); x != RootedTreeView::kNoParent; x = v.parent[x]) ++count[x];
    CHECK(count == v.left_count);
    auto deg = right_degree_sequence(t);
    CHECK(std::accumulate(deg.begin(), deg.end(), std::size_t(0)) == t.size());
  }
}

TEST_CASE("cyc golden values") {
  const LabeledForest t0 = example_forests()[0];
  const auto rays = example_rays();
  CHECK(cyc(t0, edges({{1, 2}, {2, 1}})) == rays[0]);
  CHECK(cyc(t0, edges({{2, 3}, {3, 2}})) == rays[1]);
  CHECK(cyc(t0, edges({{1, 3}, {3, 1}})) == rays[2]);
  CHECK(cyc(t0, edges({{1, 2}, {2, 3}, {3, 1}})) == rays[3]);
  CHECK(cyc(t0, edges({{1, 3}, {2, 1}, {3, 2}})) == rays[4]);
}

TEST_CASE("cyc does not depend on the listing order of ee") {
  const LabeledForest t0 = example_forests()[0];
  CHECK(cyc(t0, edges({{3, 1}, {1, 2}, {2, 3}})) == example_rays()[3]);
  CHECK(cyc(t0, edges({{2, 1}, {1, 2}})) == example_rays()[0]);
}

TEST_CASE("cyc failure kinds") {
  const LabeledForest t0 = example_forests()[0];
  CHECK(failure_of(t0, edges({{1, 2}, {2, 2}})) == AugmentationFailure::EdgeInForest);
  CHECK(failure_of(t0, edges({{1, 2}})) == AugmentationFailure::NoCycle);
  CHECK(failure_of(t0, edges({{1, 2}, {2, 1}, {1, 3}, {3, 1}})) == AugmentationFailure::MultipleCycles);
  CHECK(failure_of(t0, edges({{1, 2}, {2, 1}, {1, 3}})) == AugmentationFailure::EdgeOffCycle);
  CHECK(failure_of(forest(2, 2, {{1, 1}}), edges({{1, 2}, {2, 2}, {2, 1}})) == AugmentationFailure::OddDistance);
}

TEST_CASE("augmentations of T_0 are the five rays") {
  auto augs = enumerate_augmentations(example_forests()[0]);
  REQUIRE(augs.size() == 5);
  std::vector<IntMatrix> got;
  for (const auto& a : augs) got.push_back(a.ray);
  CHECK(same_set(got, example_rays()));
}

TEST_CASE("augmentations of a spanning tree are single edges") {
  LabeledForest t = forest(3, 3, {{1, 1}, {1, 2}, {2, 2}, {3, 1}, {3, 3}});
  auto augs = enumerate_augmentations(t);
  CHECK(augs.size() == 4);
  for (const auto& a : augs) {
    REQUIRE(a.extra.size() == 1);
    CHECK(a.ray == cyc(t, a.extra));
  }
}

TEST_CASE("augmentations of T_6 match exhaustive search") {
  const LabeledForest t6 = example_forests()[6];
  auto augs = enumerate_augmentations(t6);
  auto expected = oracle_augmentations(t6);
  REQUIRE(augs.size() == expected.size());
  for (std::size_t k = 0; k < augs.size(); ++k) {
    CHECK(augs[k].extra == expected[k].first);
    CHECK(augs[k].ray == expected[k].second);
  }
}

TEST_CASE("augmentations match exhaustive search on random forests") {
  std::mt19937_64 rng(2024);
  for (int round = 0; round < 60; ++round) {
    BipartiteShape shape(1 + rng() % 4, 1 + rng() % 4);
    std::size_t size = rng() % shape.vertex_count();
    LabeledForest f = random_forest(rng, shape, size);
    if (shape.edge_count() - f.size() > 13) continue;
    auto augs = enumerate_augmentations(f);
    auto expected = oracle_augmentations(f);
    REQUIRE(augs.size() == expected.size());
    for (std::size_t k = 0; k < augs.size(); ++k) {
      CHECK(augs[k].extra == expected[k].first);
      CHECK(augs[k].ray == expected[k].second);
      CHECK(is_valid_ray(augs[k].ray));
      for (const auto& e : augs[k].extra) CHECK(augs[k].ray(e.i, e.j) == 1);
    }
    if (f.is_spanning_tree()) CHECK(augs.size() == shape.edge_count() - f.size());
  }
}

TEST_CASE("ray validity") {
  CHECK(is_valid_ray(imat({{-1, 1}, {1, -1}})));
  CHECK_FALSE(is_valid_ray(imat({{0, 0}, {0, 0}})));
  CHECK_FALSE(is_valid_ray(imat({{1, 1}, {1, -1}})));
  // Two disjoint 4-cycles have zero margins but are not a single cycle.
  CHECK_FALSE(is_valid_ray(imat({{1, -1, 0, 0}, {-1, 1, 0, 0}, {0, 0, 1, -1}, {0, 0, -1, 1}})));
}

TEST_CASE("unique cycle of a union") {
  const auto t = example_forests();
  CycleResult r01 = unique_cycle_of_union(t[0].graph(), t[1].graph());
  REQUIRE(r01.kind == CycleKind::Unique);
  CHECK(cyclic_equal(r01.cycle, edges({{1, 2}, {2, 2}, {2, 1}, {1, 1}})));
  CHECK(unique_cycle_of_union(t[0].graph(), t[6].graph()).kind == CycleKind::Multiple);
  CHECK(unique_cycle_of_union(t[0].graph(), t[0].graph()).kind == CycleKind::None);
}

TEST_CASE("forest JSON round trip") {
  LabeledForest t = forest(3, 3, {{1, 1}, {1, 2}, {2, 2}, {3, 1}, {3, 3}});
  Json j = forest_to_json(t);
  CHECK(j["m"] == 3);
  CHECK(j["edges"][0] == Json::array({1, 1}));
  CHECK(forest_from_json(j) == t);
}
