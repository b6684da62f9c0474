#pragma once

// Combinatorics of the complete bipartite graph K_{m,n}: left vertices
// u_0..u_{m-1}, right vertices w_0..w_{n-1}. Indices are 0-based in code
// and 1-based in every serialized form.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "transpoly/error.hpp"
#include "transpoly/rational.hpp"

namespace transpoly {

struct BipartiteShape {
  std::size_t m = 0;
  std::size_t n = 0;

  BipartiteShape() = default;
  BipartiteShape(std::size_t m_, std::size_t n_);

  std::size_t vertex_count() const { return m + n; }
  std::size_t edge_count() const { return m * n; }
  // Vertex ids: u_i -> i, w_j -> m + j.
  std::size_t left(std::size_t i) const { return i; }
  std::size_t right(std::size_t j) const { return m + j; }
  bool is_left(std::size_t v) const { return v < m; }

  bool operator==(const BipartiteShape&) const = default;
};

struct Edge {
  std::size_t i = 0;
  std::size_t j = 0;

  // Canonical order is (j, i).
  friend bool operator<(const Edge& a, const Edge& b) {
    return a.j != b.j ? a.j < b.j : a.i < b.i;
  }
  friend bool operator==(const Edge&, const Edge&) = default;
};

/// All edges of K_{m,n} in canonical order.
std::vector<Edge> all_edges(const BipartiteShape& shape);

/// An arbitrary subgraph of K_{m,n} on the full vertex set. Edges are kept
/// sorted and unique.
class Subgraph {
 public:
  Subgraph() = default;
  Subgraph(BipartiteShape shape, std::vector<Edge> edges);

  const BipartiteShape& shape() const { return shape_; }
  const std::vector<Edge>& edges() const { return edges_; }
  std::size_t size() const { return edges_.size(); }
  bool contains(const Edge& e) const;
  bool contains(const Subgraph& other) const;

  /// Number of independent cycles: |E| - |V| + #components.
  std::size_t cyclomatic_number() const;
  std::size_t component_count() const;
  bool is_forest() const { return cyclomatic_number() == 0; }
  bool is_spanning_tree() const { return is_forest() && edges_.size() + 1 == shape_.vertex_count(); }

  bool operator==(const Subgraph&) const = default;
  bool operator<(const Subgraph& o) const { return edges_ < o.edges_; }

 private:
  BipartiteShape shape_;
  std::vector<Edge> edges_;
};

class NotAForest : public Error {
 public:
  using Error::Error;
};

class NotSpanningTree : public Error {
 public:
  using Error::Error;
};

/// Subgraph known to be acyclic.
class LabeledForest {
 public:
  LabeledForest() = default;
  /// Throws NotAForest when `g` has a cycle.
  explicit LabeledForest(Subgraph g);
  LabeledForest(BipartiteShape shape, std::vector<Edge> edges)
      : LabeledForest(Subgraph(shape, std::move(edges))) {}

  const Subgraph& graph() const { return graph_; }
  const BipartiteShape& shape() const { return graph_.shape(); }
  const std::vector<Edge>& edges() const { return graph_.edges(); }
  std::size_t size() const { return graph_.size(); }
  bool contains(const Edge& e) const { return graph_.contains(e); }
  bool is_spanning_tree() const { return graph_.size() + 1 == shape().vertex_count(); }

  /// Component id per vertex (ids dense from 0, in order of first vertex).
  std::vector<std::size_t> components() const;

  bool operator==(const LabeledForest&) const = default;
  bool operator<(const LabeledForest& o) const { return graph_ < o.graph_; }

 private:
  Subgraph graph_;
};

std::vector<std::size_t> right_degree_sequence(const Subgraph& g);
inline std::vector<std::size_t> right_degree_sequence(const LabeledForest& f) {
  return right_degree_sequence(f.graph());
}

/// A spanning tree oriented towards w_{n-1}.
struct RootedTreeView {
  static constexpr std::size_t kNoParent = static_cast<std::size_t>(-1);

  LabeledForest tree;
  std::vector<std::size_t> parent;      // per vertex id; kNoParent at the root
  std::vector<std::size_t> left_count;  // number of u's in the subtree of each vertex
  std::vector<std::vector<std::size_t>> children;  // ascending vertex id

  std::size_t root() const { return tree.shape().right(tree.shape().n - 1); }
  /// True when w_j is the parent of u_i, i.e. the edge hangs below a right vertex.
  bool right_is_parent(const Edge& e) const {
    return parent[tree.shape().left(e.i)] == tree.shape().right(e.j);
  }
};

RootedTreeView root_at_wn(const LabeledForest& tree);

using RayMatrix = IntMatrix;

enum class AugmentationFailure {
  EdgeInForest,    // some edge of ee already belongs to T
  NoCycle,
  MultipleCycles,
  EdgeOffCycle,    // an edge of ee is not on the unique cycle
  OddDistance,     // two edges of ee at odd distance along the cycle
};

class InvalidAugmentation : public Error {
 public:
  InvalidAugmentation(AugmentationFailure why, const std::string& what) : Error(what), why_(why) {}
  AugmentationFailure why() const { return why_; }

 private:
  AugmentationFailure why_;
};

/// The signed cycle matrix of T ∪ ee: +1 on edges traversed from a left to a
/// right vertex, -1 on the others, oriented so every edge of ee carries +1.
RayMatrix cyc(const LabeledForest& tree, const std::vector<Edge>& extra);

struct Augmentation {
  std::vector<Edge> extra;
  RayMatrix ray;
};

/// Every edge set ee for which cyc(tree, ee) is defined, ordered by ee.
std::vector<Augmentation> enumerate_augmentations(const LabeledForest& tree);

enum class CycleKind { None, Unique, Multiple };

struct CycleResult {
  CycleKind kind = CycleKind::None;
  std::vector<Edge> cycle;  // consecutive edges of the cycle when kind == Unique
};

CycleResult unique_cycle_of_union(const Subgraph& a, const Subgraph& b);

/// Zero row and column sums, entries in {-1,0,1}, support a single cycle.
bool is_valid_ray(const RayMatrix& ray);

}  // namespace transpoly
