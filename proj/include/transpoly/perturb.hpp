#pragma once

// Universal perturbation r(t) = (r_i - t), c(t) = (c_1, ..., c_{n-1}, c_n - m t)
// for 0 < t < 1/(K m), K the lcm of all margin denominators. Every perturbed
// polytope is non-degenerate, its vertex trees do not depend on t, and each
// perturbed vertex converges to the unique base vertex whose support lies in
// its tree.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "transpoly/graph.hpp"
#include "transpoly/polytope.hpp"

namespace transpoly {

struct PerturbationSpec {
  Margins base;
  Integer K;
  Rational t0;

  Margins at(const Rational& t) const;
  Margins perturbed() const { return at(t0); }
  /// Upper end of the admissible open interval (0, 1/(K m)).
  Rational t_bound() const;
};

/// K = lcm of denominators, t0 = 1/(2 K m).
PerturbationSpec make_spec(const Margins& mar);
/// Same with an explicit t; throws Error unless 0 < t < 1/(K m).
PerturbationSpec make_spec(const Margins& mar, const Rational& t);

struct PerturbedVertex {
  RootedTreeView rooted;
  TransportMatrix matrix_at_t0;
  TransportMatrix limit;

  const LabeledForest& tree() const { return rooted.tree; }
};

class DegenerateMargins : public Error {
 public:
  using Error::Error;
};

struct PivotTree {
  LabeledForest tree;
  TransportMatrix matrix;
};

/// Vertex enumeration of a non-degenerate polytope by pivoting along cycle
/// rays from the northwest-corner vertex. Output sorted by tree.
/// Throws DegenerateMargins if a tie or a short basis shows up.
std::vector<PivotTree> pivot_enumerate(const Margins& mar);
/// Single-threaded reference for `pivot_enumerate`.
std::vector<PivotTree> pivot_enumerate_serial(const Margins& mar);

/// Northwest-corner starting basis.
PivotTree northwest_corner(const Margins& mar);

/// Limit of the perturbed vertex on `tree`: the 1/K-grid ceiling on edges
/// below a right vertex, the floor on edges below a left vertex.
TransportMatrix limit_vertex(const RootedTreeView& tree, const TransportMatrix& matrix_at_t0, const Integer& K);
TransportMatrix limit_vertex(const LabeledForest& tree, const PerturbationSpec& spec);

/// Rebuild M_T(t) from the limit and the subtree left counts.
TransportMatrix matrix_at(const RootedTreeView& tree, const TransportMatrix& limit, const Rational& t);

std::vector<PerturbedVertex> enumerate_perturbed_vertices(const PerturbationSpec& spec);

struct LimitGroup {
  VertexRecord vertex;
  std::vector<std::size_t> trees;  // indices into the perturbed vertex list
};

struct Grouping {
  std::vector<PerturbedVertex> perturbed;
  std::vector<LimitGroup> groups;  // sorted by vertex matrix
};

/// Partition of the perturbed trees by their limit vertex (the PertAux sets).
/// Throws InternalError when a tree contains zero or several base supports.
Grouping group_by_limit(const PerturbationSpec& spec);

class NotCentral : public Error {
 public:
  using Error::Error;
};

struct MaxVertexCheck {
  std::size_t perturbed_count = 0;
  std::optional<Integer> formula;  // only when m = k n
  bool matches = true;
};

MaxVertexCheck max_vertex_count_check(const PerturbationSpec& spec);

}  // namespace transpoly
