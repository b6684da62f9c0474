#pragma once

// Transportation polytopes T(r, c): nonnegative m x n matrices with row sums
// r and column sums c.

#include <optional>
#include <vector>

#include "transpoly/graph.hpp"
#include "transpoly/rational.hpp"

namespace transpoly {

class Margins {
 public:
  Margins() = default;
  /// Throws InvalidMargins unless all entries are positive and sums agree.
  Margins(std::vector<Rational> r, std::vector<Rational> c);

  const std::vector<Rational>& r() const { return r_; }
  const std::vector<Rational>& c() const { return c_; }
  std::size_t m() const { return r_.size(); }
  std::size_t n() const { return c_.size(); }
  BipartiteShape shape() const { return {m(), n()}; }
  Rational total() const;

  bool is_integral() const;
  bool is_central() const;
  Margins transposed() const { return Margins(c_, r_); }
  Margins dilated(const Rational& t) const;

  bool operator==(const Margins&) const = default;

 private:
  std::vector<Rational> r_;
  std::vector<Rational> c_;
};

Margins integer_margins(const std::vector<long>& r, const std::vector<long>& c);

using TransportMatrix = RationalMatrix;

/// True iff no proper nonempty I ⊂ [m], J ⊂ [n] have equal partial sums.
bool is_nondegenerate(const Margins& mar);

/// Definitional degeneracy test via explicit subset enumeration; kept as a
/// reference for `is_nondegenerate`.
bool is_nondegenerate_reference(const Margins& mar);

/// Support graph { e_ij : M(i,j) > 0 }.
Subgraph aux(const TransportMatrix& mat);

bool satisfies_margins(const TransportMatrix& mat, const Margins& mar);

enum class SolveStatus { Ok, Infeasible, NotUnique };

struct ForestSolution {
  SolveStatus status = SolveStatus::NotUnique;
  TransportMatrix matrix;  // meaningful only when status == Ok
};

/// The unique matrix supported on `forest` meeting the margins, by leaf
/// elimination. NotUnique when some component cannot balance its margins,
/// Infeasible when a forced entry is negative.
ForestSolution solve_on_forest(const Margins& mar, const LabeledForest& forest);

struct VertexRecord {
  TransportMatrix matrix;
  LabeledForest aux;
  bool degenerate = false;
};

VertexRecord make_vertex_record(const TransportMatrix& mat);

/// All vertices, sorted by matrix. Goes through the universal perturbation.
std::vector<VertexRecord> enumerate_vertices(const Margins& mar);

std::vector<RayMatrix> feasible_cone_rays(const VertexRecord& v);

class SameVertex : public Error {
 public:
  using Error::Error;
};

/// The connecting ray when u and v span an edge of the polytope.
std::optional<RayMatrix> adjacent(const VertexRecord& u, const VertexRecord& v);

}  // namespace transpoly
