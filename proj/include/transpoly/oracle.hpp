#pragma once

// Brute-force ground truth, independent of the perturbation machinery:
// lattice points by bounded recursion, vertices by exhaustive forest
// enumeration, and exact polynomial interpolation.

#include <functional>
#include <utility>
#include <vector>

#include "transpoly/ehrhart.hpp"
#include "transpoly/polytope.hpp"

namespace transpoly {

/// Calls `visit` on every nonnegative integer matrix with the given margins.
void for_each_lattice_point(const Margins& mar, const std::function<void(const IntMatrix&)>& visit);

std::vector<IntMatrix> brute_lattice_points(const Margins& mar);

/// Number of lattice points, parallel over first-row compositions.
Integer count_lattice_points(const Margins& mar);
Integer count_lattice_points_serial(const Margins& mar);

/// sum over lattice points alpha of point^alpha.
Rational lattice_monomial_sum(const Margins& mar, const RationalMatrix& point);

/// Solve on every acyclic edge subset of K_{m,n}; keep nonnegative
/// solutions. Sorted by matrix. Limited to m n <= 16.
std::vector<TransportMatrix> brute_vertices(const Margins& mar);

using CountTable = std::vector<std::pair<long, Rational>>;

class InconsistentTable : public Error {
 public:
  using Error::Error;
};

/// Degree <= d interpolant through the first d+1 points; remaining points
/// must lie on it.
EhrhartPolynomial interpolate(const CountTable& table, std::size_t d);

/// Lattice counts of t * P for t = 0..t_max (t = 0 counts the origin).
CountTable lattice_count_table(const Margins& mar, long t_max);

}  // namespace transpoly
