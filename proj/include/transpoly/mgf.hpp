#pragma once

// Multivariate generating functions kept as formal sums
//   sum_i sign_i * z^{apex_i} / prod_j (1 - z^{ray_ij})
// over unimodular cones. z^V means prod z_ij^{V(i,j)}.

#include <random>
#include <string>
#include <vector>

#include "transpoly/graph.hpp"
#include "transpoly/polytope.hpp"
#include "transpoly/rational.hpp"

namespace transpoly {

struct PerturbationSpec;

using ExponentMatrix = IntMatrix;

struct MgfTerm {
  int sign = 1;
  ExponentMatrix apex;
  std::vector<ExponentMatrix> rays;
};

struct MgfExpression {
  BipartiteShape shape;
  std::vector<MgfTerm> terms;
};

class DegeneratePolytope : public Error {
 public:
  using Error::Error;
};

class PoleAt : public Error {
 public:
  PoleAt(std::size_t term, std::size_t ray)
      : Error("evaluation point is a pole: term " + std::to_string(term) + ", ray " + std::to_string(ray)),
        term_(term),
        ray_(ray) {}
  std::size_t term() const { return term_; }
  std::size_t ray() const { return ray_; }

 private:
  std::size_t term_;
  std::size_t ray_;
};

/// prod_i 1 / (1 - z^{r_i}) with apex 0 and sign +1.
MgfTerm unimodular_cone_mgf(const BipartiteShape& shape, std::vector<RayMatrix> rays);

/// One term per vertex; requires non-degenerate integral margins.
MgfExpression polytope_mgf_nondegenerate(const Margins& mar);

/// One term per perturbed vertex tree; any integral margins.
MgfExpression polytope_mgf(const Margins& mar);

/// Feasible cone at `v` as a sum over the trees converging to it.
MgfExpression feasible_cone_mgf(const VertexRecord& v, const PerturbationSpec& spec);

/// Exact value at a point with nonzero entries. Throws PoleAt.
Rational evaluate(const MgfExpression& expr, const RationalMatrix& point);
Rational evaluate_serial(const MgfExpression& expr, const RationalMatrix& point);

/// z^V for a single exponent matrix.
Rational monomial(const RationalMatrix& point, const ExponentMatrix& exponent);

/// Random point with entries +-p/q, 1 <= p, q <= 9, never 1 or -1.
RationalMatrix random_point(const BipartiteShape& shape, std::mt19937_64& rng);

/// Draw points until one avoids every pole; gives up after 100 draws.
RationalMatrix random_regular_point(const MgfExpression& expr, std::mt19937_64& rng);

MgfExpression dilate(const MgfExpression& expr, long t);

/// Human-readable layout, one term per line.
std::string pretty_print(const MgfExpression& expr);

}  // namespace transpoly
