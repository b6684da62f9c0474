#pragma once

// Central transportation polytopes of order kn x n with margins
// r = (a, ..., a), c = (ak, ..., ak). Their perturbed vertex trees are the
// spanning trees of K_{kn,n} with right degrees (k+1, ..., k+1, k), in
// bijection with (k-to-1 matching, rooted tree on the right vertices,
// branch choices in [k]^{n-1}).

#include <vector>

#include "transpoly/graph.hpp"
#include "transpoly/mgf.hpp"
#include "transpoly/polytope.hpp"

namespace transpoly {

struct CentralSpec {
  std::size_t k = 1;
  std::size_t n = 1;
  long a = 1;

  CentralSpec() = default;
  CentralSpec(std::size_t k_, std::size_t n_, long a_);

  std::size_t m() const { return k * n; }
  long b() const { return a * static_cast<long>(k); }
  BipartiteShape shape() const { return {m(), n}; }
  Margins margins() const;
};

/// Row i is matched to column `column_of_row[i]`; every column gets k rows.
struct MatchingMatrix {
  std::size_t k = 1;
  std::vector<std::size_t> column_of_row;

  std::size_t n() const { return column_of_row.size() / k; }
  IntMatrix matrix() const;
  bool valid() const;
  bool operator==(const MatchingMatrix&) const = default;
  auto operator<=>(const MatchingMatrix&) const = default;
};

/// Rooted tree on w_0..w_{n-1} with root w_{n-1}.
struct RootedRightTree {
  std::vector<std::size_t> parent;  // parent[n-1] == kNoParent

  static constexpr std::size_t kNoParent = static_cast<std::size_t>(-1);
  std::size_t n() const { return parent.size(); }
  bool valid() const;
  bool operator==(const RootedRightTree&) const = default;
  auto operator<=>(const RootedRightTree&) const = default;
};

/// f_j in [1, k] for each non-root right vertex j = 0..n-2.
struct BranchChoices {
  std::vector<std::size_t> f;
  bool operator==(const BranchChoices&) const = default;
  auto operator<=>(const BranchChoices&) const = default;
};

struct PhiPreimage {
  MatchingMatrix matching;
  RootedRightTree tree;
  BranchChoices branches;
  bool operator==(const PhiPreimage&) const = default;
};

std::vector<MatchingMatrix> enumerate_matchings(std::size_t k, std::size_t n);
/// All n^{n-2} rooted trees, decoded from Prüfer sequences.
std::vector<RootedRightTree> enumerate_rooted_trees(std::size_t n);
std::vector<BranchChoices> enumerate_branch_choices(std::size_t k, std::size_t n);

LabeledForest phi(const MatchingMatrix& matching, const RootedRightTree& tree, const BranchChoices& branches);

class NotInST : public Error {
 public:
  using Error::Error;
};

PhiPreimage phi_inverse(const LabeledForest& tree, std::size_t k);

bool in_st(const LabeledForest& tree, std::size_t k);

/// ST_{k,n} as the image of phi, sorted.
std::vector<LabeledForest> enumerate_st(std::size_t k, std::size_t n);

/// Affine matrix constant + t * slope.
struct AffineMatrix {
  IntMatrix constant;
  IntMatrix slope;
  RationalMatrix at(const Rational& t) const;
};

struct CentralVertex {
  AffineMatrix perturbed;  // M_T(t)
  IntMatrix limit;         // a * matching
  RationalMatrix at_t0;
};

/// Closed-form perturbed vertex for T in ST_{k,n}, evaluated at t0 = 1/(2m).
CentralVertex central_vertex(const LabeledForest& tree, const CentralSpec& spec);

MgfExpression central_mgf(const CentralSpec& spec);

struct CentralCounts {
  Integer vertices;      // (kn)! / (k!)^n
  Integer max_vertices;  // vertices * n^{n-2} * k^{n-1}
};

CentralCounts central_counts(std::size_t k, std::size_t n);

}  // namespace transpoly
