#include <doctest.h>

#include <cmath>
#include <map>
#include <random>
#include <set>

#include "support.hpp"
#include "transpoly/central.hpp"
#include "transpoly/ehrhart.hpp"
#include "transpoly/perturb.hpp"

using namespace testing;

namespace {

// Spanning trees of K_{kn,n} with right degrees (k+1, ..., k+1, k), by
// filtering all edge subsets of size m + n - 1.
std::vector<LabeledForest> st_by_filter(std::size_t k, std::size_t n) {
  BipartiteShape shape(k * n, n);
  auto pool = all_edges(shape);
  const std::size_t size = shape.vertex_count() - 1;
  std::vector<std::size_t> expected(n, k + 1);
  expected.back() = k;
  std::vector<LabeledForest> out;
  std::vector<Edge> chosen;
  auto pick = [&](auto&& self, std::size_t from) -> void {
    if (chosen.size() == size) {
      Subgraph g(shape, chosen);
      if (g.is_spanning_tree() && right_degree_sequence(g) == expected) out.emplace_back(g);
      return;
    }
    for (std::size_t e = from; e + (size - chosen.size()) <= pool.size(); ++e) {
      chosen.push_back(pool[e]);
      self(self, e + 1);
      chosen.pop_back();
    }
  };
  pick(pick, 0);
  std::sort(out.begin(), out.end());
  return out;
}

Integer formula(std::size_t k, std::size_t n) { return central_counts(k, n).max_vertices; }

}  // namespace

TEST_CASE("central counts") {
  CHECK(central_counts(1, 3).vertices == 6);
  CHECK(central_counts(1, 3).max_vertices == 18);
  CHECK(central_counts(1, 4).vertices == 24);
  CHECK(central_counts(1, 4).max_vertices == 384);
  CHECK(central_counts(2, 2).vertices == 6);
  CHECK(central_counts(2, 2).max_vertices == 12);
  CHECK(central_counts(1, 1).max_vertices == 1);
}

TEST_CASE("ST sizes") {
  CHECK(enumerate_st(1, 3).size() == 18);
  CHECK(enumerate_st(2, 2).size() == 12);
  CHECK(enumerate_st(1, 2).size() == 2);
  for (auto [k, n] : std::vector<std::pair<std::size_t, std::size_t>>{{1, 1}, {1, 2}, {1, 3}, {1, 4}, {2, 1},
                                                                        {2, 2}, {2, 3}, {3, 2}})
    CHECK(Integer(enumerate_st(k, n).size()) == formula(k, n));
}

TEST_CASE("ST equals the filtered spanning trees") {
  for (auto [k, n] : std::vector<std::pair<std::size_t, std::size_t>>{{1, 2}, {1, 3}, {2, 2}, {3, 2}, {1, 4}}) {
    CAPTURE(k);
    CAPTURE(n);
    CHECK(enumerate_st(k, n) == st_by_filter(k, n));
  }
}

TEST_CASE("ST count for k = 2, n = 4") { CHECK(Integer(enumerate_st(2, 4).size()) == formula(2, 4)); }

TEST_CASE("rooted trees and matchings") {
  for (std::size_t n = 1; n <= 5; ++n) {
    auto trees = enumerate_rooted_trees(n);
    std::size_t expected = n == 1 ? 1 : static_cast<std::size_t>(std::pow(n, n - 2) + 0.5);
    CHECK(trees.size() == expected);
    CHECK(std::set<RootedRightTree>(trees.begin(), trees.end()).size() == trees.size());
    for (const auto& t : trees) CHECK(t.valid());
  }
  CHECK(enumerate_matchings(2, 2).size() == 6);
  CHECK(enumerate_matchings(1, 4).size() == 24);
  for (const auto& mm : enumerate_matchings(2, 3)) CHECK(mm.valid());
  CHECK(enumerate_branch_choices(2, 3).size() == 4);
}

TEST_CASE("phi on the smallest cases") {
  MatchingMatrix id{1, {0, 1}};
  RootedRightTree path{{1, RootedRightTree::kNoParent}};
  LabeledForest t = phi(id, path, BranchChoices{{1}});
  CHECK(t.size() == 3);
  CHECK(right_degree_sequence(t) == std::vector<std::size_t>{2, 1});

  MatchingMatrix two{2, {0, 0, 1, 1}};
  LabeledForest u = phi(two, path, BranchChoices{{1}});
  CHECK(u == forest(4, 2, {{1, 1}, {2, 1}, {3, 1}, {3, 2}, {4, 2}}));
  CHECK(right_degree_sequence(u) == std::vector<std::size_t>{3, 2});
  CHECK(phi(two, path, BranchChoices{{2}}) == forest(4, 2, {{1, 1}, {2, 1}, {4, 1}, {3, 2}, {4, 2}}));
}

TEST_CASE("phi is a bijection onto ST") {
  for (std::size_t k = 1; k <= 2; ++k)
    for (std::size_t n = 1; n <= 3; ++n) {
      std::set<LabeledForest> image;
      std::size_t domain = 0;
      for (const auto& mm : enumerate_matchings(k, n))
        for (const auto& r : enumerate_rooted_trees(n))
          for (const auto& f : enumerate_branch_choices(k, n)) {
            ++domain;
            LabeledForest t = phi(mm, r, f);
            CHECK(in_st(t, k));
            PhiPreimage back = phi_inverse(t, k);
            CHECK(back.matching == mm);
            CHECK(back.tree == r);
            CHECK(back.branches == f);
            image.insert(t);
          }
      CHECK(image.size() == domain);
      auto st = enumerate_st(k, n);
      CHECK(std::vector<LabeledForest>(image.begin(), image.end()) == st);
    }
}

TEST_CASE("phi inverse on the PertAux trees of the identity") {
  for (const auto& t : {forest(3, 3, {{1, 1}, {1, 2}, {2, 2}, {3, 1}, {3, 3}}),
                        forest(3, 3, {{1, 1}, {2, 1}, {2, 2}, {3, 2}, {3, 3}}),
                        forest(3, 3, {{1, 1}, {2, 2}, {3, 1}, {3, 2}, {3, 3}})}) {
    PhiPreimage p = phi_inverse(t, 1);
    CHECK(p.matching == MatchingMatrix{1, {0, 1, 2}});
    CHECK(p.branches.f == std::vector<std::size_t>{1, 1});
  }
}

TEST_CASE("phi inverse rejects wrong degree sequences") {
  CHECK_THROWS_AS(phi_inverse(forest(3, 3, {{1, 1}, {2, 1}, {3, 1}, {1, 2}, {2, 3}}), 1), NotInST);
  CHECK_FALSE(in_st(forest(3, 3, {{1, 1}, {2, 1}, {3, 1}, {1, 2}, {2, 3}}), 1));
  CHECK(in_st(forest(3, 3, {{1, 1}, {1, 2}, {2, 2}, {3, 1}, {3, 3}}), 1));
}

TEST_CASE("closed-form vertex on a B_3 tree") {
  CentralSpec spec(1, 3, 1);
  LabeledForest t = forest(3, 3, {{1, 1}, {1, 2}, {2, 2}, {3, 1}, {3, 3}});
  CentralVertex v = central_vertex(t, spec);
  const Rational t0(1, 6);
  CHECK(v.at_t0 == affine({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}, {{-2, 1, 0}, {0, -1, 0}, {2, 0, -3}}, t0));
  CHECK(v.limit == imat({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}));
  CHECK(v.perturbed.at(Rational(0)) == to_rational(v.limit));
}

TEST_CASE("closed-form vertices agree with the generic pipeline") {
  for (auto [k, n, a] : std::vector<std::tuple<std::size_t, std::size_t, long>>{{1, 3, 1}, {2, 2, 3}, {1, 4, 2}, {3, 2, 1}}) {
    CentralSpec spec(k, n, a);
    PerturbationSpec generic = make_spec(spec.margins());
    REQUIRE(generic.t0 == Rational(1, 2 * static_cast<long>(spec.m())));
    std::map<LabeledForest, RationalMatrix> expected;
    for (const auto& pv : enumerate_perturbed_vertices(generic)) expected[pv.tree()] = pv.matrix_at_t0;
    auto st = enumerate_st(k, n);
    CHECK(st.size() == expected.size());
    for (const auto& t : st) {
      CentralVertex v = central_vertex(t, spec);
      CHECK(v.at_t0 == expected.at(t));
      IntMatrix scaled = phi_inverse(t, k).matching.matrix();
      for (std::size_t i = 0; i < scaled.rows(); ++i)
        for (std::size_t j = 0; j < scaled.cols(); ++j) scaled(i, j) *= a;
      CHECK(v.limit == scaled);
      CHECK(satisfies_margins(v.at_t0, generic.perturbed()));
    }
  }
}

TEST_CASE("PertAux of every matching matrix has n^(n-2) k^(n-1) trees") {
  for (auto [k, n] : std::vector<std::pair<std::size_t, std::size_t>>{{1, 3}, {2, 2}, {2, 3}, {1, 4}}) {
    std::map<MatchingMatrix, std::size_t> sizes;
    for (const auto& t : enumerate_st(k, n)) ++sizes[phi_inverse(t, k).matching];
    CHECK(sizes.size() == enumerate_matchings(k, n).size());
    Integer per = formula(k, n) / central_counts(k, n).vertices;
    for (const auto& [mm, s] : sizes) CHECK(Integer(s) == per);
  }
}

TEST_CASE("central MGF") {
  MgfExpression b3 = central_mgf(CentralSpec(1, 3, 1));
  CHECK(b3.terms.size() == 18);
  std::map<IntMatrix, int> apexes;
  for (const auto& t : b3.terms) ++apexes[t.apex];
  CHECK(apexes.size() == 6);
  MgfExpression c22 = central_mgf(CentralSpec(2, 2, 1));
  CHECK(c22.terms.size() == 12);
  apexes.clear();
  for (const auto& t : c22.terms) ++apexes[t.apex];
  CHECK(apexes.size() == 6);
}

TEST_CASE("central and generic MGFs evaluate identically") {
  std::mt19937_64 rng(17);
  for (auto [k, n, a] : std::vector<std::tuple<std::size_t, std::size_t, long>>{{1, 2, 1}, {1, 3, 1}, {2, 2, 1}, {1, 3, 2}}) {
    CentralSpec spec(k, n, a);
    MgfExpression fast = central_mgf(spec);
    MgfExpression generic = polytope_mgf(spec.margins());
    CHECK(fast.terms.size() == generic.terms.size());
    for (int p = 0; p < 5; ++p) {
      RationalMatrix z = random_regular_point(generic, rng);
      CHECK(evaluate(fast, z) == evaluate(generic, z));
    }
  }
}

TEST_CASE("B_3 Ehrhart polynomial from the central MGF") {
  MgfExpression e = central_mgf(CentralSpec(1, 3, 1));
  EhrhartPolynomial p = ehrhart_from_mgf(e, pick_direction(e));
  CHECK(p.coeffs == std::vector<Rational>{Rational(1), Rational(9, 4), Rational(15, 8), Rational(3, 4), Rational(1, 8)});
  CHECK(normalized_volume(e, pick_direction(e)).normalized == 3);
}
