#pragma once

#include <initializer_list>
#include <random>
#include <vector>

#include "transpoly/graph.hpp"
#include "transpoly/polytope.hpp"
#include "transpoly/rational.hpp"

namespace testing {

using namespace transpoly;

inline IntMatrix imat(std::initializer_list<std::initializer_list<long>> rows) {
  std::vector<std::int64_t> data;
  std::size_t cols = rows.begin()->size();
  for (const auto& r : rows) data.insert(data.end(), r.begin(), r.end());
  return IntMatrix(rows.size(), cols, data);
}

inline RationalMatrix rmat(std::initializer_list<std::initializer_list<long>> rows) { return to_rational(imat(rows)); }

// constant + t * slope, for the perturbed-vertex table.
inline RationalMatrix affine(std::initializer_list<std::initializer_list<long>> constant,
                             std::initializer_list<std::initializer_list<long>> slope, const Rational& t) {
  RationalMatrix out = rmat(constant);
  IntMatrix s = imat(slope);
  for (std::size_t i = 0; i < out.rows(); ++i)
    for (std::size_t j = 0; j < out.cols(); ++j) out(i, j) += t * s(i, j);
  return out;
}

// 1-based {i, j} pairs.
inline std::vector<Edge> edges(std::initializer_list<std::pair<std::size_t, std::size_t>> list) {
  std::vector<Edge> out;
  for (auto [i, j] : list) out.push_back(Edge{i - 1, j - 1});
  return out;
}

inline LabeledForest forest(std::size_t m, std::size_t n,
                            std::initializer_list<std::pair<std::size_t, std::size_t>> list) {
  return LabeledForest(BipartiteShape(m, n), edges(list));
}

inline Subgraph subgraph(std::size_t m, std::size_t n, std::initializer_list<std::pair<std::size_t, std::size_t>> list) {
  return Subgraph(BipartiteShape(m, n), edges(list));
}

// The running example r = c = (1, 1, 2).
inline Margins example_margins() { return integer_margins({1, 1, 2}, {1, 1, 2}); }

inline std::vector<RationalMatrix> example_vertices() {
  return {
      rmat({{1, 0, 0}, {0, 1, 0}, {0, 0, 2}}), rmat({{0, 1, 0}, {1, 0, 0}, {0, 0, 2}}),
      rmat({{1, 0, 0}, {0, 0, 1}, {0, 1, 1}}), rmat({{0, 0, 1}, {0, 1, 0}, {1, 0, 1}}),
      rmat({{0, 1, 0}, {0, 0, 1}, {1, 0, 1}}), rmat({{0, 0, 1}, {1, 0, 0}, {0, 1, 1}}),
      rmat({{0, 0, 1}, {0, 0, 1}, {1, 1, 0}}),
  };
}

inline std::vector<LabeledForest> example_forests() {
  return {
      forest(3, 3, {{1, 1}, {2, 2}, {3, 3}}),         forest(3, 3, {{1, 2}, {2, 1}, {3, 3}}),
      forest(3, 3, {{1, 1}, {2, 3}, {3, 2}, {3, 3}}), forest(3, 3, {{1, 3}, {2, 2}, {3, 1}, {3, 3}}),
      forest(3, 3, {{1, 2}, {2, 3}, {3, 1}, {3, 3}}), forest(3, 3, {{1, 3}, {2, 1}, {3, 2}, {3, 3}}),
      forest(3, 3, {{1, 3}, {2, 3}, {3, 1}, {3, 2}}),
  };
}

// Rays R_1..R_5 of the feasible cone at M_0.
inline std::vector<IntMatrix> example_rays() {
  return {
      imat({{-1, 1, 0}, {1, -1, 0}, {0, 0, 0}}),  imat({{0, 0, 0}, {0, -1, 1}, {0, 1, -1}}),
      imat({{-1, 0, 1}, {0, 0, 0}, {1, 0, -1}}),  imat({{-1, 1, 0}, {0, -1, 1}, {1, 0, -1}}),
      imat({{-1, 0, 1}, {1, -1, 0}, {0, 1, -1}}),
  };
}

// Random integral margins with entries in [1, max_entry]; retries until the
// column vector fits.
inline Margins random_margins(std::mt19937_64& rng, std::size_t m, std::size_t n, long max_entry) {
  std::uniform_int_distribution<long> pick(1, max_entry);
  for (;;) {
    std::vector<long> r(m), c(n);
    long total = 0;
    for (auto& x : r) total += (x = pick(rng));
    long left = total;
    bool ok = true;
    for (std::size_t j = 0; j + 1 < n; ++j) {
      long lo = std::max(1L, left - max_entry * static_cast<long>(n - 1 - j));
      long hi = std::min(max_entry, left - static_cast<long>(n - 1 - j));
      if (lo > hi) {
        ok = false;
        break;
      }
      c[j] = std::uniform_int_distribution<long>(lo, hi)(rng);
      left -= c[j];
    }
    if (!ok || left < 1 || left > max_entry) continue;
    c[n - 1] = left;
    return integer_margins(r, c);
  }
}

// Rational margins read off a random positive matrix with denominators 1..3.
inline Margins random_rational_margins(std::mt19937_64& rng, std::size_t m, std::size_t n) {
  std::uniform_int_distribution<long> num(1, 4), den(1, 3);
  std::vector<Rational> r(m, Rational(0)), c(n, Rational(0));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Rational x(num(rng), den(rng));
      x.canonicalize();
      r[i] += x;
      c[j] += x;
    }
  return Margins(r, c);
}

template <class T>
bool same_set(std::vector<T> a, std::vector<T> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  return a == b;
}

}  // namespace testing
