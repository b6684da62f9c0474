#include "transpoly/oracle.hpp"

#include <algorithm>
#include <set>

namespace transpoly {

namespace {

std::vector<long> as_longs(const std::vector<Rational>& xs) {
  std::vector<long> out;
  for (const auto& x : xs) {
    if (!is_integer(x) || !x.get_num().fits_slong_p()) throw NonIntegral("lattice enumeration needs integer margins");
    out.push_back(x.get_num().get_si());
  }
  return out;
}

// Fills cells row by row from (row, col) onwards.
class LatticeWalker {
 public:
  LatticeWalker(std::vector<long> r, std::vector<long> c, const std::function<void(const IntMatrix&)>& visit)
      : r_(std::move(r)), c_(std::move(c)), mat_(r_.size(), c_.size()), visit_(visit) {}

  void run(std::size_t row, std::size_t col) {
    const std::size_t m = r_.size(), n = c_.size();
    if (row + 1 == m) {  // last row is forced by the column budgets
      long s = 0;
      for (std::size_t j = 0; j < n; ++j) s += c_[j];
      if (s != r_[row]) return;
      for (std::size_t j = 0; j < n; ++j) mat_(row, j) = c_[j];
      visit_(mat_);
      return;
    }
    if (col + 1 == n) {  // last cell of a row is forced by the row budget
      long x = r_[row];
      if (x > c_[col]) return;
      mat_(row, col) = x;
      r_[row] -= x;
      c_[col] -= x;
      run(row + 1, 0);
      r_[row] += x;
      c_[col] += x;
      return;
    }
    long hi = std::min(r_[row], c_[col]);
    for (long x = 0; x <= hi; ++x) {
      mat_(row, col) = x;
      r_[row] -= x;
      c_[col] -= x;
      run(row, col + 1);
      r_[row] += x;
      c_[col] += x;
    }
  }

  std::vector<long>& r() { return r_; }
  std::vector<long>& c() { return c_; }
  IntMatrix& mat() { return mat_; }

 private:
  std::vector<long> r_;
  std::vector<long> c_;
  IntMatrix mat_;
  const std::function<void(const IntMatrix&)>& visit_;
};

// Nonnegative vectors summing to `total` with entry j <= caps[j].
void compositions(long total, const std::vector<long>& caps, std::size_t j, std::vector<long>& cur,
                  std::vector<std::vector<long>>& out) {
  if (j + 1 == caps.size()) {
    if (total <= caps[j]) {
      cur[j] = total;
      out.push_back(cur);
    }
    return;
  }
  for (long x = 0; x <= std::min(total, caps[j]); ++x) {
    cur[j] = x;
    compositions(total - x, caps, j + 1, cur, out);
  }
}

}  // namespace

void for_each_lattice_point(const Margins& mar, const std::function<void(const IntMatrix&)>& visit) {
  LatticeWalker walker(as_longs(mar.r()), as_longs(mar.c()), visit);
  walker.run(0, 0);
}

std::vector<IntMatrix> brute_lattice_points(const Margins& mar) {
  std::vector<IntMatrix> out;
  for_each_lattice_point(mar, [&](const IntMatrix& x) { out.push_back(x); });
  return out;
}

Integer count_lattice_points_serial(const Margins& mar) {
  Integer count = 0;
  for_each_lattice_point(mar, [&](const IntMatrix&) { ++count; });
  return count;
}

Integer count_lattice_points(const Margins& mar) {
  const auto r = as_longs(mar.r());
  const auto c = as_longs(mar.c());
  if (r.size() == 1) return 1;
  std::vector<std::vector<long>> first_rows;
  std::vector<long> cur(c.size());
  compositions(r[0], c, 0, cur, first_rows);

  const auto count = static_cast<std::ptrdiff_t>(first_rows.size());
  std::vector<Integer> partial(first_rows.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t k = 0; k < count; ++k) {
    Integer local = 0;
    std::function<void(const IntMatrix&)> tally = [&](const IntMatrix&) { ++local; };
    std::vector<long> rest_c = c;
    for (std::size_t j = 0; j < c.size(); ++j) rest_c[j] -= first_rows[k][j];
    LatticeWalker walker(std::vector<long>(r.begin() + 1, r.end()), rest_c, tally);
    walker.run(0, 0);
    partial[k] = local;
  }
  Integer total = 0;
  for (const auto& p : partial) total += p;
  return total;
}

Rational lattice_monomial_sum(const Margins& mar, const RationalMatrix& point) {
  Rational sum = 0;
  for_each_lattice_point(mar, [&](const IntMatrix& x) {
    Rational term = 1;
    for (std::size_t i = 0; i < x.rows(); ++i)
      for (std::size_t j = 0; j < x.cols(); ++j)
        if (x(i, j) != 0) term *= pow(point(i, j), x(i, j));
    sum += term;
  });
  return sum;
}

std::vector<TransportMatrix> brute_vertices(const Margins& mar) {
  const BipartiteShape shape = mar.shape();
  if (shape.edge_count() > 16) throw Error("brute-force vertex enumeration limited to m n <= 16");
  const std::vector<Edge> edges = all_edges(shape);
  std::set<TransportMatrix> found;
  std::vector<Edge> chosen;
  std::vector<std::size_t> root(shape.vertex_count());

  auto find = [&](std::size_t x) {
    while (root[x] != x) x = root[x];
    return x;
  };
  auto search = [&](auto&& self, std::size_t next) -> void {
    ForestSolution sol = solve_on_forest(mar, LabeledForest(shape, chosen));
    if (sol.status == SolveStatus::Ok) found.insert(std::move(sol.matrix));
    for (std::size_t k = next; k < edges.size(); ++k) {
      std::size_t a = find(shape.left(edges[k].i)), b = find(shape.right(edges[k].j));
      if (a == b) continue;
      root[b] = a;
      chosen.push_back(edges[k]);
      self(self, k + 1);
      chosen.pop_back();
      root[b] = b;
    }
  };
  for (std::size_t v = 0; v < root.size(); ++v) root[v] = v;
  search(search, 0);
  return {found.begin(), found.end()};
}

EhrhartPolynomial interpolate(const CountTable& table, std::size_t d) {
  if (table.size() < d + 1) throw Error("interpolation needs at least d + 1 points");
  const std::size_t size = d + 1;
  // Vandermonde system, exact Gauss-Jordan elimination.
  std::vector<std::vector<Rational>> a(size, std::vector<Rational>(size + 1));
  for (std::size_t row = 0; row < size; ++row) {
    Rational power = 1;
    for (std::size_t col = 0; col < size; ++col) {
      a[row][col] = power;
      power *= table[row].first;
    }
    a[row][size] = table[row].second;
  }
  for (std::size_t col = 0; col < size; ++col) {
    std::size_t pivot = col;
    while (pivot < size && a[pivot][col] == 0) ++pivot;
    if (pivot == size) throw Error("interpolation nodes are not distinct");
    std::swap(a[col], a[pivot]);
    Rational inv = 1 / a[col][col];
    for (auto& x : a[col]) x *= inv;
    for (std::size_t row = 0; row < size; ++row) {
      if (row == col || a[row][col] == 0) continue;
      Rational f = a[row][col];
      for (std::size_t k = col; k <= size; ++k) a[row][k] -= f * a[col][k];
    }
  }
  EhrhartPolynomial poly{std::vector<Rational>(size), d};
  for (std::size_t k = 0; k < size; ++k) poly.coeffs[k] = a[k][size];
  for (std::size_t row = size; row < table.size(); ++row)
    if (poly(Rational(table[row].first)) != table[row].second)
      throw InconsistentTable("point t = " + std::to_string(table[row].first) + " is off the interpolant");
  return poly;
}

CountTable lattice_count_table(const Margins& mar, long t_max) {
  CountTable table{{0, Rational(1)}};
  for (long t = 1; t <= t_max; ++t) table.push_back({t, Rational(count_lattice_points(mar.dilated(t)))});
  return table;
}

}  // namespace transpoly
