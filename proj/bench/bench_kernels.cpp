// Serial reference vs OpenMP kernels on a few fixed inputs.
#include <omp.h>

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>

#include "transpoly/central.hpp"
#include "transpoly/ehrhart.hpp"
#include "transpoly/mgf.hpp"
#include "transpoly/oracle.hpp"
#include "transpoly/perturb.hpp"

using namespace transpoly;

namespace {

double seconds(const std::function<void()>& f, int reps) {
  auto start = std::chrono::steady_clock::now();
  for (int k = 0; k < reps; ++k) f();
  std::chrono::duration<double> d = std::chrono::steady_clock::now() - start;
  return d.count() / reps;
}

void row(const char* name, double serial, double parallel) {
  std::printf("%-28s %12.6f %12.6f %8.2fx\n", name, serial, parallel, parallel > 0 ? serial / parallel : 0.0);
}

}  // namespace

int main() {
  std::printf("threads: %d\n", omp_get_max_threads());
  std::printf("%-28s %12s %12s %9s\n", "kernel", "serial [s]", "parallel [s]", "speedup");

  Margins generic = make_spec(integer_margins({3, 3, 2, 2}, {4, 3, 3})).perturbed();
  row("pivot_enumerate 4x3", seconds([&] { pivot_enumerate_serial(generic); }, 20),
      seconds([&] { pivot_enumerate(generic); }, 20));

  MgfExpression expr = central_mgf(CentralSpec(2, 3, 1));
  std::mt19937_64 rng(7);
  RationalMatrix point = random_regular_point(expr, rng);
  row("evaluate central(2,3)", seconds([&] { evaluate_serial(expr, point); }, 5),
      seconds([&] { evaluate(expr, point); }, 5));

  DirectionVector dir = pick_direction(expr);
  row("ehrhart central(2,3)", seconds([&] { ehrhart_from_mgf_serial(expr, dir); }, 3),
      seconds([&] { ehrhart_from_mgf(expr, dir); }, 3));

  Margins big = integer_margins({12, 10, 9, 8}, {14, 13, 12});
  row("count_lattice_points 4x3", seconds([&] { count_lattice_points_serial(big); }, 3),
      seconds([&] { count_lattice_points(big); }, 3));
  return 0;
}
