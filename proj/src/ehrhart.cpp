#include "transpoly/ehrhart.hpp"

namespace transpoly {

namespace {

// Bernoulli numbers with B_1 = -1/2, from sum_{j<=k} C(k+1, j) B_j = 0.
std::vector<Rational> bernoulli(std::size_t count) {
  std::vector<Rational> b(count + 1);
  b[0] = 1;
  for (std::size_t k = 1; k <= count; ++k) {
    Rational s = 0;
    Integer binom = 1;  // C(k+1, j)
    for (std::size_t j = 0; j < k; ++j) {
      s += Rational(binom) * b[j];
      binom = binom * static_cast<unsigned long>(k + 1 - j) / static_cast<unsigned long>(j + 1);
    }
    b[k] = -s / Rational(static_cast<long>(k + 1));
  }
  return b;
}

constexpr long kPrimes[] = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37, 41,
                            43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97};

std::size_t common_dimension(const MgfExpression& expr) {
  if (expr.terms.empty()) throw Error("empty generating function");
  std::size_t d = expr.terms.front().rays.size();
  for (const auto& term : expr.terms)
    if (term.rays.size() != d) throw MixedDimension("terms have different ray counts");
  return d;
}

bool admissible(const MgfExpression& expr, const RationalMatrix& c) {
  for (const auto& term : expr.terms)
    for (const auto& ray : term.rays)
      if (pairing(c, ray) == 0) return false;
  return true;
}

struct TermPairings {
  Rational apex;  // -<c, v>: the residue is taken at z = exp(-s c)
  std::vector<Rational> rays;
  Rational ray_product;
};

TermPairings pair_term(const MgfTerm& term, const RationalMatrix& c) {
  TermPairings p;
  p.apex = -pairing(c, term.apex);
  p.ray_product = 1;
  for (const auto& ray : term.rays) {
    Rational x = pairing(c, ray);
    if (x == 0) throw PoleDirection("direction is orthogonal to a ray");
    p.ray_product *= x;
    p.rays.push_back(std::move(x));
  }
  return p;
}

// sign * sum_k apex^k td_{d-k} / (k! prod rays) t^k for one term.
std::vector<Rational> term_coefficients(const MgfTerm& term, const RationalMatrix& c, std::size_t d) {
  TermPairings p = pair_term(term, c);
  std::vector<Rational> td = todd_values(p.rays, d);
  std::vector<Rational> out(d + 1);
  Rational power = 1;
  for (std::size_t k = 0; k <= d; ++k) {
    out[k] = power * td[d - k] / (p.ray_product * Rational(factorial(static_cast<unsigned>(k))));
    if (term.sign < 0) out[k] = -out[k];
    power *= p.apex;
  }
  return out;
}

}  // namespace

Rational EhrhartPolynomial::operator()(const Rational& t) const {
  Rational v = 0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) v = v * t + *it;
  return v;
}

std::vector<Rational> todd_series(std::size_t degree) {
  std::vector<Rational> b = bernoulli(degree);
  std::vector<Rational> out(degree + 1);
  for (std::size_t k = 0; k <= degree; ++k) {
    out[k] = b[k] / Rational(factorial(static_cast<unsigned>(k)));
    if (k % 2 == 1) out[k] = -out[k];
  }
  return out;
}

std::vector<Rational> todd_values(const std::vector<Rational>& xs) { return todd_values(xs, xs.size()); }

std::vector<Rational> todd_values(const std::vector<Rational>& xs, std::size_t max_degree) {
  const std::vector<Rational> series = todd_series(max_degree);
  std::vector<Rational> acc(max_degree + 1);
  acc[0] = 1;
  std::vector<Rational> factor(max_degree + 1);
  for (const auto& x : xs) {
    Rational power = 1;
    for (std::size_t k = 0; k <= max_degree; ++k) {
      factor[k] = series[k] * power;
      power *= x;
    }
    for (std::size_t deg = max_degree + 1; deg-- > 0;) {
      Rational s = 0;
      for (std::size_t k = 0; k <= deg; ++k)
        if (factor[k] != 0) s += acc[deg - k] * factor[k];
      acc[deg] = s;
    }
  }
  return acc;
}

Rational pairing(const RationalMatrix& c, const IntMatrix& v) {
  Rational s = 0;
  for (std::size_t i = 0; i < v.rows(); ++i)
    for (std::size_t j = 0; j < v.cols(); ++j)
      if (v(i, j) != 0) s += c(i, j) * Rational(static_cast<long>(v(i, j)));
  return s;
}

DirectionVector moment_direction(const BipartiteShape& shape, long base) {
  DirectionVector dir{RationalMatrix(shape.m, shape.n), base};
  Integer power = 1;
  for (std::size_t i = 0; i < shape.m; ++i)
    for (std::size_t j = 0; j < shape.n; ++j) {
      dir.c(i, j) = Rational(power);
      power *= base;
    }
  return dir;
}

DirectionVector pick_direction(const MgfExpression& expr, std::size_t skip) {
  for (long base : kPrimes) {
    DirectionVector dir = moment_direction(expr.shape, base);
    if (!admissible(expr, dir.c)) continue;
    if (skip == 0) return dir;
    --skip;
  }
  throw DirectionExhausted("no admissible moment direction among the first 25 primes");
}

EhrhartPolynomial ehrhart_from_mgf_serial(const MgfExpression& expr, const DirectionVector& c) {
  const std::size_t d = common_dimension(expr);
  EhrhartPolynomial poly{std::vector<Rational>(d + 1), d};
  for (const auto& term : expr.terms) {
    auto part = term_coefficients(term, c.c, d);
    for (std::size_t k = 0; k <= d; ++k) poly.coeffs[k] += part[k];
  }
  return poly;
}

EhrhartPolynomial ehrhart_from_mgf(const MgfExpression& expr, const DirectionVector& c) {
  const std::size_t d = common_dimension(expr);
  const auto count = static_cast<std::ptrdiff_t>(expr.terms.size());
  std::vector<std::vector<Rational>> parts(expr.terms.size());
  std::vector<char> failed(expr.terms.size(), 0);
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t k = 0; k < count; ++k) {
    try {
      parts[k] = term_coefficients(expr.terms[k], c.c, d);
    } catch (const PoleDirection&) {
      failed[k] = 1;
    }
  }
  for (char f : failed)
    if (f) throw PoleDirection("direction is orthogonal to a ray");
  EhrhartPolynomial poly{std::vector<Rational>(d + 1), d};
  for (const auto& part : parts)
    for (std::size_t k = 0; k <= d; ++k) poly.coeffs[k] += part[k];
  return poly;
}

Volume normalized_volume(const MgfExpression& expr, const DirectionVector& c) {
  const std::size_t d = common_dimension(expr);
  Rational sum = 0;
  for (const auto& term : expr.terms) {
    TermPairings p = pair_term(term, c.c);
    Rational v = pow(p.apex, static_cast<std::int64_t>(d)) / p.ray_product;
    sum += term.sign < 0 ? Rational(-v) : v;
  }
  Rational fact(factorial(static_cast<unsigned>(d)));
  return {d, sum / fact, sum};
}

}  // namespace transpoly
