#pragma once

// Ehrhart polynomial and volume of an integral polytope from a unimodular
// MGF, by the Todd-polynomial residue formula. All arithmetic is exact.

#include <vector>

#include "transpoly/mgf.hpp"
#include "transpoly/rational.hpp"

namespace transpoly {

struct EhrhartPolynomial {
  std::vector<Rational> coeffs;  // coeffs[k] multiplies t^k
  std::size_t dim = 0;

  Rational operator()(const Rational& t) const;
  const Rational& leading() const { return coeffs.back(); }
  bool operator==(const EhrhartPolynomial&) const = default;
};

/// Coefficients b_k of x / (1 - e^{-x}) = sum b_k x^k, k = 0..degree.
std::vector<Rational> todd_series(std::size_t degree);

/// td_0..td_d at xs, d = xs.size(): coefficients of h^j in
/// prod_i xs_i h / (1 - e^{-xs_i h}).
std::vector<Rational> todd_values(const std::vector<Rational>& xs);
/// Same, truncated at degree `max_degree` instead of xs.size().
std::vector<Rational> todd_values(const std::vector<Rational>& xs, std::size_t max_degree);

struct DirectionVector {
  RationalMatrix c;
  long base = 0;  // B when built as c(i,j) = B^{i n + j}; 0 otherwise
};

class PoleDirection : public Error {
 public:
  using Error::Error;
};

class MixedDimension : public Error {
 public:
  using Error::Error;
};

class DirectionExhausted : public Error {
 public:
  using Error::Error;
};

DirectionVector moment_direction(const BipartiteShape& shape, long base);

/// First admissible moment direction over the primes 2, 3, 5, ... (25 tries).
/// `skip` admissible bases are passed over, which gives further directions.
DirectionVector pick_direction(const MgfExpression& expr, std::size_t skip = 0);

Rational pairing(const RationalMatrix& c, const IntMatrix& v);

EhrhartPolynomial ehrhart_from_mgf(const MgfExpression& expr, const DirectionVector& c);
EhrhartPolynomial ehrhart_from_mgf_serial(const MgfExpression& expr, const DirectionVector& c);

struct Volume {
  std::size_t dim = 0;
  Rational leading;     // leading Ehrhart coefficient
  Rational normalized;  // dim! * leading
};

Volume normalized_volume(const MgfExpression& expr, const DirectionVector& c);

}  // namespace transpoly
