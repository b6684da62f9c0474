#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "transpoly/error.hpp"

namespace transpoly {

using Rational = mpq_class;
using Integer = mpz_class;

/// Parses "p/q" or "p" (optional sign on p). Throws ParseError.
Rational parse_rational(std::string_view text);

/// Always "p/q" with q > 0 and gcd(p, q) = 1, integers included ("2/1").
std::string format_rational(const Rational& x);

Integer floor(const Rational& x);
Integer ceil(const Rational& x);

/// base^exp, exp may be negative (base must then be nonzero).
Rational pow(const Rational& base, std::int64_t exp);

Integer factorial(unsigned n);
Integer lcm_of_denominators(const std::vector<Rational>& xs);

inline bool is_integer(const Rational& x) { return x.get_den() == 1; }

// Dense row-major matrix. Used for transport matrices (Rational) and
// exponent/ray matrices (int64).
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<T> data)
      : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows_ * cols_) throw Error("matrix data size mismatch");
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  const std::vector<T>& data() const { return data_; }

  bool operator==(const Matrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
  }
  bool operator<(const Matrix& o) const {
    if (rows_ != o.rows_) return rows_ < o.rows_;
    if (cols_ != o.cols_) return cols_ < o.cols_;
    return std::lexicographical_compare(data_.begin(), data_.end(), o.data_.begin(), o.data_.end());
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using RationalMatrix = Matrix<Rational>;
using IntMatrix = Matrix<std::int64_t>;

RationalMatrix to_rational(const IntMatrix& m);
/// Throws NonIntegral if some entry is not an integer.
IntMatrix to_integer(const RationalMatrix& m);

/// Canonical text key "a b c;d e f" with entries in lowest terms.
std::string matrix_key(const RationalMatrix& m);

}  // namespace transpoly
