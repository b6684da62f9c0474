#include "transpoly/rational.hpp"

#include <cctype>

namespace transpoly {

namespace {

bool is_integer_literal(std::string_view s) {
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
  if (s.empty()) return false;
  for (char ch : s)
    if (!std::isdigit(static_cast<unsigned char>(ch))) return false;
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
  if (!is_integer_literal(num) || !is_integer_literal(den) || den.front() == '-' || den.front() == '+')
    throw ParseError("malformed rational '" + std::string(text) + "'");
  std::string n(num);
  if (n.front() == '+') n.erase(0, 1);
  Integer q(std::string(den), 10);
  if (q == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
  Rational x(Integer(n, 10), q);
  x.canonicalize();
  return x;
}

std::string format_rational(const Rational& x) {
  return x.get_num().get_str() + "/" + x.get_den().get_str();
}

Integer floor(const Rational& x) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return q;
}

Integer ceil(const Rational& x) {
  Integer q;
  mpz_cdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return q;
}

Rational pow(const Rational& base, std::int64_t exp) {
  if (exp == 0) return 1;
  if (exp < 0 && base == 0) throw Error("negative power of zero");
  unsigned long e = static_cast<unsigned long>(exp < 0 ? -exp : exp);
  Integer num, den;
  mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), e);
  mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), e);
  Rational r = exp > 0 ? Rational(num, den) : Rational(den, num);
  r.canonicalize();
  return r;
}

Integer factorial(unsigned n) {
  Integer f;
  mpz_fac_ui(f.get_mpz_t(), n);
  return f;
}

Integer lcm_of_denominators(const std::vector<Rational>& xs) {
  Integer k = 1;
  for (const auto& x : xs) mpz_lcm(k.get_mpz_t(), k.get_mpz_t(), x.get_den_mpz_t());
  return k;
}

RationalMatrix to_rational(const IntMatrix& m) {
  RationalMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = Rational(static_cast<long>(m(i, j)));
  return out;
}

IntMatrix to_integer(const RationalMatrix& m) {
  IntMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const Rational& x = m(i, j);
      if (!is_integer(x) || !x.get_num().fits_slong_p())
        throw NonIntegral("matrix entry " + format_rational(x) + " is not a machine integer");
      out(i, j) = x.get_num().get_si();
    }
  return out;
}

std::string matrix_key(const RationalMatrix& m) {
  std::string key;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (i) key += ';';
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) key += ' ';
      key += m(i, j).get_str();
    }
  }
  return key;
}

}  // namespace transpoly
