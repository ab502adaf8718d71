#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace degseq {

// Exact rational, always canonical (lowest terms, positive denominator).
using Rational = mpq_class;

Rational make_rational(long num, long den = 1);
std::string to_string(const Rational& r);

// Natural log of a positive rational, accurate for arbitrarily large
// numerators and denominators.
double log_rational(const Rational& r);

// Exponent vector over u_1..u_q; slot k holds the exponent of u_{k+1}.
using Exponents = std::vector<std::uint32_t>;

// Sparse multivariate polynomial in u_1..u_q with rational coefficients.
// Zero coefficients are never stored.
class MPoly {
 public:
  using Terms = std::map<Exponents, Rational>;

  explicit MPoly(std::size_t nvars = 0) : nvars_(nvars) {}

  static MPoly constant(std::size_t nvars, const Rational& c);
  // The variable u_j (1-based).
  static MPoly variable(std::size_t nvars, std::size_t j);

  std::size_t nvars() const { return nvars_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Rational constant_term() const;
  Rational coefficient(const Exponents& e) const;

  void add_term(const Exponents& e, const Rational& c);

  MPoly& operator+=(const MPoly& other);
  MPoly& operator-=(const MPoly& other);
  MPoly& operator*=(const Rational& c);

  friend MPoly operator+(MPoly a, const MPoly& b) { return a += b; }
  friend MPoly operator-(MPoly a, const MPoly& b) { return a -= b; }
  friend MPoly operator*(MPoly a, const Rational& c) { return a *= c; }
  friend MPoly operator*(const MPoly& a, const MPoly& b);
  friend bool operator==(const MPoly& a, const MPoly& b) = default;

  // Value with u_j := values[j-1].
  Rational evaluate(const std::vector<Rational>& values) const;
  // Substitute u_j := value, leaving the other variables in place.
  MPoly specialize(std::size_t j, const Rational& value) const;
  // Sum of all coefficients, i.e. the value at u = 1.
  Rational value_at_one() const;

  std::string to_string() const;

 private:
  void check_same_shape(const MPoly& other) const;

  std::size_t nvars_;
  Terms terms_;
};

}  // namespace degseq
