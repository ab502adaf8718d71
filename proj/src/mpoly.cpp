#include "degseq/mpoly.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "degseq/errors.hpp"

namespace degseq {

namespace {

double log_integer(const mpz_class& z) {
  long exponent = 0;
  const double mantissa = mpz_get_d_2exp(&exponent, z.get_mpz_t());
  return std::log(mantissa) + static_cast<double>(exponent) * std::log(2.0);
}

}  // namespace

Rational make_rational(long num, long den) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& r) { return r.get_str(); }

double log_rational(const Rational& r) {
  if (sgn(r) <= 0) throw DomainError("log of a non-positive rational");
  return log_integer(r.get_num()) - log_integer(r.get_den());
}

MPoly MPoly::constant(std::size_t nvars, const Rational& c) {
  MPoly p(nvars);
  p.add_term(Exponents(nvars, 0), c);
  return p;
}

MPoly MPoly::variable(std::size_t nvars, std::size_t j) {
  if (j < 1 || j > nvars) throw std::out_of_range("MPoly::variable index");
  Exponents e(nvars, 0);
  e[j - 1] = 1;
  MPoly p(nvars);
  p.add_term(e, Rational(1));
  return p;
}

bool MPoly::is_constant() const {
  if (terms_.empty()) return true;
  if (terms_.size() > 1) return false;
  for (auto x : terms_.begin()->first)
    if (x != 0) return false;
  return true;
}

Rational MPoly::constant_term() const { return coefficient(Exponents(nvars_, 0)); }

Rational MPoly::coefficient(const Exponents& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Rational(0) : it->second;
}

void MPoly::add_term(const Exponents& e, const Rational& c) {
  if (e.size() != nvars_) throw std::invalid_argument("exponent vector length mismatch");
  if (sgn(c) == 0) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (sgn(it->second) == 0) terms_.erase(it);
  }
}

void MPoly::check_same_shape(const MPoly& other) const {
  if (nvars_ != other.nvars_) throw std::invalid_argument("MPoly variable count mismatch");
}

MPoly& MPoly::operator+=(const MPoly& other) {
  check_same_shape(other);
  for (const auto& [e, c] : other.terms_) add_term(e, c);
  return *this;
}

MPoly& MPoly::operator-=(const MPoly& other) {
  check_same_shape(other);
  for (const auto& [e, c] : other.terms_) add_term(e, -c);
  return *this;
}

MPoly& MPoly::operator*=(const Rational& c) {
  if (sgn(c) == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, coeff] : terms_) coeff *= c;
  return *this;
}

MPoly operator*(const MPoly& a, const MPoly& b) {
  a.check_same_shape(b);
  MPoly out(a.nvars_);
  if (a.is_zero() || b.is_zero()) return out;
  Exponents e(a.nvars_);
  Rational prod;
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      for (std::size_t k = 0; k < e.size(); ++k) e[k] = ea[k] + eb[k];
      prod = ca * cb;
      out.add_term(e, prod);
    }
  }
  return out;
}

Rational MPoly::evaluate(const std::vector<Rational>& values) const {
  if (values.size() != nvars_) throw std::invalid_argument("evaluate: wrong number of values");
  Rational total(0);
  for (const auto& [e, c] : terms_) {
    Rational term = c;
    for (std::size_t k = 0; k < nvars_; ++k) {
      for (std::uint32_t p = 0; p < e[k]; ++p) term *= values[k];
    }
    total += term;
  }
  return total;
}

MPoly MPoly::specialize(std::size_t j, const Rational& value) const {
  if (j < 1 || j > nvars_) throw std::out_of_range("MPoly::specialize index");
  MPoly out(nvars_);
  for (const auto& [e, c] : terms_) {
    Rational term = c;
    for (std::uint32_t p = 0; p < e[j - 1]; ++p) term *= value;
    Exponents reduced = e;
    reduced[j - 1] = 0;
    out.add_term(reduced, term);
  }
  return out;
}

Rational MPoly::value_at_one() const {
  Rational total(0);
  for (const auto& [e, c] : terms_) total += c;
  return total;
}

std::string MPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << c.get_str();
    for (std::size_t k = 0; k < e.size(); ++k) {
      if (e[k] == 0) continue;
      os << "*u" << (k + 1);
      if (e[k] > 1) os << '^' << e[k];
    }
  }
  return os.str();
}

}  // namespace degseq
