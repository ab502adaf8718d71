#include "degseq/series.hpp"

#include <stdexcept>
#include <string>

#include "degseq/errors.hpp"

namespace degseq {

const char* to_string(Model m) { return m == Model::simple ? "simple" : "multigraph"; }

Model parse_model(const std::string& s) {
  if (s == "simple") return Model::simple;
  if (s == "multigraph") return Model::multigraph;
  throw std::invalid_argument("unknown model '" + s + "' (expected simple|multigraph)");
}

TruncatedSeries::TruncatedSeries(std::size_t order, std::size_t nvars)
    : nvars_(nvars), coeffs_(order + 1, MPoly(nvars)) {}

TruncatedSeries TruncatedSeries::one(std::size_t order, std::size_t nvars) {
  TruncatedSeries s(order, nvars);
  s.coeffs_[0] = MPoly::constant(nvars, Rational(1));
  return s;
}

TruncatedSeries TruncatedSeries::from_coefficients(std::vector<MPoly> coeffs) {
  if (coeffs.empty()) throw std::invalid_argument("series needs at least one coefficient");
  TruncatedSeries s(coeffs.size() - 1, coeffs.front().nvars());
  for (const auto& c : coeffs)
    if (c.nvars() != s.nvars_) throw std::invalid_argument("series coefficient shape mismatch");
  s.coeffs_ = std::move(coeffs);
  return s;
}

TruncatedSeries TruncatedSeries::specialize(std::size_t j, const Rational& value) const {
  TruncatedSeries out(order(), nvars_);
  for (std::size_t k = 0; k < coeffs_.size(); ++k) out.coeffs_[k] = coeffs_[k].specialize(j, value);
  return out;
}

namespace {

void check_compatible(const TruncatedSeries& a, const TruncatedSeries& b) {
  if (a.order() != b.order())
    throw std::invalid_argument("series order mismatch: " + std::to_string(a.order()) + " vs " +
                                std::to_string(b.order()));
  if (a.nvars() != b.nvars()) throw std::invalid_argument("series variable count mismatch");
}

}  // namespace

TruncatedSeries series_add(const TruncatedSeries& a, const TruncatedSeries& b) {
  check_compatible(a, b);
  TruncatedSeries out = a;
  for (std::size_t k = 0; k <= a.order(); ++k) out[k] += b[k];
  return out;
}

TruncatedSeries series_sub(const TruncatedSeries& a, const TruncatedSeries& b) {
  check_compatible(a, b);
  TruncatedSeries out = a;
  for (std::size_t k = 0; k <= a.order(); ++k) out[k] -= b[k];
  return out;
}

TruncatedSeries series_scale(const TruncatedSeries& a, const Rational& c) {
  TruncatedSeries out = a;
  for (std::size_t k = 0; k <= a.order(); ++k) out[k] *= c;
  return out;
}

TruncatedSeries series_mul(const TruncatedSeries& a, const TruncatedSeries& b) {
  check_compatible(a, b);
  const std::size_t n = a.order();
  TruncatedSeries out(n, a.nvars());
  for (std::size_t i = 0; i <= n; ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; i + j <= n; ++j) {
      if (b[j].is_zero()) continue;
      out[i + j] += a[i] * b[j];
    }
  }
  return out;
}

// With b = exp(a): k b_k = sum_{i=1}^k i a_i b_{k-i}.
TruncatedSeries series_exp(const TruncatedSeries& a) {
  if (!a[0].is_zero()) throw std::invalid_argument("series_exp: constant term must be zero");
  const std::size_t n = a.order();
  TruncatedSeries b = TruncatedSeries::one(n, a.nvars());
  for (std::size_t k = 1; k <= n; ++k) {
    MPoly acc(a.nvars());
    for (std::size_t i = 1; i <= k; ++i) {
      if (a[i].is_zero() || b[k - i].is_zero()) continue;
      acc += (a[i] * b[k - i]) * Rational(static_cast<long>(i));
    }
    b[k] = acc * Rational(1, static_cast<long>(k));
  }
  return b;
}

// Inverse recurrence of series_exp: k a_k = k b_k - sum_{i=1}^{k-1} i a_i b_{k-i}.
TruncatedSeries series_log(const TruncatedSeries& b) {
  if (!(b[0] == MPoly::constant(b.nvars(), Rational(1))))
    throw std::invalid_argument("series_log: constant term must be 1");
  const std::size_t n = b.order();
  TruncatedSeries a(n, b.nvars());
  for (std::size_t k = 1; k <= n; ++k) {
    MPoly acc = b[k] * Rational(static_cast<long>(k));
    for (std::size_t i = 1; i < k; ++i) {
      if (a[i].is_zero() || b[k - i].is_zero()) continue;
      acc -= (a[i] * b[k - i]) * Rational(static_cast<long>(i));
    }
    a[k] = acc * Rational(1, static_cast<long>(k));
  }
  return a;
}

TruncatedSeries series_pow(const TruncatedSeries& a, unsigned long k) {
  TruncatedSeries result = TruncatedSeries::one(a.order(), a.nvars());
  TruncatedSeries base = a;
  while (k > 0) {
    if (k & 1UL) result = series_mul(result, base);
    k >>= 1;
    if (k > 0) base = series_mul(base, base);
  }
  return result;
}

TruncatedSeries build_path_series(int q, std::size_t order) {
  if (q < 2) throw DomainError("Path series needs q >= 2");
  const auto nvars = static_cast<std::size_t>(q);
  TruncatedSeries s(order, nvars);
  for (std::size_t k = 0; k <= order; ++k) {
    const std::size_t size = k + 2;
    s[k] = size <= nvars ? MPoly::variable(nvars, size) : MPoly::constant(nvars, Rational(1));
  }
  return s;
}

TruncatedSeries build_cycle_series(int q, std::size_t order, Model model) {
  if (q < 2) throw DomainError("Cycle series needs q >= 2");
  const auto nvars = static_cast<std::size_t>(q);
  const std::size_t first = model == Model::simple ? 3 : 1;
  TruncatedSeries s(order, nvars);
  for (std::size_t k = first; k <= order; ++k) {
    const Rational weight(1, 2 * static_cast<long>(k));
    s[k] = (k <= nvars ? MPoly::variable(nvars, k) : MPoly::constant(nvars, Rational(1))) * weight;
  }
  return s;
}

}  // namespace degseq
