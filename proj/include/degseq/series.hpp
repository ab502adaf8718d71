#pragma once

#include <cstddef>
#include <vector>

#include "degseq/mpoly.hpp"

namespace degseq {

enum class Model { simple, multigraph };

const char* to_string(Model m);
Model parse_model(const std::string& s);

// Power series in z truncated after z^order; coefficients are MPoly in
// u_1..u_q. Arithmetic never produces terms beyond the order.
class TruncatedSeries {
 public:
  TruncatedSeries(std::size_t order, std::size_t nvars);

  static TruncatedSeries one(std::size_t order, std::size_t nvars);
  static TruncatedSeries from_coefficients(std::vector<MPoly> coeffs);

  std::size_t order() const { return coeffs_.size() - 1; }
  std::size_t nvars() const { return nvars_; }

  const MPoly& operator[](std::size_t k) const { return coeffs_.at(k); }
  MPoly& operator[](std::size_t k) { return coeffs_.at(k); }
  const std::vector<MPoly>& coefficients() const { return coeffs_; }

  // Substitute u_j := value in every coefficient.
  TruncatedSeries specialize(std::size_t j, const Rational& value) const;

  friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b) = default;

 private:
  std::size_t nvars_;
  std::vector<MPoly> coeffs_;
};

TruncatedSeries series_add(const TruncatedSeries& a, const TruncatedSeries& b);
TruncatedSeries series_sub(const TruncatedSeries& a, const TruncatedSeries& b);
TruncatedSeries series_scale(const TruncatedSeries& a, const Rational& c);
TruncatedSeries series_mul(const TruncatedSeries& a, const TruncatedSeries& b);
// Requires a zero constant term.
TruncatedSeries series_exp(const TruncatedSeries& a);
// Requires constant term exactly 1.
TruncatedSeries series_log(const TruncatedSeries& a);
TruncatedSeries series_pow(const TruncatedSeries& a, unsigned long k);

// Path(z,u) = 1/(1-z) + sum_{j=2}^q (u_j - 1) z^{j-2}.
TruncatedSeries build_path_series(int q, std::size_t order);

// Simple:     1/2 log 1/(1-z) - z/2 - z^2/4 + sum_{j=3}^q (u_j-1) z^j/(2j)
// Multigraph: 1/2 log 1/(1-z)               + sum_{j=1}^q (u_j-1) z^j/(2j)
TruncatedSeries build_cycle_series(int q, std::size_t order, Model model);

}  // namespace degseq
