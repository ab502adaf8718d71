#include "degseq/saddle.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "degseq/errors.hpp"

namespace degseq {

namespace {

constexpr double kResidualTolerance = 1e-12;
constexpr double kBisectionWidth = 1e-8;
constexpr int kDomainGridPoints = 4096;

int marks_q(const Marks& u) {
  if (u.size() < 2) throw DomainError("marks need q >= 2 entries");
  return static_cast<int>(u.size());
}

// Sums sum_{j=2}^q (u_j-1) z^{j-2} and its first two z-derivatives.
struct MarkSums {
  double s0 = 0.0, s1 = 0.0, s2 = 0.0;
};

MarkSums mark_sums(double z, const Marks& u) {
  MarkSums s;
  const int q = marks_q(u);
  for (int j = 2; j <= q; ++j) {
    const double d = u[static_cast<std::size_t>(j - 1)] - 1.0;
    if (d == 0.0) continue;
    const int k = j - 2;
    s.s0 += d * std::pow(z, k);
    if (k >= 1) s.s1 += d * k * std::pow(z, k - 1);
    if (k >= 2) s.s2 += d * k * (k - 1) * std::pow(z, k - 2);
  }
  return s;
}

template <class T>
T ipow(T x, long n) {
  T result(1);
  while (n > 0) {
    if (n & 1) result *= x;
    x *= x;
    n >>= 1;
  }
  return result;
}

double log_v_factor(long n1, long n2) {
  return std::lgamma(static_cast<double>(n1 + n2) + 1.0) -
         static_cast<double>(n1 / 2) * std::numbers::ln2 -
         std::lgamma(static_cast<double>(n1 / 2) + 1.0);
}

double saddle_lhs_dz(double z, const Marks& u) {
  const double p = path_value(z, u);
  const double g1 = path_dz(z, u) / p;
  const double g2 = path_dz2(z, u) / p - g1 * g1;
  return g1 + z * g2;
}

Marks exp_marks(const std::vector<double>& t) {
  Marks u(t.size() + 1, 1.0);
  for (std::size_t k = 0; k < t.size(); ++k) u[k + 1] = std::exp(t[k]);
  return u;
}

}  // namespace

Marks unit_marks(int q) {
  if (q < 2) throw DomainError("q must be at least 2");
  return Marks(static_cast<std::size_t>(q), 1.0);
}

double path_value(double z, const Marks& u) { return 1.0 / (1.0 - z) + mark_sums(z, u).s0; }

double path_dz(double z, const Marks& u) {
  const double w = 1.0 - z;
  return 1.0 / (w * w) + mark_sums(z, u).s1;
}

double path_dz2(double z, const Marks& u) {
  const double w = 1.0 - z;
  return 2.0 / (w * w * w) + mark_sums(z, u).s2;
}

std::complex<double> path_value(std::complex<double> z, const Marks& u) {
  const int q = marks_q(u);
  std::complex<double> value = 1.0 / (1.0 - z);
  std::complex<double> power(1.0);
  for (int j = 2; j <= q; ++j) {
    value += (u[static_cast<std::size_t>(j - 1)] - 1.0) * power;
    power *= z;
  }
  return value;
}

double cycle_value(double z, const Marks& u, Model model) {
  return cycle_value(std::complex<double>(z, 0.0), u, model).real();
}

std::complex<double> cycle_value(std::complex<double> z, const Marks& u, Model model) {
  const int q = marks_q(u);
  std::complex<double> value = -0.5 * std::log(1.0 - z);
  int first = 1;
  if (model == Model::simple) {
    value -= z / 2.0 + z * z / 4.0;
    first = 3;
  }
  for (int j = first; j <= q; ++j) {
    const double d = u[static_cast<std::size_t>(j - 1)] - 1.0;
    if (d != 0.0) value += d * ipow(z, j) / (2.0 * j);
  }
  return value;
}

double saddle_lhs(double z, const Marks& u) {
  const MarkSums s = mark_sums(z, u);
  const double w = 1.0 - z;
  return z * (1.0 + w * w * s.s1) / (w + w * w * s.s0);
}

void check_marks_domain(const Marks& u) {
  const int q = marks_q(u);
  for (int j = 1; j <= q; ++j) {
    const double v = u[static_cast<std::size_t>(j - 1)];
    if (!(v > 0.0) || !std::isfinite(v))
      throw DomainError("u_" + std::to_string(j) + " must be a positive finite real");
  }
  for (int k = 1; k < kDomainGridPoints; ++k) {
    const double z = static_cast<double>(k) / kDomainGridPoints;
    if (!(path_value(z, u) > 0.0))
      throw DomainError("Path(z,u) vanishes on (0,1): u is outside the valid neighbourhood of 1");
  }
}

double solve_zeta(double alpha, const Marks& u) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw DomainError("alpha must be positive");
  check_marks_domain(u);
  auto f = [&](double z) { return saddle_lhs(z, u) - alpha; };

  double lo = 0.0;
  double hi = std::nextafter(1.0, 0.0);
  if (!(f(lo) < 0.0 && f(hi) > 0.0))
    throw NumericError("saddle equation has no sign change on (0,1)");
  while (hi - lo > kBisectionWidth) {
    const double mid = 0.5 * (lo + hi);
    const double value = f(mid);
    if (value == 0.0) return mid;
    (value < 0.0 ? lo : hi) = mid;
  }

  // Safeguarded Newton: steps leaving [lo, hi] fall back to bisection; keep
  // the best iterate seen.
  double z = 0.5 * (lo + hi);
  double best = z;
  double residual = f(z);
  double best_residual = residual;
  for (int iter = 0; iter < 100 && residual != 0.0; ++iter) {
    (residual < 0.0 ? lo : hi) = z;
    double next = z - residual / saddle_lhs_dz(z, u);
    if (!(next >= lo && next <= hi)) next = 0.5 * (lo + hi);
    if (next == z) break;
    z = next;
    residual = f(z);
    if (std::abs(residual) < std::abs(best_residual)) {
      best = z;
      best_residual = residual;
    }
    if (std::abs(residual) <= kResidualTolerance * 1e-3) break;
  }
  z = best;
  residual = best_residual;
  if (!(std::abs(residual) <= kResidualTolerance))
    throw NumericError("saddle point did not converge: residual " + std::to_string(residual));
  return z;
}

double phi_second(double alpha, const Marks& u, double zeta) {
  (void)alpha;  // alpha enters only through zeta
  const double p = path_value(zeta, u);
  const double g1 = path_dz(zeta, u) / p;
  const double g2 = path_dz2(zeta, u) / p - g1 * g1;
  const double value = zeta * g1 + zeta * zeta * g2;
  if (!(value > 0.0))
    throw DomainError("phi''(0,u) is not positive: u is outside the valid neighbourhood of 1");
  return value;
}

double a_zero(const Marks& u, double zeta, Model model) {
  if (!(zeta > 0.0 && zeta < 1.0)) throw DomainError("zeta must lie in (0,1)");
  return std::exp(cycle_value(zeta, u, model));
}

SaddleData saddle_data(double alpha, const Marks& u, Model model) {
  SaddleData d;
  d.u = u;
  d.zeta = solve_zeta(alpha, u);
  d.phi2 = phi_second(alpha, u, d.zeta);
  d.a0 = a_zero(u, d.zeta, model);
  d.path_at_zeta = path_value(d.zeta, u);
  return d;
}

std::complex<double> phi(double theta, double alpha, const Marks& u, double zeta) {
  const std::complex<double> z = std::polar(zeta, theta);
  return std::log(path_value(zeta, u)) - std::log(path_value(z, u)) +
         std::complex<double>(0.0, alpha * theta);
}

double asymptotic_log_gf(const GraphClassParams& params, const Marks& u) {
  params.validate();
  if (params.n1 % 2 != 0 || params.n1 < 2) throw DomainError("n1 must be even and at least 2");
  if (params.n2 < 1) throw DomainError("n2 must be positive (alpha > 0)");
  if (static_cast<int>(u.size()) != params.q) throw DomainError("u must have q entries");
  const double alpha = 2.0 * static_cast<double>(params.n2) / static_cast<double>(params.n1);
  const SaddleData d = saddle_data(alpha, u, params.model);
  const double half = static_cast<double>(params.n1) / 2.0;
  return log_v_factor(params.n1, params.n2) + std::log(d.a0) -
         0.5 * std::log(2.0 * std::numbers::pi * d.phi2 * half) + half * std::log(d.path_at_zeta) -
         static_cast<double>(params.n2) * std::log(d.zeta);
}

double contour_extract(const GraphClassParams& params, const Marks& u, double zeta, int points) {
  params.validate();
  if (params.n1 % 2 != 0) throw DomainError("n1 must be even");
  if (points < 64) throw DomainError("contour quadrature needs at least 64 points");
  if (!(zeta > 0.0 && zeta < 1.0)) throw DomainError("zeta must lie in (0,1)");
  if (static_cast<int>(u.size()) != params.q) throw DomainError("u must have q entries");
  const long half = params.n1 / 2;
  const double p0 = path_value(zeta, u);
  std::complex<double> sum(0.0);
  for (int k = 0; k < points; ++k) {
    const double theta = 2.0 * std::numbers::pi * k / points;
    const std::complex<double> z = std::polar(zeta, theta);
    const std::complex<double> a = std::exp(cycle_value(z, u, params.model));
    const std::complex<double> ratio = path_value(z, u) / p0;
    sum += a * ipow(ratio, half) * std::polar(1.0, -static_cast<double>(params.n2) * theta);
  }
  const double mean = sum.real() / points;
  return std::exp(static_cast<double>(half) * std::log(p0) -
                  static_cast<double>(params.n2) * std::log(zeta)) *
         mean;
}

double contour_extract(const GraphClassParams& params, const Marks& u, int points) {
  if (params.n1 < 2 || params.n2 < 1) throw DomainError("need n1 >= 2 and n2 >= 1 to place the saddle");
  const double alpha = 2.0 * static_cast<double>(params.n2) / static_cast<double>(params.n1);
  return contour_extract(params, u, solve_zeta(alpha, u), points);
}

double chi(double alpha, const std::vector<double>& t) {
  const Marks u = exp_marks(t);
  const double zeta = solve_zeta(alpha, u);
  const double zeta1 = alpha / (1.0 + alpha);
  return std::log(path_value(zeta, u) / (1.0 + alpha)) - alpha * std::log(zeta / zeta1);
}

double quasi_power_b(double alpha, const std::vector<double>& t, Model model) {
  const Marks u = exp_marks(t);
  const Marks one = unit_marks(static_cast<int>(u.size()));
  const double zeta = solve_zeta(alpha, u);
  const double zeta1 = alpha / (1.0 + alpha);
  return a_zero(u, zeta, model) / a_zero(one, zeta1, model) *
         std::sqrt(phi_second(alpha, one, zeta1) / phi_second(alpha, u, zeta));
}

std::vector<double> gradient_chi(double alpha, int q) {
  if (!(alpha > 0.0)) throw DomainError("alpha must be positive");
  if (q < 2) throw DomainError("q must be at least 2");
  std::vector<double> g;
  for (int j = 2; j <= q; ++j) g.push_back(std::pow(alpha, j - 2) / std::pow(1.0 + alpha, j - 1));
  return g;
}

double hessian_entry(double alpha, int i, int j) {
  const double a1 = 1.0 + alpha;
  double h = -std::pow(alpha, i + j - 4) / std::pow(a1, i + j - 2) *
             (1.0 + (i - 2 - alpha) * (j - 2 - alpha) / (alpha * a1));
  if (i == j) h += std::pow(alpha / a1, i - 2) / a1;
  return h;
}

SymMatrix hessian_H(double alpha, int q) {
  if (!(alpha > 0.0)) throw DomainError("alpha must be positive");
  if (q < 2) throw DomainError("q must be at least 2");
  const auto n = static_cast<std::size_t>(q - 1);
  SymMatrix h(n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = r; c < n; ++c) {
      h(r, c) = hessian_entry(alpha, static_cast<int>(r) + 2, static_cast<int>(c) + 2);
      h(c, r) = h(r, c);
    }
  }
  return h;
}

LimitLaw limit_law(double alpha, int q, Model model) {
  LimitLaw law;
  law.q = q;
  law.alpha = alpha;
  law.model = model;
  law.mean_coeffs = gradient_chi(alpha, q);
  law.hessian = hessian_H(alpha, q);
  if (model == Model::multigraph) law.poisson_lambda = alpha / (2.0 * (1.0 + alpha));
  return law;
}

}  // namespace degseq
