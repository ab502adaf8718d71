#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "degseq/exact.hpp"
#include "degseq/series.hpp"

namespace degseq {

// Real marks u_1..u_q; u[j-1] is u_j. u_1 only enters the multigraph Cycle.
using Marks = std::vector<double>;

Marks unit_marks(int q);

// Closed-form evaluation of Path and Cycle and the derivatives the saddle
// computations need.
double path_value(double z, const Marks& u);
double path_dz(double z, const Marks& u);
double path_dz2(double z, const Marks& u);
double cycle_value(double z, const Marks& u, Model model);
std::complex<double> path_value(std::complex<double> z, const Marks& u);
std::complex<double> cycle_value(std::complex<double> z, const Marks& u, Model model);

// z d/dz log Path(z,u), evaluated in the (1-z)^2-multiplied form that stays
// well conditioned near z = 1.
double saddle_lhs(double z, const Marks& u);

struct SaddleData {
  double zeta = 0.0;
  double phi2 = 0.0;          // d^2/dtheta^2 phi(0,u)
  double a0 = 0.0;            // A(0,u)
  double path_at_zeta = 0.0;  // Path(zeta,u)
  Marks u;
};

// Throws DomainError unless Path(z,u) > 0 on a dense grid of (0,1).
void check_marks_domain(const Marks& u);

// Unique root of zeta d/dz log Path(zeta,u) = alpha in (0,1); bisection then
// Newton polish to residual <= 1e-12.
double solve_zeta(double alpha, const Marks& u);

double phi_second(double alpha, const Marks& u, double zeta);
double a_zero(const Marks& u, double zeta, Model model);
SaddleData saddle_data(double alpha, const Marks& u, Model model);

// phi(theta,u) = log Path(zeta,u) - log Path(zeta e^{i theta},u) + i alpha theta.
std::complex<double> phi(double theta, double alpha, const Marks& u, double zeta);

// log of the Laplace-method estimate of G_{n1,n2}(u); alpha = 2 n2 / n1.
double asymptotic_log_gf(const GraphClassParams& params, const Marks& u);

// Trapezoid rule on the Cauchy integral over the circle |z| = zeta, returning
// [z^{n2}] e^{Cycle} Path^{n1/2} (i.e. G / v_{n1,n2}).
double contour_extract(const GraphClassParams& params, const Marks& u, double zeta,
                       int points = 1024);
// Same, with zeta from solve_zeta at alpha = 2 n2 / n1.
double contour_extract(const GraphClassParams& params, const Marks& u, int points = 1024);

// chi(t) and B(t) of the quasi-power expansion; t[j-2] is t_j for j = 2..q.
double chi(double alpha, const std::vector<double>& t);
double quasi_power_b(double alpha, const std::vector<double>& t, Model model = Model::simple);

// d chi / d t_j at 0, j = 2..q.
std::vector<double> gradient_chi(double alpha, int q);

// Symmetric (q-1)x(q-1) matrix, row-major, entry (i-2, j-2) is H_{i,j}(alpha).
class SymMatrix {
 public:
  explicit SymMatrix(std::size_t n = 0) : n_(n), data_(n * n, 0.0) {}
  std::size_t size() const { return n_; }
  double& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }
  const std::vector<double>& data() const { return data_; }

 private:
  std::size_t n_;
  std::vector<double> data_;
};

double hessian_entry(double alpha, int i, int j);
SymMatrix hessian_H(double alpha, int q);

struct LimitLaw {
  int q = 2;
  double alpha = 0.0;
  Model model = Model::simple;
  std::vector<double> mean_coeffs;  // index j-2
  SymMatrix hessian;
  std::optional<double> poisson_lambda;  // multigraph only
};

LimitLaw limit_law(double alpha, int q, Model model);

}  // namespace degseq
