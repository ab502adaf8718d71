#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "degseq/acceptance.hpp"
#include "degseq/errors.hpp"
#include "degseq/exact.hpp"
#include "degseq/saddle.hpp"

using namespace degseq;

namespace {

// Path(z,u) straight from its definition, independent of the library's
// evaluation routines.
std::complex<double> path_direct(std::complex<double> z, const Marks& u) {
  std::complex<double> v = 1.0 / (1.0 - z);
  for (int j = 2; j <= static_cast<int>(u.size()); ++j) v += (u[j - 1] - 1.0) * std::pow(z, j - 2);
  return v;
}

double log_path_direct(double z, const Marks& u) { return std::log(path_direct(z, u).real()); }

// The i alpha theta term of phi is purely imaginary.
double re_phi_direct(double theta, const Marks& u, double zeta) {
  const auto z = std::polar(zeta, theta);
  return (std::log(path_direct(zeta, u)) - std::log(path_direct(z, u))).real();
}

double saddle_fn_direct(double z, const Marks& u) {
  const double h = 1e-6;
  return z * (log_path_direct(z + h, u) - log_path_direct(z - h, u)) / (2 * h);
}

}  // namespace

TEST_CASE("solve_zeta at u = 1 is alpha / (1 + alpha)") {
  for (double alpha : {0.1, 0.5, 1.0, 2.0, 10.0}) {
    CHECK(std::abs(solve_zeta(alpha, unit_marks(3)) - alpha / (1 + alpha)) <= 1e-12);
  }
  CHECK(solve_zeta(1.0, unit_marks(2)) == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("solve_zeta off u = 1") {
  const Marks u{1.0, 1.1, 0.9};
  const double zeta = solve_zeta(1.0, u);
  CHECK(std::abs(saddle_lhs(zeta, u) - 1.0) <= 1e-12);
  // Independent bracket: the direct z (log Path)' changes sign around zeta.
  CHECK(saddle_fn_direct(zeta - 1e-4, u) < 1.0);
  CHECK(saddle_fn_direct(zeta + 1e-4, u) > 1.0);

  for (double a : {0.05, 0.3, 3.0, 40.0}) {
    for (const Marks& v : {Marks{1.0, 0.8, 1.3, 1.1}, Marks{2.0, 1.02, 0.97, 1.05, 0.9}}) {
      const double z = solve_zeta(a, v);
      CHECK(z > 0.0);
      CHECK(z < 1.0);
      CHECK(std::abs(saddle_lhs(z, v) - a) <= 1e-12);
    }
  }
}

TEST_CASE("saddle equation is increasing on (0,1)") {
  const Marks u{1.0, 1.2, 0.7, 1.4};
  double prev = saddle_lhs(1e-6, u);
  for (int k = 1; k < 1000; ++k) {
    const double cur = saddle_lhs(k / 1000.0, u);
    CHECK(cur > prev);
    prev = cur;
  }
}

TEST_CASE("solve_zeta domain errors") {
  CHECK_THROWS_AS(solve_zeta(0.0, unit_marks(3)), DomainError);
  CHECK_THROWS_AS(solve_zeta(-1.0, unit_marks(3)), DomainError);
  CHECK_THROWS_AS(solve_zeta(1.0, Marks{1.0, -0.5, 1.0}), DomainError);
  CHECK_THROWS_AS(solve_zeta(1.0, Marks{1.0, 0.0}), DomainError);
}

TEST_CASE("phi_second") {
  for (double alpha : {0.1, 1.0, 2.0, 10.0}) {
    const Marks one = unit_marks(4);
    CHECK(phi_second(alpha, one, solve_zeta(alpha, one)) ==
          doctest::Approx(alpha * (1 + alpha)).epsilon(1e-12));
  }
  CHECK(phi_second(1.0, unit_marks(2), 0.5) == doctest::Approx(2.0));

  // Second central difference of theta -> Re phi(theta,u) at 0.
  const Marks u{1.0, 1.05, 0.95, 1.02};
  const double zeta = solve_zeta(1.0, u);
  const double h = 1e-4;
  const double fd = (re_phi_direct(h, u, zeta) - 2 * re_phi_direct(0, u, zeta) + re_phi_direct(-h, u, zeta)) /
                    (h * h);
  CHECK(std::abs(phi_second(1.0, u, zeta) - fd) <= 1e-6);
}

TEST_CASE("a_zero") {
  CHECK(a_zero(unit_marks(3), 0.5, Model::simple) ==
        doctest::Approx(std::exp(0.5 * std::log(2.0) - 0.25 - 1.0 / 16)).epsilon(1e-14));
  CHECK(a_zero(unit_marks(3), 0.5, Model::simple) == doctest::Approx(1.0346607).epsilon(1e-7));
  CHECK(a_zero(unit_marks(3), 0.5, Model::multigraph) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
  CHECK(a_zero(unit_marks(3), solve_zeta(1e-6, unit_marks(3)), Model::simple) ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(a_zero(unit_marks(3), 1.0, Model::simple), DomainError);
}

TEST_CASE("phi vanishes at 0 and has positive real part elsewhere") {
  for (const Marks& u : {Marks{1, 1, 1, 1}, Marks{1, 1.05, 0.95, 1.0}, Marks{1, 0.95, 1.05, 1.05},
                         Marks{1, 1.1, 1.1, 0.9}}) {
    for (double alpha : {0.5, 1.0, 2.0}) {
      const double zeta = solve_zeta(alpha, u);
      CHECK(std::abs(phi(0.0, alpha, u, zeta)) <= 1e-15);
      for (int k = 1; k <= 2000; ++k) {
        const double theta = -std::numbers::pi + 2 * std::numbers::pi * k / 2001.0;
        if (std::abs(theta) < 1e-9) continue;
        CHECK(phi(theta, alpha, u, zeta).real() > 1e-12);
      }
    }
  }
}

TEST_CASE("contour_extract") {
  const auto small = GraphClassParams::from_counts(2, 1, 3);
  const double c = contour_extract(small, unit_marks(3));
  CHECK(std::abs(c - 1.0) <= 1e-10);
  CHECK(std::abs(c * v_factor(2, 1).get_d() - 3.0) <= 3e-10);

  const auto mid = GraphClassParams::from_counts(20, 10, 3);
  const double exact = path_cycle_coefficient(mid, {Rational(1), Rational(1), Rational(1)}).get_d();
  CHECK(std::abs(contour_extract(mid, unit_marks(3), 1024) - exact) <= 1e-8 * exact);

  const auto multi = GraphClassParams::from_counts(20, 10, 4, Model::multigraph);
  const std::vector<Rational> ur{Rational(6, 5), make_rational(11, 10), make_rational(9, 10), Rational(1)};
  const double exact_m = path_cycle_coefficient(multi, ur).get_d();
  CHECK(std::abs(contour_extract(multi, Marks{1.2, 1.1, 0.9, 1.0}) - exact_m) <= 1e-8 * exact_m);

  // The coefficient does not depend on the radius.
  CHECK(contour_extract(mid, unit_marks(3), 0.3, 1024) == doctest::Approx(exact).epsilon(1e-9));
  CHECK_THROWS_AS(contour_extract(mid, unit_marks(3), 0.5, 32), DomainError);
}

TEST_CASE("asymptotic_log_gf against the exact pipeline") {
  for (Model model : {Model::simple, Model::multigraph}) {
    const auto p = GraphClassParams::from_counts(20, 10, 2, model);
    const double exact = log_rational(graph_gf_value(p, {Rational(1), Rational(1)}));
    CHECK(std::abs(asymptotic_log_gf(p, unit_marks(2)) - exact) <= 0.05);
  }

  const auto p = GraphClassParams::from_counts(40, 20, 3);
  const std::vector<Rational> ur{Rational(1), make_rational(21, 20), make_rational(19, 20)};
  const double exact = log_rational(graph_gf_value(p, ur));
  CHECK(std::abs(asymptotic_log_gf(p, Marks{1.0, 1.05, 0.95}) - exact) <= 0.05);

  double prev = 1e300;
  for (long n1 : {40L, 80L, 160L, 320L}) {
    const auto pn = GraphClassParams::from_alpha(1.0, n1, 2);
    const double gap =
        std::abs(asymptotic_log_gf(pn, unit_marks(2)) - log_rational(graph_gf_value(pn, {Rational(1), Rational(1)})));
    CHECK(gap < prev);
    prev = gap;
  }
  CHECK_THROWS_AS(asymptotic_log_gf(GraphClassParams::from_counts(3, 1, 2), unit_marks(2)), DomainError);
}

TEST_CASE("chi and B at the origin") {
  for (double alpha : {0.3, 1.0, 4.0}) {
    CHECK(std::abs(chi(alpha, {0.0, 0.0, 0.0})) <= 1e-14);
    CHECK(std::abs(quasi_power_b(alpha, {0.0, 0.0, 0.0}) - 1.0) <= 1e-12);
    CHECK(std::abs(quasi_power_b(alpha, {0.0, 0.0}, Model::multigraph) - 1.0) <= 1e-12);
  }
}

TEST_CASE("gradient_chi") {
  const auto g = gradient_chi(1.0, 4);
  CHECK(g[0] == doctest::Approx(0.5));
  CHECK(g[1] == doctest::Approx(0.25));
  CHECK(g[2] == doctest::Approx(0.125));
  for (double alpha : {0.5, 1.0, 2.0, 5.0}) {
    const auto closed = gradient_chi(alpha, 6);
    const auto fd = finite_difference_gradient_chi(alpha, 6);
    for (std::size_t k = 0; k < closed.size(); ++k) CHECK(std::abs(closed[k] - fd[k]) <= 1e-7);
  }
}

TEST_CASE("hessian_H spot values") {
  const SymMatrix h = hessian_H(1.0, 3);
  CHECK(std::abs(h(0, 0) - 0.125) <= 1e-12);
  CHECK(std::abs(h(0, 1) + 0.125) <= 1e-12);
  CHECK(std::abs(h(1, 1) - 0.1875) <= 1e-12);
  for (double a : {0.2, 1.0, 3.0}) CHECK(hessian_entry(a, 2, 2) == doctest::Approx(a * a / std::pow(1 + a, 3)));
}

TEST_CASE("hessian_H equals the finite-difference Hessian of chi") {
  for (double alpha : {0.25, 0.5, 1.0, 2.0, 4.0}) {
    for (int q : {2, 4, 6}) {
      const SymMatrix closed = hessian_H(alpha, q);
      const SymMatrix fd = finite_difference_hessian_chi(alpha, q);
      for (std::size_t i = 0; i < closed.size(); ++i)
        for (std::size_t j = 0; j < closed.size(); ++j) CHECK(std::abs(closed(i, j) - fd(i, j)) <= 1e-5);
    }
  }
}

TEST_CASE("hessian_H equals the implicit-differentiation route through f = log Path") {
  // d_ti d_tj chi(0) = -zeta f_zi f_zj / (f_z + zeta f_zz) + f_ij + [i=j] f_i,
  // with every partial of f taken by finite differences at (zeta_1, 1).
  const double h = 1e-4;
  for (double alpha : {0.5, 1.0, 2.0}) {
    const int q = 5;
    const double z1 = alpha / (1 + alpha);
    auto f = [&](double z, int i, double di, int j, double dj) {
      Marks u = unit_marks(q);
      if (i) u[i - 1] += di;
      if (j) u[j - 1] += dj;
      return log_path_direct(z, u);
    };
    const double fz = (f(z1 + h, 0, 0, 0, 0) - f(z1 - h, 0, 0, 0, 0)) / (2 * h);
    const double fzz = (f(z1 + h, 0, 0, 0, 0) - 2 * f(z1, 0, 0, 0, 0) + f(z1 - h, 0, 0, 0, 0)) / (h * h);
    auto fi = [&](int i) { return (f(z1, i, h, 0, 0) - f(z1, i, -h, 0, 0)) / (2 * h); };
    auto fzi = [&](int i) {
      return (f(z1 + h, i, h, 0, 0) - f(z1 + h, i, -h, 0, 0) - f(z1 - h, i, h, 0, 0) + f(z1 - h, i, -h, 0, 0)) /
             (4 * h * h);
    };
    auto fij = [&](int i, int j) {
      if (i == j) return (f(z1, i, h, 0, 0) - 2 * f(z1, 0, 0, 0, 0) + f(z1, i, -h, 0, 0)) / (h * h);
      return (f(z1, i, h, j, h) - f(z1, i, h, j, -h) - f(z1, i, -h, j, h) + f(z1, i, -h, j, -h)) / (4 * h * h);
    };
    CHECK(fz == doctest::Approx(1 + alpha).epsilon(1e-6));
    CHECK(fzz == doctest::Approx((1 + alpha) * (1 + alpha)).epsilon(1e-5));
    const SymMatrix closed = hessian_H(alpha, q);
    for (int i = 2; i <= q; ++i) {
      for (int j = 2; j <= q; ++j) {
        const double route = -z1 * fzi(i) * fzi(j) / (fz + z1 * fzz) + fij(i, j) + (i == j ? fi(i) : 0.0);
        CHECK(std::abs(route - closed(i - 2, j - 2)) <= 1e-5);
      }
    }
  }
}

TEST_CASE("limit_law") {
  const LimitLaw simple = limit_law(1.0, 4, Model::simple);
  CHECK(simple.mean_coeffs == std::vector<double>{0.5, 0.25, 0.125});
  CHECK_FALSE(simple.poisson_lambda.has_value());
  CHECK(simple.hessian.size() == 3);

  const LimitLaw multi = limit_law(1.0, 2, Model::multigraph);
  REQUIRE(multi.poisson_lambda.has_value());
  CHECK(*multi.poisson_lambda == doctest::Approx(0.25));
  CHECK(multi.hessian(0, 0) == doctest::Approx(0.125));
  CHECK_THROWS_AS(limit_law(-1.0, 3, Model::simple), DomainError);
}
