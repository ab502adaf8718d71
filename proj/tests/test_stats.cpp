#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <cmath>
#include <random>

#include "degseq/errors.hpp"
#include "degseq/exact.hpp"
#include "degseq/stats.hpp"

using namespace degseq;

namespace {

// Rows drawn from N(0, cov) via the symmetric square root of cov.
SampleRows gaussian_rows(const SymMatrix& cov, int n, std::uint64_t seed) {
  const auto d = static_cast<Eigen::Index>(cov.size());
  Eigen::MatrixXd c(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) c(i, j) = cov(i, j);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(c);
  const Eigen::VectorXd root = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  const Eigen::MatrixXd factor = es.eigenvectors() * root.asDiagonal();
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  SampleRows rows;
  for (int k = 0; k < n; ++k) {
    Eigen::VectorXd z(d);
    for (Eigen::Index i = 0; i < d; ++i) z(i) = normal(rng);
    const Eigen::VectorXd x = factor * z;
    rows.emplace_back(x.data(), x.data() + d);
  }
  return rows;
}

std::vector<double> poisson_draws(double lambda, int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::poisson_distribution<int> pois(lambda);
  std::vector<double> xs;
  for (int k = 0; k < n; ++k) xs.push_back(pois(rng));
  return xs;
}

SymMatrix scaled(SymMatrix m, double s) {
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j) m(i, j) *= s;
  return m;
}

}  // namespace

TEST_CASE("standardize") {
  const LimitLaw law = limit_law(1.0, 3, Model::simple);
  const long n1 = 8;
  const SampleRows centred{{2.0, 1.0}, {2.0, 1.0}};
  for (const auto& row : standardize(centred, law, n1))
    for (double v : row) CHECK(v == 0.0);

  const SampleRows one{{3.0, 1.0}};
  CHECK(standardize(one, law, n1)[0][0] == doctest::Approx(0.5));

  const SampleRows rows{{3.0, 7.0}, {0.0, 2.0}, {11.0, 1.0}};
  const SampleRows back = unstandardize(standardize(rows, law, n1), law, n1);
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t k = 0; k < 2; ++k) CHECK(back[r][k] == doctest::Approx(rows[r][k]));

  CHECK_THROWS_AS(standardize(SampleRows{{1.0}}, law, n1), std::invalid_argument);
}

TEST_CASE("gaussian_check") {
  const LimitLaw law = limit_law(1.0, 4, Model::simple);
  const auto good = moment_report(gaussian_rows(law.hessian, 100000, 3), 2000, 1000);
  const Verdict pass = gaussian_check(good, law, 4.0, 0.05);
  CHECK_MESSAGE(pass.passed, pass.summary);

  const auto wide = moment_report(gaussian_rows(scaled(law.hessian, 2.0), 100000, 4), 2000, 1000);
  CHECK_FALSE(gaussian_check(wide, law, 4.0, 0.05).passed);

  SampleRows shifted = gaussian_rows(law.hessian, 5000, 5);
  for (auto& row : shifted) row[0] += 0.2;
  CHECK_FALSE(gaussian_check(moment_report(shifted, 2000, 1000), law, 4.0, 0.05).passed);

  CHECK_THROWS_AS(gaussian_check(moment_report(gaussian_rows(law.hessian, 500, 6), 10, 5), law, 4.0, 0.05),
                  DomainError);
}

TEST_CASE("moment_report") {
  const SampleRows rows{{1.0, 2.0}, {3.0, 2.0}, {5.0, 8.0}};
  const MomentReport r = moment_report(rows, 4, 2);
  CHECK(r.empirical_mean[0] == doctest::Approx(3.0));
  CHECK(r.empirical_cov(0, 0) == doctest::Approx(4.0));
  CHECK(r.empirical_cov(0, 1) == doctest::Approx(6.0));
  CHECK(r.empirical_cov(1, 0) == r.empirical_cov(0, 1));
  CHECK(r.standard_errors[0] == doctest::Approx(std::sqrt(4.0 / 3.0)));
}

TEST_CASE("chi_square_gof") {
  const ChiSquareResult exact = chi_square_gof({50, 50}, {0.5, 0.5});
  CHECK(exact.statistic == 0.0);
  CHECK(exact.p_value == doctest::Approx(1.0));

  // (60-50)^2/50 * 2 = 4 on one degree of freedom.
  const ChiSquareResult r = chi_square_gof({60, 40}, {0.5, 0.5});
  CHECK(r.statistic == doctest::Approx(4.0));
  CHECK(r.dof == 1);
  CHECK(r.p_value == doctest::Approx(0.0455003).epsilon(1e-5));

  // The 0.01-probability bin (expected 1) is pooled into its neighbour.
  const ChiSquareResult pooled = chi_square_gof({49, 50, 1}, {0.49, 0.5, 0.01});
  CHECK(pooled.bins == 2);

  // Mass on an outcome of probability zero is an outright rejection.
  CHECK(chi_square_gof({100, 0, 100}, {0.5, 0.5, 0.0}).p_value == 0.0);
}

TEST_CASE("poisson_check") {
  const Verdict ok = poisson_check(poisson_draws(0.25, 20000, 8), 0.25);
  CHECK_MESSAGE(ok.passed, ok.summary);
  CHECK_FALSE(poisson_check(poisson_draws(0.5, 20000, 9), 0.25).passed);
}

TEST_CASE("psd_check") {
  SymMatrix id(3);
  for (std::size_t k = 0; k < 3; ++k) id(k, k) = 1.0;
  CHECK(psd_check(id, 1e-9).passed);

  SymMatrix neg(2);
  neg(0, 0) = 1.0;
  neg(1, 1) = -1.0;
  CHECK_FALSE(psd_check(neg, 1e-9).passed);

  for (double alpha : {0.1, 0.5, 1.0, 2.0, 10.0}) CHECK(psd_check(hessian_H(alpha, 8), 1e-9).passed);

  SymMatrix asym(2);
  asym(0, 1) = 1.0;
  CHECK_THROWS_AS(psd_check(asym, 1e-9), std::invalid_argument);
}

TEST_CASE("exact moments of small instances match Monte Carlo") {
  for (Model model : {Model::simple, Model::multigraph}) {
    ExperimentConfig config;
    config.params = GraphClassParams::from_counts(4, 4, 4, model);
    config.replications = 100000;
    config.seed = model == Model::simple ? 31 : 32;
    const auto samples = run_experiment(config);
    for (int j = (model == Model::simple ? 2 : 1); j <= 4; ++j) {
      const Moments exact = pmf_moments(marginal_pmf(config.params, j));
      std::vector<double> xs;
      for (const auto& s : samples) xs.push_back(s.count(j));
      const Moments mc = sample_moments(xs);
      double m4 = 0;
      for (double x : xs) m4 += std::pow(x - mc.mean, 4);
      m4 /= static_cast<double>(xs.size());
      const double n = static_cast<double>(xs.size());
      CAPTURE(j);
      CHECK(std::abs(mc.mean - exact.mean) <= 4 * std::sqrt(exact.variance / n) + 1e-12);
      CHECK(std::abs(mc.variance - exact.variance) <= 4 * std::sqrt((m4 - mc.variance * mc.variance) / n) + 1e-12);
    }
  }
}

TEST_CASE("exact mean per path approaches the limit coefficient") {
  const double alpha = 1.0;
  for (int j : {2, 3, 4}) {
    double prev = 1e300;
    for (long n1 : {8L, 16L, 32L, 64L, 128L}) {
      const auto p = GraphClassParams::from_alpha(alpha, n1, j);
      const double mean = pmf_moments(marginal_pmf(p, j)).mean / (static_cast<double>(n1) / 2.0);
      const double err = std::abs(mean - gradient_chi(alpha, j).back());
      CAPTURE(j);
      CAPTURE(n1);
      CHECK(err < prev);
      prev = err;
    }
  }
}

TEST_CASE("Monte Carlo variance per path is close to H_jj") {
  ExperimentConfig config;
  config.params = GraphClassParams::from_alpha(1.0, 2000, 4, Model::simple);
  config.replications = 20000;
  config.seed = 41;
  const auto samples = run_experiment(config);
  const SymMatrix h = hessian_H(1.0, 4);
  for (int j = 2; j <= 4; ++j) {
    std::vector<double> xs;
    for (const auto& s : samples) xs.push_back(s.count(j));
    const double var = sample_moments(xs).variance / 1000.0;
    CHECK(std::abs(var - h(j - 2, j - 2)) <= 0.06);
  }
}
