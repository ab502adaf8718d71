#include "degseq/stats.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/poisson.hpp>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "degseq/errors.hpp"

namespace degseq {

namespace {

void check_law_width(const SampleRows& rows, const LimitLaw& law) {
  for (const auto& row : rows)
    if (row.size() != law.mean_coeffs.size())
      throw std::invalid_argument("sample row width does not match q - 1");
}

}  // namespace

SampleRows counts_matrix(const std::vector<ComponentCensus>& samples, int q) {
  SampleRows rows;
  rows.reserve(samples.size());
  for (const auto& s : samples) {
    if (s.q() < q) throw std::invalid_argument("census has fewer than q counts");
    std::vector<double> row;
    for (int j = 2; j <= q; ++j) row.push_back(s.count(j));
    rows.push_back(std::move(row));
  }
  return rows;
}

SampleRows standardize(const SampleRows& u_rows, const LimitLaw& law, long n1) {
  check_law_width(u_rows, law);
  const double half = static_cast<double>(n1) / 2.0;
  const double scale = std::sqrt(half);
  SampleRows out = u_rows;
  for (auto& row : out)
    for (std::size_t k = 0; k < row.size(); ++k) row[k] = (row[k] - law.mean_coeffs[k] * half) / scale;
  return out;
}

SampleRows standardize(const std::vector<ComponentCensus>& samples, const LimitLaw& law, long n1) {
  return standardize(counts_matrix(samples, law.q), law, n1);
}

SampleRows unstandardize(const SampleRows& v_rows, const LimitLaw& law, long n1) {
  check_law_width(v_rows, law);
  const double half = static_cast<double>(n1) / 2.0;
  const double scale = std::sqrt(half);
  SampleRows out = v_rows;
  for (auto& row : out)
    for (std::size_t k = 0; k < row.size(); ++k) row[k] = row[k] * scale + law.mean_coeffs[k] * half;
  return out;
}

MomentReport moment_report(const SampleRows& v_rows, long n1, long n2) {
  if (v_rows.size() < 2) throw std::invalid_argument("moment report needs at least two samples");
  const std::size_t d = v_rows.front().size();
  const auto n = static_cast<double>(v_rows.size());
  MomentReport r;
  r.n1 = n1;
  r.n2 = n2;
  r.samples = static_cast<long>(v_rows.size());
  r.empirical_mean.assign(d, 0.0);
  for (const auto& row : v_rows) {
    if (row.size() != d) throw std::invalid_argument("ragged sample matrix");
    for (std::size_t k = 0; k < d; ++k) r.empirical_mean[k] += row[k];
  }
  for (auto& m : r.empirical_mean) m /= n;
  r.empirical_cov = SymMatrix(d);
  for (const auto& row : v_rows)
    for (std::size_t a = 0; a < d; ++a)
      for (std::size_t b = a; b < d; ++b)
        r.empirical_cov(a, b) += (row[a] - r.empirical_mean[a]) * (row[b] - r.empirical_mean[b]);
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = a; b < d; ++b) {
      r.empirical_cov(a, b) /= (n - 1.0);
      r.empirical_cov(b, a) = r.empirical_cov(a, b);
    }
  for (std::size_t k = 0; k < d; ++k) r.standard_errors.push_back(std::sqrt(r.empirical_cov(k, k) / n));
  return r;
}

Verdict gaussian_check(const MomentReport& report, const SymMatrix& reference, double tol_mean_se,
                       double tol_cov_abs) {
  if (report.samples < 1000) throw DomainError("gaussian_check needs at least 1000 samples");
  const std::size_t d = report.empirical_mean.size();
  if (reference.size() != d) throw std::invalid_argument("reference covariance has wrong size");
  Verdict v;
  v.passed = true;
  double worst_mean = 0.0;
  double worst_cov = 0.0;
  for (std::size_t k = 0; k < d; ++k) {
    const double z = std::abs(report.empirical_mean[k]) / report.standard_errors[k];
    worst_mean = std::max(worst_mean, z);
    if (!(z <= tol_mean_se)) v.passed = false;
    for (std::size_t l = 0; l < d; ++l) {
      const double diff = std::abs(report.empirical_cov(k, l) - reference(k, l));
      worst_cov = std::max(worst_cov, diff);
      if (!(diff <= tol_cov_abs)) v.passed = false;
    }
  }
  v.values = {{"max_mean_over_se", worst_mean}, {"max_cov_abs_diff", worst_cov}};
  std::ostringstream os;
  os << "max |mean|/SE = " << worst_mean << " (tol " << tol_mean_se << "), max |cov - H| = " << worst_cov
     << " (tol " << tol_cov_abs << ")";
  v.summary = os.str();
  return v;
}

Verdict gaussian_check(const MomentReport& report, const LimitLaw& law, double tol_mean_se,
                       double tol_cov_abs) {
  return gaussian_check(report, law.hessian, tol_mean_se, tol_cov_abs);
}

ChiSquareResult chi_square_gof(const std::vector<double>& observed,
                               const std::vector<double>& expected_probs, double min_expected) {
  if (observed.size() != expected_probs.size() || observed.empty())
    throw std::invalid_argument("chi_square_gof: observed and expected sizes differ");
  double n = 0.0;
  for (double o : observed) n += o;
  struct Bin {
    double observed, expected;
  };
  std::vector<Bin> bins;
  bool impossible_outcome = false;
  for (std::size_t k = 0; k < observed.size(); ++k) {
    if (expected_probs[k] <= 0.0 && observed[k] > 0.0) impossible_outcome = true;
    bins.push_back({observed[k], expected_probs[k] * n});
  }
  std::sort(bins.begin(), bins.end(), [](const Bin& a, const Bin& b) { return a.expected < b.expected; });
  while (bins.size() > 1 && bins.front().expected < min_expected) {
    bins[1].observed += bins[0].observed;
    bins[1].expected += bins[0].expected;
    bins.erase(bins.begin());
    std::sort(bins.begin(), bins.end(), [](const Bin& a, const Bin& b) { return a.expected < b.expected; });
  }
  ChiSquareResult r;
  r.bins = bins.size();
  for (const auto& b : bins) {
    if (b.expected > 0.0) {
      const double diff = b.observed - b.expected;
      r.statistic += diff * diff / b.expected;
    } else if (b.observed > 0.0) {
      r.statistic = std::numeric_limits<double>::infinity();
    }
  }
  r.dof = static_cast<int>(bins.size()) - 1;
  if (impossible_outcome) {
    r.statistic = std::numeric_limits<double>::infinity();
    r.p_value = 0.0;
  } else if (r.dof < 1) {
    r.p_value = 1.0;
  } else if (!std::isfinite(r.statistic)) {
    r.p_value = 0.0;
  } else {
    r.p_value = boost::math::cdf(
        boost::math::complement(boost::math::chi_squared(r.dof), r.statistic));
  }
  return r;
}

Verdict poisson_check(const std::vector<double>& u1_samples, double lambda, double significance) {
  if (u1_samples.size() < 2) throw std::invalid_argument("poisson_check needs samples");
  if (!(lambda > 0.0)) throw DomainError("Poisson parameter must be positive");
  const auto n = static_cast<double>(u1_samples.size());
  const boost::math::poisson_distribution<double> pois(lambda);

  int cut = 1;
  while (n * boost::math::cdf(boost::math::complement(pois, static_cast<double>(cut))) >= 5.0) ++cut;
  // Buckets 0..cut-1 and >= cut; n P(X >= cut) >= 5 holds on exit.
  std::vector<double> observed(static_cast<std::size_t>(cut) + 1, 0.0);
  std::vector<double> probs(static_cast<std::size_t>(cut) + 1, 0.0);
  for (int k = 0; k < cut; ++k) probs[static_cast<std::size_t>(k)] = boost::math::pdf(pois, k);
  probs[static_cast<std::size_t>(cut)] =
      boost::math::cdf(boost::math::complement(pois, static_cast<double>(cut - 1)));
  for (double x : u1_samples) {
    const auto k = static_cast<std::size_t>(std::min<double>(x, cut));
    observed[k] += 1.0;
  }
  const ChiSquareResult chi = chi_square_gof(observed, probs);

  const Moments m = sample_moments(u1_samples);
  const double mean_se = std::sqrt(lambda / n);
  const double var_se = std::sqrt((lambda + 2.0 * lambda * lambda) / n);
  const double mean_z = std::abs(m.mean - lambda) / mean_se;
  const double var_z = std::abs(m.variance - lambda) / var_se;

  Verdict v;
  v.passed = chi.p_value >= significance && mean_z <= 4.0 && var_z <= 4.0;
  v.values = {{"mean", m.mean},         {"variance", m.variance}, {"mean_over_se", mean_z},
              {"variance_over_se", var_z}, {"chi2", chi.statistic}, {"p_value", chi.p_value}};
  std::ostringstream os;
  os << "mean " << m.mean << " (" << mean_z << " SE), variance " << m.variance << " (" << var_z
     << " SE), chi2 p = " << chi.p_value << " vs lambda " << lambda;
  v.summary = os.str();
  return v;
}

double min_eigenvalue(const SymMatrix& m) {
  const auto n = static_cast<Eigen::Index>(m.size());
  if (n == 0) return 0.0;
  Eigen::MatrixXd a(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      const double x = m(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
      const double y = m(static_cast<std::size_t>(j), static_cast<std::size_t>(i));
      if (std::abs(x - y) > 1e-12 * std::max(1.0, std::abs(x)))
        throw std::invalid_argument("psd_check: matrix is not symmetric");
      a(i, j) = x;
    }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

Verdict psd_check(const SymMatrix& m, double tol) {
  const double lo = min_eigenvalue(m);
  Verdict v;
  v.passed = lo >= -tol;
  v.values = {{"min_eigenvalue", lo}};
  std::ostringstream os;
  os << "min eigenvalue " << lo << " (tol " << -tol << ")";
  v.summary = os.str();
  return v;
}

Moments sample_moments(const std::vector<double>& xs) {
  if (xs.size() < 2) throw std::invalid_argument("sample_moments needs two samples");
  Moments m;
  for (double x : xs) m.mean += x;
  m.mean /= static_cast<double>(xs.size());
  for (double x : xs) m.variance += (x - m.mean) * (x - m.mean);
  m.variance /= static_cast<double>(xs.size() - 1);
  return m;
}

Moments pmf_moments(const std::vector<Rational>& pmf) {
  Rational mean(0), second(0);
  for (std::size_t k = 0; k < pmf.size(); ++k) {
    const Rational kk(static_cast<long>(k));
    mean += kk * pmf[k];
    second += kk * kk * pmf[k];
  }
  return Moments{mean.get_d(), Rational(second - mean * mean).get_d()};
}

}  // namespace degseq
