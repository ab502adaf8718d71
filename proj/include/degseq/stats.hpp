#pragma once

#include <string>
#include <utility>
#include <vector>

#include "degseq/sampler.hpp"
#include "degseq/saddle.hpp"

namespace degseq {

// One row per sample; column k holds the variable of index k + 2 (U_2..U_q
// or V_2..V_q).
using SampleRows = std::vector<std::vector<double>>;

SampleRows counts_matrix(const std::vector<ComponentCensus>& samples, int q);

// V_j = (U_j - mean_coeff_j n1/2) / sqrt(n1/2).
SampleRows standardize(const SampleRows& u_rows, const LimitLaw& law, long n1);
SampleRows standardize(const std::vector<ComponentCensus>& samples, const LimitLaw& law, long n1);
SampleRows unstandardize(const SampleRows& v_rows, const LimitLaw& law, long n1);

struct MomentReport {
  long n1 = 0;
  long n2 = 0;
  long samples = 0;
  std::vector<double> empirical_mean;
  SymMatrix empirical_cov;  // unbiased (N - 1) normalisation
  std::vector<double> standard_errors;
};

MomentReport moment_report(const SampleRows& v_rows, long n1, long n2);

struct Verdict {
  bool passed = false;
  std::string summary;
  std::vector<std::pair<std::string, double>> values;
};

Verdict gaussian_check(const MomentReport& report, const LimitLaw& law, double tol_mean_se,
                       double tol_cov_abs);
// Same test against an explicit reference covariance.
Verdict gaussian_check(const MomentReport& report, const SymMatrix& reference, double tol_mean_se,
                       double tol_cov_abs);

struct ChiSquareResult {
  double statistic = 0.0;
  int dof = 0;
  double p_value = 1.0;
  std::size_t bins = 0;  // after pooling
};

// Pearson goodness of fit. Bins whose expected count is below min_expected
// are pooled, smallest first, until every bin reaches it.
ChiSquareResult chi_square_gof(const std::vector<double>& observed,
                               const std::vector<double>& expected_probs,
                               double min_expected = 5.0);

inline constexpr double kDefaultSignificance = 1e-3;

// Chi-square against Poisson(lambda) with buckets 0..K-1 and >=K (K is the
// largest cut with expected tail count >= 5), plus mean and variance within
// 4 standard errors of lambda.
Verdict poisson_check(const std::vector<double>& u1_samples, double lambda,
                      double significance = kDefaultSignificance);

double min_eigenvalue(const SymMatrix& m);
// Throws std::invalid_argument on an asymmetric input.
Verdict psd_check(const SymMatrix& m, double tol);

struct Moments {
  double mean = 0.0;
  double variance = 0.0;
};

Moments sample_moments(const std::vector<double>& xs);
Moments pmf_moments(const std::vector<Rational>& pmf);

}  // namespace degseq
