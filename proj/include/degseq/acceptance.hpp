#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "degseq/saddle.hpp"

namespace degseq {

struct AcceptanceOptions {
  bool quick = false;
  unsigned workers = 1;
  std::uint64_t seed = 20240607;
  // Multiplies the reference H(alpha) in the covariance checks. Anything
  // other than 1 is a negative control and must make verification fail.
  double h_scale = 1.0;
};

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

// Central finite-difference Hessian of chi at t = 0, indexed 2..q.
SymMatrix finite_difference_hessian_chi(double alpha, int q, double h = 1e-5);
std::vector<double> finite_difference_gradient_chi(double alpha, int q, double h = 1e-5);

CriterionResult check_exact_vs_brute_force_simple(const AcceptanceOptions& opt);
CriterionResult check_exact_vs_matching_oracle(const AcceptanceOptions& opt);
CriterionResult check_saddle_closed_form(const AcceptanceOptions& opt);
CriterionResult check_hessian_identity(const AcceptanceOptions& opt);
CriterionResult check_hessian_psd(const AcceptanceOptions& opt);
CriterionResult check_contour_extraction(const AcceptanceOptions& opt);
CriterionResult check_laplace_asymptotics(const AcceptanceOptions& opt);
CriterionResult check_gaussian_limit(const AcceptanceOptions& opt);
CriterionResult check_poisson_limit(const AcceptanceOptions& opt);
CriterionResult check_structural_invariants(const AcceptanceOptions& opt);
CriterionResult check_small_instance_distribution(const AcceptanceOptions& opt);

using CriterionFn = CriterionResult (*)(const AcceptanceOptions&);
const std::vector<CriterionFn>& all_criteria();

// Runs every criterion, calling report after each one.
std::vector<CriterionResult> run_acceptance(
    const AcceptanceOptions& opt,
    const std::function<void(const CriterionResult&)>& report = {});

}  // namespace degseq
