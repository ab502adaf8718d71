#include "degseq/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <sstream>

#include "degseq/errors.hpp"
#include "degseq/exact.hpp"
#include "degseq/sampler.hpp"
#include "degseq/stats.hpp"

namespace degseq {

namespace {

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

std::vector<double> unit_vector(std::size_t d, std::size_t k, double h) {
  std::vector<double> t(d, 0.0);
  t[k] = h;
  return t;
}

SymMatrix scaled(SymMatrix m, double s) {
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j) m(i, j) *= s;
  return m;
}

// Empirical vs exact distribution of full census vectors.
ChiSquareResult census_gof(const std::vector<ComponentCensus>& samples, const JointPmf& pmf) {
  std::map<CountVector, double> observed;
  for (const auto& s : samples) observed[s.counts] += 1.0;
  std::vector<double> obs, probs;
  double unexplained = 0.0;
  for (const auto& [counts, p] : pmf) {
    auto it = observed.find(counts);
    obs.push_back(it == observed.end() ? 0.0 : it->second);
    probs.push_back(p.get_d());
    if (it != observed.end()) observed.erase(it);
  }
  for (const auto& [counts, n] : observed) unexplained += n;
  if (unexplained > 0.0) {
    // An outcome the exact law gives probability zero.
    obs.push_back(unexplained);
    probs.push_back(0.0);
  }
  return chi_square_gof(obs, probs);
}

double runtime_limit_seconds(int id) {
  switch (id) {
    case 1: return 60.0;
    case 2: return 120.0;
    case 8: return 300.0;
    default: return 0.0;
  }
}

}  // namespace

SymMatrix finite_difference_hessian_chi(double alpha, int q, double h) {
  const auto d = static_cast<std::size_t>(q - 1);
  SymMatrix out(d);
  const double c0 = chi(alpha, std::vector<double>(d, 0.0));
  for (std::size_t i = 0; i < d; ++i) {
    const double plus = chi(alpha, unit_vector(d, i, h));
    const double minus = chi(alpha, unit_vector(d, i, -h));
    out(i, i) = (plus - 2.0 * c0 + minus) / (h * h);
    for (std::size_t j = i + 1; j < d; ++j) {
      auto at = [&](double si, double sj) {
        std::vector<double> t(d, 0.0);
        t[i] = si * h;
        t[j] = sj * h;
        return chi(alpha, t);
      };
      out(i, j) = (at(1, 1) - at(1, -1) - at(-1, 1) + at(-1, -1)) / (4.0 * h * h);
      out(j, i) = out(i, j);
    }
  }
  return out;
}

std::vector<double> finite_difference_gradient_chi(double alpha, int q, double h) {
  const auto d = static_cast<std::size_t>(q - 1);
  std::vector<double> g(d);
  for (std::size_t i = 0; i < d; ++i)
    g[i] = (chi(alpha, unit_vector(d, i, h)) - chi(alpha, unit_vector(d, i, -h))) / (2.0 * h);
  return g;
}

CriterionResult check_exact_vs_brute_force_simple(const AcceptanceOptions&) {
  CriterionResult r{1, "exact GF equals brute-force enumeration (simple graphs)", true, "", 0.0};
  int instances = 0;
  for (long n1 : {0L, 2L, 4L}) {
    for (long n2 = 0; n2 <= 5; ++n2) {
      if (n1 + n2 < 2 || simple_class_empty(n1, n2)) continue;
      const auto p = GraphClassParams::from_counts(n1, n2, static_cast<int>(std::max(2L, n1 + n2)));
      const CensusPolynomial exact = graph_gf(p);
      const CensusPolynomial brute = brute_force_simple(p);
      ++instances;
      if (!(exact.poly == brute.poly)) {
        r.passed = false;
        r.detail += "mismatch at (" + std::to_string(n1) + "," + std::to_string(n2) + "): " +
                    exact.poly.to_string() + " vs " + brute.poly.to_string() + "; ";
      }
    }
  }
  if (r.passed) r.detail = std::to_string(instances) + " instances equal exactly";
  return r;
}

CriterionResult check_exact_vs_matching_oracle(const AcceptanceOptions& opt) {
  CriterionResult r{2, "exact GF equals stub-matching oracle (multigraphs)", true, "", 0.0};
  const long max_edges = opt.quick ? 5 : kBruteForceMultigraphMaxEdges;
  int instances = 0;
  for (long n1 = 0; n1 / 2 <= max_edges; n1 += 2) {
    for (long n2 = 0; n1 / 2 + n2 <= max_edges; ++n2) {
      if (n1 + n2 == 0) continue;
      const auto p = GraphClassParams::from_counts(n1, n2, static_cast<int>(std::max(2L, n1 + n2)),
                                                   Model::multigraph);
      const CensusPolynomial exact = graph_gf(p);
      const CensusPolynomial oracle = brute_force_multigraph(p);
      ++instances;
      if (!(exact.poly == oracle.poly)) {
        r.passed = false;
        r.detail += "mismatch at (" + std::to_string(n1) + "," + std::to_string(n2) + "); ";
      }
    }
  }
  if (r.passed) r.detail = std::to_string(instances) + " instances with m <= " + std::to_string(max_edges) + " equal exactly";
  return r;
}

CriterionResult check_saddle_closed_form(const AcceptanceOptions&) {
  CriterionResult r{3, "saddle point and phi'' closed forms at u = 1", true, "", 0.0};
  double worst_zeta = 0.0, worst_phi = 0.0;
  for (double alpha : {0.1, 0.5, 1.0, 2.0, 10.0}) {
    const Marks one = unit_marks(4);
    const double zeta = solve_zeta(alpha, one);
    const double dz = std::abs(zeta - alpha / (1.0 + alpha));
    const double dp = std::abs(phi_second(alpha, one, zeta) - alpha * (1.0 + alpha));
    worst_zeta = std::max(worst_zeta, dz);
    worst_phi = std::max(worst_phi, dp);
    if (!(dz <= 1e-12 && dp <= 1e-10)) r.passed = false;
  }
  r.detail = "max |zeta - a/(1+a)| = " + fmt(worst_zeta) + ", max |phi'' - a(1+a)| = " + fmt(worst_phi);
  return r;
}

CriterionResult check_hessian_identity(const AcceptanceOptions& opt) {
  CriterionResult r{4, "closed-form H(alpha) equals finite-difference Hessian of chi", true, "", 0.0};
  double worst = 0.0;
  for (double alpha : {0.5, 1.0, 2.0}) {
    const SymMatrix closed = scaled(hessian_H(alpha, 5), opt.h_scale);
    const SymMatrix fd = finite_difference_hessian_chi(alpha, 5);
    for (std::size_t i = 0; i < closed.size(); ++i)
      for (std::size_t j = 0; j < closed.size(); ++j) worst = std::max(worst, std::abs(closed(i, j) - fd(i, j)));
  }
  if (!(worst <= 1e-5)) r.passed = false;
  const SymMatrix h1 = scaled(hessian_H(1.0, 3), opt.h_scale);
  const double spots[3][2] = {{h1(0, 0), 0.125}, {h1(0, 1), -0.125}, {h1(1, 1), 0.1875}};
  double worst_spot = 0.0;
  for (const auto& s : spots) worst_spot = std::max(worst_spot, std::abs(s[0] - s[1]));
  if (!(worst_spot <= 1e-12)) r.passed = false;
  r.detail = "max |H - FD| = " + fmt(worst) + " (tol 1e-05), max spot error = " + fmt(worst_spot);
  return r;
}

CriterionResult check_hessian_psd(const AcceptanceOptions& opt) {
  CriterionResult r{5, "H(alpha) is positive semi-definite", true, "", 0.0};
  double lowest = std::numeric_limits<double>::infinity();
  for (double alpha : {0.1, 0.5, 1.0, 2.0, 10.0}) {
    for (int q = 2; q <= 8; ++q) {
      const Verdict v = psd_check(scaled(hessian_H(alpha, q), opt.h_scale), 1e-9);
      lowest = std::min(lowest, v.values.front().second);
      if (!v.passed) r.passed = false;
    }
  }
  r.detail = "min eigenvalue over grid = " + fmt(lowest);
  return r;
}

CriterionResult check_contour_extraction(const AcceptanceOptions&) {
  CriterionResult r{6, "contour integral matches exact coefficients", true, "", 0.0};
  const std::vector<std::pair<Marks, std::vector<Rational>>> points = {
      {{1.0, 1.0, 1.0, 1.0}, {Rational(1), Rational(1), Rational(1), Rational(1)}},
      {{1.0, 1.1, 0.9, 1.0}, {Rational(1), make_rational(11, 10), make_rational(9, 10), Rational(1)}}};
  double worst = 0.0;
  for (auto [n1, n2] : {std::pair{2L, 1L}, std::pair{20L, 10L}}) {
    for (const auto& [u, u_exact] : points) {
      const auto p = GraphClassParams::from_counts(n1, n2, 4);
      const double exact = path_cycle_coefficient(p, u_exact).get_d();
      const double numeric = contour_extract(p, u, 1024);
      worst = std::max(worst, std::abs(numeric - exact) / std::abs(exact));
    }
  }
  if (!(worst <= 1e-8)) r.passed = false;
  r.detail = "max relative error = " + fmt(worst) + " (tol 1e-08)";
  return r;
}

CriterionResult check_laplace_asymptotics(const AcceptanceOptions&) {
  CriterionResult r{7, "Laplace estimate converges to exact G(1)", true, "", 0.0};
  double previous = std::numeric_limits<double>::infinity();
  double last = 0.0;
  std::ostringstream os;
  for (long n1 : {40L, 80L, 160L, 320L}) {
    const auto p = GraphClassParams::from_alpha(1.0, n1, 2);
    const double exact = log_rational(graph_gf_value(p, {Rational(1), Rational(1)}));
    const double approx = asymptotic_log_gf(p, unit_marks(2));
    const double gap = std::abs(exact - approx);
    os << "n1=" << n1 << ": |log ratio| " << fmt(gap) << "; ";
    if (!(gap < previous)) r.passed = false;
    previous = gap;
    last = approx - exact;
  }
  const double ratio = std::exp(last);
  os << "ratio at n1=320: " << fmt(ratio);
  if (!(std::abs(ratio - 1.0) <= 0.05)) r.passed = false;
  r.detail = os.str();
  return r;
}

CriterionResult check_gaussian_limit(const AcceptanceOptions& opt) {
  CriterionResult r{8, "Monte Carlo Gaussian limit with covariance H(1)", true, "", 0.0};
  ExperimentConfig config;
  config.params = GraphClassParams::from_alpha(1.0, 2000, 4, Model::simple);
  config.replications = opt.quick ? 3000 : 20000;
  config.seed = derive_seed(opt.seed, 8);
  config.workers = opt.workers;
  const auto start = std::chrono::steady_clock::now();
  const auto samples = run_experiment(config);
  const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const LimitLaw law = limit_law(1.0, 4, Model::simple);
  const MomentReport report =
      moment_report(standardize(samples, law, config.params.n1), config.params.n1, config.params.n2);
  const Verdict v = gaussian_check(report, scaled(law.hessian, opt.h_scale), 4.0, 0.06);
  r.passed = v.passed && elapsed < 300.0;
  r.detail = v.summary + ", N = " + std::to_string(config.replications) + ", sampling " + fmt(elapsed) + " s";
  return r;
}

CriterionResult check_poisson_limit(const AcceptanceOptions& opt) {
  CriterionResult r{9, "loops in the configuration model are Poisson(alpha/(2(1+alpha)))", true, "", 0.0};
  ExperimentConfig config;
  config.params = GraphClassParams::from_alpha(1.0, 2000, 2, Model::multigraph);
  config.replications = opt.quick ? 5000 : 20000;
  config.seed = derive_seed(opt.seed, 9);
  config.workers = opt.workers;
  const auto samples = run_experiment(config);
  std::vector<double> loops;
  loops.reserve(samples.size());
  for (const auto& s : samples) loops.push_back(s.count(1));
  const LimitLaw law = limit_law(1.0, 2, Model::multigraph);
  const Verdict v = poisson_check(loops, *law.poisson_lambda, kDefaultSignificance);
  r.passed = v.passed;
  r.detail = v.summary;
  return r;
}

CriterionResult check_structural_invariants(const AcceptanceOptions& opt) {
  CriterionResult r{10, "structural invariants on every sampled graph", true, "", 0.0};
  const long n1 = 20, n2 = 10;
  const long draws = opt.quick ? 10000 : 100000;
  long violations = 0;
  Rng rng(derive_seed(opt.seed, 10));
  for (long k = 0; k < draws; ++k) {
    for (Model model : {Model::multigraph, Model::simple}) {
      try {
        const StubMultigraph g =
            model == Model::simple ? sample_simple(n1, n2, rng) : sample_multigraph(n1, n2, rng);
        const ComponentCensus c = census(g, 4);
        if (c.component_sizes_sum != static_cast<std::uint64_t>(n1 + n2)) ++violations;
        if (c.path_count != static_cast<std::uint64_t>(n1 / 2)) ++violations;
        if (model == Model::simple && compensation_factor(g) != 1) ++violations;
      } catch (const StructuralError&) {
        ++violations;
      }
    }
  }
  r.passed = violations == 0;
  r.detail = std::to_string(violations) + " violations over " + std::to_string(draws) +
             " multigraph + " + std::to_string(draws) + " simple samples";
  return r;
}

CriterionResult check_small_instance_distribution(const AcceptanceOptions& opt) {
  CriterionResult r{11, "small-instance census distribution matches exact law", true, "", 0.0};
  const long draws = opt.quick ? 20000 : 100000;
  double lowest_p = 1.0;
  int instances = 0;

  auto sample = [&](long n1, long n2, Model model, std::uint64_t stream) {
    ExperimentConfig config;
    config.params = GraphClassParams::from_counts(n1, n2, static_cast<int>(std::max(2L, n1 + n2)), model);
    config.replications = draws;
    config.seed = derive_seed(opt.seed, stream);
    config.workers = opt.workers;
    return run_experiment(config);
  };

  {
    const auto p = GraphClassParams::from_counts(4, 4, 8);
    const ChiSquareResult chi = census_gof(sample(4, 4, Model::simple, 1100), joint_pmf(p));
    lowest_p = std::min(lowest_p, chi.p_value);
    ++instances;
    if (!(chi.p_value >= kDefaultSignificance)) {
      r.passed = false;
      r.detail += "simple (4,4) p = " + fmt(chi.p_value) + "; ";
    }
  }
  for (long n1 = 0; n1 / 2 <= 5; n1 += 2) {
    for (long n2 = 0; n1 / 2 + n2 <= 5; ++n2) {
      if (n1 + n2 == 0) continue;
      const auto p = GraphClassParams::from_counts(n1, n2, static_cast<int>(std::max(2L, n1 + n2)),
                                                   Model::multigraph);
      const JointPmf exact = pmf_from_census(brute_force_multigraph(p));
      const ChiSquareResult chi =
          census_gof(sample(n1, n2, Model::multigraph, 1200 + static_cast<std::uint64_t>(10 * n1 + n2)), exact);
      lowest_p = std::min(lowest_p, chi.p_value);
      ++instances;
      if (!(chi.p_value >= kDefaultSignificance)) {
        r.passed = false;
        r.detail += "multigraph (" + std::to_string(n1) + "," + std::to_string(n2) + ") p = " + fmt(chi.p_value) + "; ";
      }
    }
  }
  r.detail += std::to_string(instances) + " instances, " + std::to_string(draws) +
              " draws each, min p = " + fmt(lowest_p);
  return r;
}

const std::vector<CriterionFn>& all_criteria() {
  static const std::vector<CriterionFn> fns = {
      check_exact_vs_brute_force_simple, check_exact_vs_matching_oracle, check_saddle_closed_form,
      check_hessian_identity,            check_hessian_psd,              check_contour_extraction,
      check_laplace_asymptotics,         check_gaussian_limit,           check_poisson_limit,
      check_structural_invariants,       check_small_instance_distribution};
  return fns;
}

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opt,
                                            const std::function<void(const CriterionResult&)>& report) {
  std::vector<CriterionResult> results;
  int id = 0;
  for (CriterionFn fn : all_criteria()) {
    ++id;
    const auto start = std::chrono::steady_clock::now();
    CriterionResult r;
    try {
      r = fn(opt);
    } catch (const std::exception& e) {
      r.id = id;
      r.passed = false;
      r.detail = std::string("exception: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (const double limit = runtime_limit_seconds(id); limit > 0.0 && r.seconds >= limit) {
      r.passed = false;
      r.detail += "; runtime " + std::to_string(r.seconds) + " s exceeds " + std::to_string(limit) + " s";
    }
    if (report) report(r);
    results.push_back(std::move(r));
  }
  return results;
}

}  // namespace degseq
