// degseq: exact, asymptotic and Monte Carlo component censuses of random
// graphs whose vertices have degree 1 or 2.
#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>

#include "degseq/acceptance.hpp"
#include "degseq/errors.hpp"
#include "degseq/exact.hpp"
#include "degseq/json_io.hpp"
#include "degseq/sampler.hpp"
#include "degseq/saddle.hpp"

using namespace degseq;
using nlohmann::json;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitCheckFailure = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InstanceFlags {
  long n1 = -1;
  std::optional<long> n2;
  std::optional<double> alpha;
  int q = 4;
  std::string model = "simple";

  void add_to(CLI::App* cmd, const std::string& default_model) {
    model = default_model;
    cmd->add_option("--n1", n1, "number of degree-1 vertices (even)")->required();
    auto* n2_opt = cmd->add_option("--n2", n2, "number of degree-2 vertices");
    auto* alpha_opt = cmd->add_option("--alpha", alpha, "ratio 2 n2 / n1; n2 = floor(alpha n1 / 2)");
    n2_opt->excludes(alpha_opt);
    cmd->add_option("--q", q, "largest marked component size")->capture_default_str();
    cmd->add_option("--model", model, "simple | multigraph")->capture_default_str();
  }

  GraphClassParams params() const {
    if (n1 < 0) throw UsageError("--n1 must be non-negative");
    const Model m = parse_model(model);
    if (alpha) {
      if (!(*alpha > 0.0)) throw UsageError("--alpha must be positive");
      return GraphClassParams::from_alpha(*alpha, n1, q, m);
    }
    if (!n2) throw UsageError("one of --n2 or --alpha is required");
    if (*n2 < 0) throw UsageError("--n2 must be non-negative");
    return GraphClassParams::from_counts(n1, *n2, q, m);
  }
};

void write_json(const json& j, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << j.dump(2) << '\n';
    return;
  }
  std::ofstream out(path);
  if (!out) throw UsageError("cannot open " + path + " for writing");
  out << j.dump(2) << '\n';
}

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("DEGSEQ_SEED")) return std::stoull(env);
  return 0;
}

unsigned default_workers() { return std::max(1U, std::thread::hardware_concurrency()); }

int run_exact(const InstanceFlags& flags, const std::string& output) {
  const GraphClassParams p = flags.params();
  if (p.n1 % 2 != 0) {
    std::cerr << "empty class: n1 odd\n";
    return kExitUsage;
  }
  const CensusPolynomial g = graph_gf(p);
  if (sgn(g.total) == 0) {
    std::cerr << "empty class: no graph with n1 = " << p.n1 << ", n2 = " << p.n2 << '\n';
    return kExitUsage;
  }
  const json census = census_to_json(g.poly);
  const json pmf = pmf_to_json(pmf_from_census(g));
  if (output.empty()) {
    write_json({{"n1", p.n1},
                {"n2", p.n2},
                {"q", p.q},
                {"model", to_string(p.model)},
                {"total", {{"num", g.total.get_num().get_str()}, {"den", g.total.get_den().get_str()}}},
                {"census", census},
                {"pmf", pmf}},
               "");
  } else {
    write_json(census, output + ".census.json");
    write_json(pmf, output + ".pmf.json");
  }
  return kExitPass;
}

int run_limit_law(double alpha, int q, const std::string& model, const std::string& output) {
  if (!(alpha > 0.0)) throw UsageError("--alpha must be positive");
  if (q < 2) throw UsageError("--q must be at least 2");
  write_json(limit_law_to_json(limit_law(alpha, q, parse_model(model))), output);
  return kExitPass;
}

int run_sample(const InstanceFlags& flags, long replications, std::optional<std::uint64_t> seed,
               unsigned workers, const std::string& output) {
  ExperimentConfig config;
  config.params = flags.params();
  config.replications = replications;
  config.seed = resolve_seed(seed);
  config.workers = workers == 0 ? default_workers() : workers;
  if (config.params.n1 % 2 != 0) {
    std::cerr << "empty class: n1 odd\n";
    return kExitUsage;
  }
  if (config.params.model == Model::simple && simple_class_empty(config.params.n1, config.params.n2)) {
    std::cerr << "empty class: no simple graph with n1 = " << config.params.n1
              << ", n2 = " << config.params.n2 << '\n';
    return kExitUsage;
  }
  const auto samples = run_experiment(config);
  if (output.empty() || output == "-") {
    write_census_csv(std::cout, samples, config.params.q);
  } else {
    std::ofstream out(output);
    if (!out) throw UsageError("cannot open " + output + " for writing");
    write_census_csv(out, samples, config.params.q);
    write_json(experiment_sidecar(config), output + ".json");
  }
  return kExitPass;
}

int run_asymptote(const InstanceFlags& flags, std::vector<double> u, int points, bool with_exact,
                  const std::string& output) {
  const GraphClassParams p = flags.params();
  if (u.empty()) u = unit_marks(p.q);
  if (static_cast<int>(u.size()) != p.q) throw UsageError("--u needs exactly q values (u_1..u_q)");
  const double alpha = 2.0 * static_cast<double>(p.n2) / static_cast<double>(p.n1);
  const SaddleData d = saddle_data(alpha, u, p.model);
  const double log_v = log_rational(v_factor(p.n1, p.n2));
  const double coefficient = contour_extract(p, u, d.zeta, points);
  json j = {{"n1", p.n1},
            {"n2", p.n2},
            {"alpha", alpha},
            {"q", p.q},
            {"model", to_string(p.model)},
            {"saddle", saddle_to_json(d)},
            {"log_gf_asymptotic", asymptotic_log_gf(p, u)},
            {"log_gf_contour", log_v + std::log(coefficient)},
            {"contour_points", points}};
  if (with_exact) {
    std::vector<Rational> ur;
    for (double x : u) ur.emplace_back(x);  // exact binary value of each double
    j["log_gf_exact"] = log_rational(graph_gf_value(p, ur));
  }
  write_json(j, output);
  return kExitPass;
}

int run_verify(bool quick, unsigned workers, std::optional<std::uint64_t> seed, const std::string& output) {
  AcceptanceOptions opt;
  opt.quick = quick;
  opt.workers = workers == 0 ? default_workers() : workers;
  if (seed) opt.seed = *seed;
  else if (std::getenv("DEGSEQ_SEED")) opt.seed = resolve_seed(std::nullopt);
  if (const char* scale = std::getenv("DEGSEQ_H_SCALE")) opt.h_scale = std::stod(scale);

  json criteria = json::array();
  bool all = true;
  run_acceptance(opt, [&](const CriterionResult& r) {
    all = all && r.passed;
    std::cerr << (r.passed ? "[PASS] " : "[FAIL] ") << "AC" << r.id << ' ' << r.name << ": " << r.detail
              << '\n';
    criteria.push_back(
        {{"id", r.id}, {"name", r.name}, {"passed", r.passed}, {"detail", r.detail}, {"seconds", r.seconds}});
  });
  write_json({{"passed", all}, {"quick", quick}, {"seed", opt.seed}, {"h_scale", opt.h_scale}, {"criteria", criteria}},
             output);
  return all ? kExitPass : kExitCheckFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Component censuses of random graphs with degrees 1 and 2"};
  app.require_subcommand(1);

  InstanceFlags exact_flags;
  std::string exact_output;
  auto* exact = app.add_subcommand("exact", "exact census polynomial and joint PMF");
  exact_flags.add_to(exact, "simple");
  exact->add_option("--output", exact_output, "file prefix; writes PREFIX.census.json and PREFIX.pmf.json");

  double law_alpha = 0.0;
  int law_q = 4;
  std::string law_model = "simple";
  std::string law_output;
  auto* law = app.add_subcommand("limit-law", "limiting mean coefficients, covariance H(alpha), Poisson parameter");
  law->add_option("--alpha", law_alpha, "ratio 2 n2 / n1")->required();
  law->add_option("--q", law_q, "largest marked component size")->capture_default_str();
  law->add_option("--model", law_model, "simple | multigraph")->capture_default_str();
  law->add_option("--output", law_output, "output JSON path (default stdout)");

  InstanceFlags sample_flags;
  long sample_n = 1;
  std::optional<std::uint64_t> sample_seed;
  unsigned sample_workers = 0;
  std::string sample_output;
  auto* sample = app.add_subcommand("sample", "Monte Carlo component censuses as CSV");
  sample_flags.add_to(sample, "multigraph");
  sample->add_option("--N", sample_n, "replications")->capture_default_str();
  sample->add_option("--seed", sample_seed, "RNG seed (default: $DEGSEQ_SEED, else 0)");
  sample->add_option("--workers", sample_workers, "worker threads (default: all cores)");
  sample->add_option("--output", sample_output, "CSV path (default stdout); sidecar at PATH.json");

  InstanceFlags asym_flags;
  std::vector<double> asym_u;
  int asym_points = 1024;
  bool asym_exact = false;
  std::string asym_output;
  auto* asym = app.add_subcommand("asymptote", "saddle point, Laplace estimate and contour integral");
  asym_flags.add_to(asym, "simple");
  asym->add_option("--u", asym_u, "marks u_1..u_q (default all 1)")->delimiter(',');
  asym->add_option("--points", asym_points, "trapezoid points on the contour")->capture_default_str();
  asym->add_flag("--exact", asym_exact, "also compute the exact value with rational arithmetic");
  asym->add_option("--output", asym_output, "output JSON path (default stdout)");

  bool verify_quick = false;
  unsigned verify_workers = 0;
  std::optional<std::uint64_t> verify_seed;
  std::string verify_output;
  auto* verify = app.add_subcommand("verify", "run every acceptance check");
  verify->add_flag("--quick", verify_quick, "reduced sample sizes");
  verify->add_option("--workers", verify_workers, "worker threads (default: all cores)");
  verify->add_option("--seed", verify_seed, "base seed");
  verify->add_option("--output", verify_output, "verdict JSON path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*exact) return run_exact(exact_flags, exact_output);
    if (*law) return run_limit_law(law_alpha, law_q, law_model, law_output);
    if (*sample) return run_sample(sample_flags, sample_n, sample_seed, sample_workers, sample_output);
    if (*asym) return run_asymptote(asym_flags, asym_u, asym_points, asym_exact, asym_output);
    if (*verify) return run_verify(verify_quick, verify_workers, verify_seed, verify_output);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const SamplingError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitCheckFailure;
  }
  return kExitUsage;
}
