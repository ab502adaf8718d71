#include "degseq/json_io.hpp"

#include <stdexcept>

namespace degseq {

using nlohmann::json;

namespace {

json matrix_to_json(const SymMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.size(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.size(); ++j) row.push_back(m(i, j));
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

json census_to_json(const MPoly& poly) {
  json terms = json::array();
  for (const auto& [e, c] : poly.terms())
    terms.push_back({{"exponents", e}, {"num", c.get_num().get_str()}, {"den", c.get_den().get_str()}});
  return terms;
}

MPoly census_from_json(const json& j, std::size_t nvars) {
  if (!j.is_array()) throw std::invalid_argument("census JSON must be an array of terms");
  MPoly poly(nvars);
  for (const auto& term : j) {
    const auto e = term.at("exponents").get<Exponents>();
    Rational c(mpz_class(term.at("num").get<std::string>()), mpz_class(term.at("den").get<std::string>()));
    c.canonicalize();
    poly.add_term(e, c);
  }
  return poly;
}

json pmf_to_json(const JointPmf& pmf) {
  json out = json::array();
  for (const auto& [counts, p] : pmf)
    out.push_back({{"counts", counts},
                   {"num", p.get_num().get_str()},
                   {"den", p.get_den().get_str()},
                   {"probability", p.get_d()}});
  return out;
}

json limit_law_to_json(const LimitLaw& law) {
  json j = {{"alpha", law.alpha},
            {"q", law.q},
            {"model", to_string(law.model)},
            {"mean_coeffs", law.mean_coeffs},
            {"hessian", matrix_to_json(law.hessian)}};
  j["poisson_lambda"] = law.poisson_lambda ? json(*law.poisson_lambda) : json(nullptr);
  return j;
}

json moment_report_to_json(const MomentReport& report) {
  return {{"n1", report.n1},
          {"n2", report.n2},
          {"N", report.samples},
          {"empirical_mean", report.empirical_mean},
          {"empirical_cov_standardized", matrix_to_json(report.empirical_cov)},
          {"standard_errors", report.standard_errors}};
}

json verdict_to_json(const Verdict& verdict) {
  json values = json::object();
  for (const auto& [k, v] : verdict.values) values[k] = v;
  return {{"passed", verdict.passed}, {"summary", verdict.summary}, {"values", values}};
}

json experiment_sidecar(const ExperimentConfig& config) {
  const auto& p = config.params;
  return {{"seed", config.seed},   {"n1", p.n1},         {"n2", p.n2},
          {"alpha", p.alpha},      {"q", p.q},           {"model", to_string(p.model)},
          {"N", config.replications}, {"workers", config.workers}};
}

json saddle_to_json(const SaddleData& data) {
  return {{"zeta", data.zeta},
          {"phi2", data.phi2},
          {"a0", data.a0},
          {"path_at_zeta", data.path_at_zeta},
          {"u", data.u}};
}

}  // namespace degseq
