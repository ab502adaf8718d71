#pragma once

#include <json.hpp>

#include "degseq/exact.hpp"
#include "degseq/sampler.hpp"
#include "degseq/saddle.hpp"
#include "degseq/stats.hpp"

namespace degseq {

// Canonical form: [{exponents: [e1..eq], num: "..", den: ".."}, ...] sorted
// lexicographically by exponents. num/den are decimal strings so that
// arbitrarily large integers survive.
nlohmann::json census_to_json(const MPoly& poly);
MPoly census_from_json(const nlohmann::json& j, std::size_t nvars);

// [{counts: [m1..mq], num, den, probability}, ...] in lexicographic order.
nlohmann::json pmf_to_json(const JointPmf& pmf);

nlohmann::json limit_law_to_json(const LimitLaw& law);
nlohmann::json moment_report_to_json(const MomentReport& report);
nlohmann::json verdict_to_json(const Verdict& verdict);
nlohmann::json experiment_sidecar(const ExperimentConfig& config);
nlohmann::json saddle_to_json(const SaddleData& data);

}  // namespace degseq
