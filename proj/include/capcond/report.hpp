#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "capcond/experiments.hpp"

namespace capcond {

using Json = nlohmann::ordered_json;

/// Echo of every field that influences results. The worker count is left
/// out so outputs match across degrees of parallelism.
Json config_json(const ExperimentConfig& cfg);

/// Summary with keys config, counts, tail_table, expectation, wendel_table,
/// tube_table, property_suite, sampler_check and verdict; unused sections are null.
Json summary_json(const ExperimentResult& res);

/// Per-sample CSV: sample_index,seed_hi,seed_lo,class,rho,cond,ln_cond,ipm_proxy.
void write_samples_csv(std::ostream& out, const ExperimentResult& res);

/// Writes samples.csv and summary.json into dir, creating it if needed.
void persist(const ExperimentResult& res, const std::filesystem::path& dir);

/// Structural problems of a summary document; empty when it is valid.
std::vector<std::string> validate_summary(const nlohmann::json& doc);

/// One human-readable line per table row.
std::string describe(const ExperimentResult& res);

} // namespace capcond
