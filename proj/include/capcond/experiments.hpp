#pragma once

#include <omp.h>

#include <cstdint>
#include <exception>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "capcond/bounds.hpp"
#include "capcond/samplers.hpp"
#include "capcond/sic.hpp"

namespace capcond {

enum class ExperimentKind { Tail, Expectation, Wendel, Tube, SamplerCheck, PropertySuite };
std::string_view kind_name(ExperimentKind k);

enum class Verdict { Pass, Fail, Inconclusive, Informational };
std::string_view verdict_name(Verdict v);

/// Raised when more than 0.1% of the samples of a run could not be solved.
class ExperimentAborted : public Error {
public:
  using Error::Error;
};

struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::Tail;
  int m = 2;
  int n = 5;
  double alpha = kPi / 6;
  double beta = 0.0;
  std::string h_table;  ///< empty means h = 1
  DeltaMode delta_mode = DeltaMode::Lemma;
  std::uint64_t N = 100000;
  std::uint64_t seed = 1;
  std::vector<double> t_grid;  ///< empty means the default geometric grid
  /// "random", "equal" (all rows one random point), "great-circle", or "file:PATH".
  std::string center = "random";
  std::vector<int> k_values{4, 6, 8};
  double phi = 0.0;  ///< 0 selects the built-in configurations
  int workers = 0;   ///< 0 means the OpenMP default

  AdversarialParams params() const;
};

/// Throws ConfigError for out-of-range fields.
void validate(const ExperimentConfig& cfg);

/// 12 geometric points from the feasible-tail threshold T to 1000 T.
std::vector<double> default_t_grid(const AdversarialParams& p);

/// Rows of the center instance named by cfg.center.
Instance make_centers(const ExperimentConfig& cfg);

/// Deterministic seed for an independent family of streams.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag);

inline constexpr double kOverflowCond = 1e15;

struct SampleRecord {
  std::uint64_t index = 0;
  std::uint64_t seed = 0;
  FeasibilityClass cls = FeasibilityClass::IllPosed;
  double rho = 0.0;
  double cond = 0.0;
  double displacement = 0.0;  ///< max-row distance to the center instance
  bool failed = false;

  bool overflow() const { return !(cond <= kOverflowCond); }
  std::optional<double> ln_cond() const;
  std::optional<double> ipm_proxy(int m, int n) const;
};

enum class Execution { Serial, Parallel };

/// Runs body(i) for i in [0, count). Each index must write only its own slot,
/// which makes the result independent of the schedule.
template <class F>
void for_each_index(std::uint64_t count, Execution exec, int workers, F&& body) {
  const auto n = static_cast<long long>(count);
  if (exec == Execution::Serial) {
    for (long long i = 0; i < n; ++i) {
      body(static_cast<std::uint64_t>(i));
    }
    return;
  }
  const int threads = workers > 0 ? workers : omp_get_max_threads();
  std::exception_ptr error;
#pragma omp parallel for schedule(dynamic, 64) num_threads(threads)
  for (long long i = 0; i < n; ++i) {
    try {
      body(static_cast<std::uint64_t>(i));
    } catch (...) {
#pragma omp critical(capcond_for_each_index)
      if (!error) {
        error = std::current_exception();
      }
    }
  }
  if (error) {
    std::rethrow_exception(error);
  }
}

/// Draws N instances and records class and condition of each.
std::vector<SampleRecord> draw_records(const InstanceSampler& sampler, std::uint64_t seed,
                                       std::uint64_t N, Execution exec = Execution::Parallel,
                                       int workers = 0);

/// Feasibility (rho < pi/2 up to the ill-posed band, inclusive) of N sets of
/// k uniform points of S^m.
std::vector<std::uint8_t> wendel_flags(int k, int m, std::uint64_t seed, std::uint64_t N,
                                       Execution exec = Execution::Parallel, int workers = 0);

struct ClassCounts {
  std::uint64_t sf = 0, ip = 0, inf = 0, overflow = 0, failed = 0;
};
ClassCounts count_classes(const std::vector<SampleRecord>& records);

struct TailRow {
  double t;
  double emp_F, se_F, bound_F;
  bool covered;  ///< t is at or above the feasible-tail threshold
  bool vacuous_F;
  std::optional<bool> pass_F;
  double emp_I, se_I, bound_I;
  bool vacuous_I;
  bool pass_I;
};

struct ExpectationReport {
  double mean = 0.0;
  double se = 0.0;
  std::uint64_t used = 0;
  std::uint64_t overflow = 0;
  double bound = 0.0;
  bool informational = false;
  std::optional<bool> pass;
};

struct WendelRow {
  int k;
  std::uint64_t N;
  std::uint64_t feasible;
  double p_hat;
  Dyadic p_exact;
  double tolerance;  ///< 4 sqrt(p(1-p)/N)
  bool pass;
};

struct WendelReport {
  std::vector<WendelRow> rows;
  std::vector<std::pair<int, double>> tail_partial_sums;
};

struct TubeConfig {
  std::string label;
  int m;
  double alpha;
  double phi;
  double cap_radius;     ///< radius of K
  double center_offset;  ///< d(a, center of K)
};

/// Three configurations for dimension m, each with sin(phi) <= sigma/(2m).
std::vector<TubeConfig> default_tube_configs(int m);

struct TubeRow {
  TubeConfig config;
  double eps, sigma, bound;
  double outer, se_outer, inner, se_inner;
  bool pass_outer, pass_inner;
};

struct PropertyCheck {
  std::string name;
  std::uint64_t attempted = 0;
  std::uint64_t qualifying = 0;
  std::uint64_t violations = 0;
  std::uint64_t skipped = 0;
  double worst_margin = 0.0;  ///< largest observed lhs/rhs (or lhs - rhs) ratio
  Verdict verdict = Verdict::Inconclusive;
};

struct SamplerCheck {
  std::uint64_t N = 0;
  double threshold = 0.0;  ///< 1.63 / sqrt(N)
  double ks_radial = 0.0;
  std::optional<double> ks_direction;
  std::optional<double> ks_rejection;
  std::uint64_t max_support_violation = 0;  ///< draws outside the cap
  bool pass = false;
};

struct ExperimentResult {
  ExperimentConfig config;
  std::vector<SampleRecord> records;
  ClassCounts counts;
  std::optional<std::vector<TailRow>> tail;
  std::optional<ExpectationReport> expectation;
  std::optional<WendelReport> wendel;
  std::optional<std::vector<TubeRow>> tube;
  std::optional<std::vector<PropertyCheck>> properties;
  std::optional<SamplerCheck> sampler;
  Verdict verdict = Verdict::Inconclusive;
};

ExperimentResult run_tail_experiment(const ExperimentConfig& cfg);
ExperimentResult run_expectation_experiment(const ExperimentConfig& cfg);
ExperimentResult run_wendel_experiment(const ExperimentConfig& cfg);
ExperimentResult run_tube_experiment(const ExperimentConfig& cfg,
                                     std::vector<TubeConfig> configs = {});
ExperimentResult run_property_suite(const ExperimentConfig& cfg);
ExperimentResult run_sampler_check(const ExperimentConfig& cfg);
ExperimentResult run_experiment(const ExperimentConfig& cfg);

/// Two-sided one-sample Kolmogorov-Smirnov statistic of sorted values whose
/// CDF values are given in the same order.
double ks_statistic(const std::vector<double>& sorted_cdf_values);

} // namespace capcond
