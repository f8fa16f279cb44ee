#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "csci/adjust.hpp"
#include "csci/binom_ci.hpp"
#include "csci/data.hpp"
#include "csci/lrt.hpp"
#include "csci/rng.hpp"
#include "csci/valid_ci.hpp"

namespace csci {

struct ScenarioSpec {
    std::string name;
    std::string note;  // ground-truth curves spelled out for output metadata
    std::function<double(double)> F_cdf;
    std::function<double(double)> F_quantile;  // exact inverse of F_cdf
    std::function<double(Rng&)> sample_c;      // one uniform draw per call
};

const std::vector<ScenarioSpec>& builtin_scenarios();
const ScenarioSpec& find_scenario(const std::string& name);

struct MethodSpec {
    enum class Kind { valid, lrt, abf };
    Kind kind = Kind::valid;
    std::string label;  // CSV method name, e.g. "abf-midp-edge-middle"
    long m = 0;         // valid: window (0 -> ceil(n^(2/3))); abf: even m (0 -> per-point MSE rule)
    SupportKind support = SupportKind::continuous;
    CiVariant variant = CiVariant::clopper_pearson;  // abf
    AdjustmentPlan plan;                             // abf post-processing
    LrtConfig lrt;
};

// Default label for a spec, derived from its knobs.
std::string method_label(const MethodSpec& spec);

struct SimConfig {
    std::string scenario = "case1";
    long n = 50;
    long reps = 1000;
    double level = 0.95;
    std::vector<MethodSpec> methods;
    std::vector<double> eval;  // F-quantiles, or raw times when eval_is_time
    bool eval_is_time = false;
    std::uint64_t seed = 1;
};

// 19 quantiles 0.05 .. 0.95.
std::vector<double> default_eval_quantiles();

struct SimPointStat {
    double coverage;
    double mc_se;  // sqrt(coverage (1-coverage) / reps)
    double mean_length;
};

struct SimResult {
    std::string scenario;
    long n;
    long reps;
    double level;
    std::uint64_t seed;
    std::vector<std::string> method_labels;
    std::vector<double> eval_q;   // true F at each eval point
    std::vector<double> eval_t;   // corresponding times
    std::vector<std::vector<SimPointStat>> stats;  // [method][point]
};

// Monte Carlo coverage and mean length. Replication r draws from a generator
// keyed by (seed, r) and fills its own result slot, so output is identical
// for any worker count; the final reduction runs in replication order.
SimResult run_coverage(const SimConfig& cfg);

struct LengthSweepResult {
    std::vector<long> m_list;
    std::vector<double> mean_length;  // per m, guaranteed-coverage interval
};

// Mean length of the windowed interval at the F-quantile q, per window size;
// each replication reuses one sample across all m values.
LengthSweepResult length_sweep(const std::string& scenario, long n,
                               const std::vector<long>& m_list, double level,
                               long reps, std::uint64_t seed, double q = 0.5);

// CSV with header: method,scenario,n,eval_q,coverage,mc_se,mean_length,reps,seed
std::string sim_result_csv(const SimResult& result);

} // namespace csci
