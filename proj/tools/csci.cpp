#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <stdexcept>
#include <tuple>
#include <iostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "csci/abf.hpp"
#include "csci/adjust.hpp"
#include "csci/binom_ci.hpp"
#include "csci/data.hpp"
#include "csci/lrt.hpp"
#include "csci/npmle.hpp"
#include "csci/planner.hpp"
#include "csci/sim.hpp"
#include "csci/thread_pool.hpp"
#include "csci/valid_ci.hpp"

namespace {

constexpr const char* kVersion = "0.1.0";

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

std::string fnv1a_digest(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read '" + path + "'");
    std::uint64_t h = 14695981039346656037ull;
    char c;
    while (in.get(c)) {
        h ^= std::uint64_t(static_cast<unsigned char>(c));
        h *= 1099511628211ull;
    }
    char buf[24];
    std::snprintf(buf, sizeof buf, "%016llx", (unsigned long long)h);
    return buf;
}

std::string utc_now() {
    std::time_t t = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << content;
    if (!out) throw std::runtime_error("short write on '" + path + "'");
}

long parse_m_flag(const std::string& text) {
    if (text == "auto") return 0;
    char* end = nullptr;
    long v = std::strtol(text.c_str(), &end, 10);
    if (!end || *end != '\0' || v < 1)
        throw std::invalid_argument("--m expects 'auto' or a positive integer");
    return v;
}

struct MethodFlags {
    long m = 0;
    csci::CiVariant variant = csci::CiVariant::clopper_pearson;
    csci::AdjustmentPlan plan;
    csci::SupportKind support = csci::SupportKind::continuous;
    double lrt_critical = csci::kLrtCritical95;
    bool allow_midp_lu = false;
};

csci::MethodSpec build_method(const std::string& name, const MethodFlags& f) {
    using Kind = csci::MethodSpec::Kind;
    csci::MethodSpec ms;
    ms.support = f.support;
    ms.lrt = csci::LrtConfig{f.lrt_critical, 1e-4};
    if (name == "valid") {
        ms.kind = Kind::valid;
        ms.m = f.m;
    } else if (name == "lrt") {
        ms.kind = Kind::lrt;
    } else if (name == "abf") {
        ms.kind = Kind::abf;
        ms.variant = f.variant;
        ms.plan = f.plan;
        ms.m = f.m;
    } else if (name == "abf-cp-lu" || name == "cp-lu") {
        ms.kind = Kind::abf;
        ms.variant = csci::CiVariant::clopper_pearson;
        ms.plan = csci::make_plan({csci::AdjustStep::edge, csci::AdjustStep::lower_upper});
        ms.label = "abf-cp-lu";
        ms.m = f.m;
    } else if (name == "abf-midp-mv" || name == "midp-mv") {
        ms.kind = Kind::abf;
        ms.variant = csci::CiVariant::mid_p;
        ms.plan = csci::make_plan({csci::AdjustStep::edge, csci::AdjustStep::middle_value});
        ms.label = "abf-midp-mv";
        ms.m = f.m;
    } else {
        throw std::invalid_argument("unknown method '" + name + "'");
    }
    if (ms.kind == Kind::abf) {
        if (ms.m != 0 && (ms.m < 2 || ms.m % 2 != 0))
            throw std::invalid_argument("abf window --m must be even and >= 2 (or auto)");
        bool has_lu = false;
        for (csci::AdjustStep s : ms.plan.steps)
            has_lu = has_lu || s == csci::AdjustStep::lower_upper;
        if (ms.variant == csci::CiVariant::mid_p && has_lu && !f.allow_midp_lu)
            throw std::invalid_argument(
                "mid-p with the lower-upper adjustment shortens intervals twice and is "
                "refused; pass --allow-midp-lower-upper to override");
        ms.label = csci::method_label(ms);
    }
    if (ms.label.empty()) ms.label = csci::method_label(ms);
    return ms;
}

double resolve_lrt_critical(bool user_set, double flag_value, double level,
                            const std::vector<csci::MethodSpec>& methods) {
    bool has_lrt = false;
    for (const auto& m : methods) has_lrt = has_lrt || m.kind == csci::MethodSpec::Kind::lrt;
    if (user_set) return flag_value;
    if (has_lrt && level != 0.95)
        throw std::invalid_argument(
            "the built-in lrt critical value applies to level 0.95 only; pass "
            "--lrt-critical for other levels");
    return csci::kLrtCritical95;
}

nlohmann::ordered_json adjust_json(const csci::AdjustmentPlan& plan) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (csci::AdjustStep s : plan.steps) {
        if (s == csci::AdjustStep::edge) arr.push_back("edge");
        if (s == csci::AdjustStep::lower_upper) arr.push_back("lower-upper");
        if (s == csci::AdjustStep::middle_value) arr.push_back("middle-value");
    }
    return arr;
}

nlohmann::ordered_json methods_json(const std::vector<csci::MethodSpec>& methods) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& m : methods) {
        nlohmann::ordered_json one;
        one["label"] = m.label;
        switch (m.kind) {
            case csci::MethodSpec::Kind::valid:
                one["kind"] = "valid";
                one["m"] = m.m == 0 ? nlohmann::ordered_json("auto")
                                    : nlohmann::ordered_json(m.m);
                one["support"] =
                    m.support == csci::SupportKind::discrete ? "discrete" : "continuous";
                break;
            case csci::MethodSpec::Kind::lrt:
                one["kind"] = "lrt";
                one["critical_value"] = m.lrt.critical_value;
                one["grid_tol"] = m.lrt.grid_tol;
                break;
            case csci::MethodSpec::Kind::abf:
                one["kind"] = "abf";
                one["m"] = m.m == 0 ? nlohmann::ordered_json("auto")
                                    : nlohmann::ordered_json(m.m);
                one["variant"] =
                    m.variant == csci::CiVariant::mid_p ? "midp" : "cp";
                one["adjust"] = adjust_json(m.plan);
                break;
        }
        arr.push_back(std::move(one));
    }
    return arr;
}

void write_manifest(const std::string& output_path, nlohmann::ordered_json config,
                    const char* subcommand) {
    nlohmann::ordered_json m;
    m["tool"] = "csci";
    m["version"] = kVersion;
    m["subcommand"] = subcommand;
    m["timestamp_utc"] = utc_now();
    m["config"] = std::move(config);
    m["output"] = output_path;
    write_file(output_path + ".manifest.json", m.dump(2) + "\n");
}

// ---------------------------------------------------------------- ci

int cmd_ci(const std::string& input, const std::string& format, double level,
           std::vector<std::string> method_names, const std::string& m_str,
           const std::string& grid_kind, const std::string& adjust_str,
           const std::string& variant_str, bool lrt_critical_set, double lrt_critical,
           const std::string& support_str, bool allow_midp_lu,
           const std::string& output) {
    csci::CurrentStatusSample sample;
    if (format == "individual") {
        sample = csci::read_individual_csv_file(input);
    } else if (format == "grouped") {
        sample = csci::expand_grouped(csci::read_grouped_csv_file(input));
    } else {
        throw std::invalid_argument("--format expects individual or grouped");
    }
    if (sample.n() == 0) throw std::invalid_argument("input holds no observations");

    MethodFlags flags;
    flags.m = parse_m_flag(m_str);
    if (variant_str == "cp") flags.variant = csci::CiVariant::clopper_pearson;
    else if (variant_str == "midp") flags.variant = csci::CiVariant::mid_p;
    else throw std::invalid_argument("--variant expects cp or midp");
    if (!adjust_str.empty()) flags.plan = csci::parse_adjust_spec(adjust_str);
    if (support_str == "continuous") flags.support = csci::SupportKind::continuous;
    else if (support_str == "discrete") flags.support = csci::SupportKind::discrete;
    else throw std::invalid_argument("--support expects continuous or discrete");
    flags.allow_midp_lu = allow_midp_lu;
    flags.lrt_critical = lrt_critical;

    if (method_names.empty())
        method_names = {"valid", "abf-cp-lu", "abf-midp-mv", "lrt"};
    std::vector<csci::MethodSpec> methods;
    for (const auto& name : method_names) methods.push_back(build_method(name, flags));
    const double crit = resolve_lrt_critical(lrt_critical_set, lrt_critical, level, methods);
    for (auto& m : methods) m.lrt.critical_value = crit;

    // Evaluation grid.
    std::vector<double> grid;
    if (grid_kind == "file") {
        grid = sample.times;
        grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    } else if (grid_kind == "support") {
        const double lo = sample.times.front(), hi = sample.times.back();
        if (hi <= lo) {
            grid = {lo};
        } else {
            for (int i = 0; i <= 200; ++i)
                grid.push_back(lo + (hi - lo) * double(i) / 200.0);
        }
    } else {
        throw std::invalid_argument("--grid expects file or support");
    }
    const std::size_t np = grid.size();

    const csci::StepCdf fit = csci::npmle_fit(sample);
    bool need_auto_window = false;
    for (const auto& m : methods)
        need_auto_window = need_auto_window ||
                           (m.kind == csci::MethodSpec::Kind::abf && m.m == 0);
    const double h_g = need_auto_window ? csci::silverman_bandwidth(sample.times) : 0.0;

    std::string csv = "t,npmle,lower,upper,method\n";
    std::vector<std::pair<std::string, std::size_t>> clip_counts;
    for (const auto& spec : methods) {
        csci::ConfidenceCurve curve;
        curve.grid = grid;
        curve.lower.resize(np);
        curve.upper.resize(np);
        curve.level = level;
        curve.method = spec.label;

        csci::parallel_for(long(np), csci::resolve_threads(), [&](long lo, long hi) {
            for (long p = lo; p < hi; ++p) {
                const double t = grid[std::size_t(p)];
                double l = 0.0, u = 1.0;
                switch (spec.kind) {
                    case csci::MethodSpec::Kind::valid: {
                        csci::ValidCiConfig vc{spec.m, level, spec.support};
                        std::tie(l, u) = csci::valid_interval(sample, t, vc);
                        break;
                    }
                    case csci::MethodSpec::Kind::lrt: {
                        std::tie(l, u) = csci::lrt_interval_fitted(sample, fit, t, spec.lrt);
                        break;
                    }
                    case csci::MethodSpec::Kind::abf: {
                        csci::AbfConfig ac;
                        ac.level = level;
                        ac.variant = spec.variant;
                        long m = spec.m;
                        if (m == 0) {
                            csci::NuisanceEstimates est =
                                csci::estimate_nuisances(sample, fit, h_g, t, ac.kernel);
                            m = csci::mdagger_star(sample.n(), est);
                        }
                        csci::BinomLimits lim =
                            csci::abf_interval_fitted(sample, fit, t, m, ac);
                        l = lim.lower;
                        u = lim.upper;
                        break;
                    }
                }
                curve.lower[std::size_t(p)] = l;
                curve.upper[std::size_t(p)] = u;
            }
        });

        if (spec.kind == csci::MethodSpec::Kind::abf && !spec.plan.steps.empty()) {
            std::size_t clipped = 0;
            curve = csci::apply_plan(spec.plan, std::move(curve), &clipped);
            if (clipped > 0) {
                clip_counts.emplace_back(spec.label, clipped);
                std::cerr << "warning: " << spec.label << ": clipped " << clipped
                          << " crossed limit(s) after adjustment\n";
            }
        }

        for (std::size_t p = 0; p < np; ++p) {
            csv += fmt(grid[p]) + "," + fmt(fit(grid[p])) + "," + fmt(curve.lower[p]) +
                   "," + fmt(curve.upper[p]) + "," + spec.label + "\n";
        }
    }

    write_file(output, csv);

    nlohmann::ordered_json cfg;
    cfg["input"] = {{"path", input}, {"format", format}, {"fnv1a64", fnv1a_digest(input)}};
    cfg["level"] = level;
    cfg["grid"] = grid_kind;
    cfg["grid_points"] = np;
    cfg["methods"] = methods_json(methods);
    nlohmann::ordered_json clips = nlohmann::ordered_json::object();
    for (const auto& [label, count] : clip_counts) clips[label] = count;
    cfg["clipped_after_adjustment"] = std::move(clips);
    write_manifest(output, std::move(cfg), "ci");
    return 0;
}

// ---------------------------------------------------------------- simulate

int cmd_simulate(const std::string& scenario, long n, long reps, double level,
                 std::vector<std::string> method_names, const std::string& m_str,
                 const std::string& adjust_str, const std::string& variant_str,
                 bool lrt_critical_set, double lrt_critical,
                 const std::string& support_str, bool allow_midp_lu,
                 std::uint64_t seed, std::vector<double> eval_q,
                 const std::string& output) {
    MethodFlags flags;
    flags.m = parse_m_flag(m_str);
    if (variant_str == "cp") flags.variant = csci::CiVariant::clopper_pearson;
    else if (variant_str == "midp") flags.variant = csci::CiVariant::mid_p;
    else throw std::invalid_argument("--variant expects cp or midp");
    if (!adjust_str.empty()) flags.plan = csci::parse_adjust_spec(adjust_str);
    if (support_str == "continuous") flags.support = csci::SupportKind::continuous;
    else if (support_str == "discrete") flags.support = csci::SupportKind::discrete;
    else throw std::invalid_argument("--support expects continuous or discrete");
    flags.allow_midp_lu = allow_midp_lu;
    flags.lrt_critical = lrt_critical;

    if (method_names.empty()) method_names = {"valid"};
    std::vector<csci::MethodSpec> methods;
    for (const auto& name : method_names) methods.push_back(build_method(name, flags));
    const double crit = resolve_lrt_critical(lrt_critical_set, lrt_critical, level, methods);
    for (auto& m : methods) m.lrt.critical_value = crit;

    csci::SimConfig cfg;
    cfg.scenario = scenario;
    cfg.n = n;
    cfg.reps = reps;
    cfg.level = level;
    cfg.methods = methods;
    cfg.eval = std::move(eval_q);
    cfg.seed = seed;

    const csci::SimResult result = csci::run_coverage(cfg);
    write_file(output, csci::sim_result_csv(result));

    nlohmann::ordered_json jc;
    jc["scenario"] = scenario;
    jc["scenario_note"] = csci::find_scenario(scenario).note;
    jc["n"] = n;
    jc["reps"] = reps;
    jc["level"] = level;
    jc["seed"] = seed;
    jc["eval_q"] = result.eval_q;
    jc["methods"] = methods_json(methods);
    write_manifest(output, std::move(jc), "simulate");
    return 0;
}

// ---------------------------------------------------------------- plan-m

int cmd_plan_m(const std::vector<long>& ns, const std::vector<double>& fs,
               const std::vector<double>& rs, double level, const std::string& output) {
    std::string csv = "n,F_t,r_t,level,m_min,e_ratio,m_n23,len_min,len_n23\n";
    for (long n : ns) {
        for (double F : fs) {
            for (double r : rs) {
                const csci::PlannerInput in{n, F, r, level};
                const csci::PlanResult res = csci::m_min_search(in);
                const long m23 = std::min(csci::default_m(n), n);
                const double len_min = csci::expected_length(in, res.m_min);
                const double len_23 = csci::expected_length(in, m23);
                csv += std::to_string(n) + "," + fmt(F) + "," + fmt(r) + "," + fmt(level) +
                       "," + std::to_string(res.m_min) + "," + fmt(res.e_ratio) + "," +
                       std::to_string(m23) + "," + fmt(len_min) + "," + fmt(len_23) + "\n";
            }
        }
    }
    write_file(output, csv);

    nlohmann::ordered_json cfg;
    cfg["n"] = ns;
    cfg["F_t"] = fs;
    cfg["r_t"] = rs;
    cfg["level"] = level;
    write_manifest(output, std::move(cfg), "plan-m");
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Pointwise confidence intervals for an event-time distribution "
                 "estimated from current status data"};
    app.require_subcommand(1);

    // ci
    auto* ci = app.add_subcommand("ci", "Confidence curves for a data file");
    std::string ci_input, ci_output;
    std::string ci_format = "individual", ci_m = "auto", ci_grid = "file";
    std::string ci_adjust, ci_variant = "cp", ci_support = "continuous";
    std::vector<std::string> ci_methods;
    double ci_level = 0.95, ci_lrt_crit = csci::kLrtCritical95;
    bool ci_allow = false;
    ci->add_option("--input", ci_input, "input CSV path")->required();
    ci->add_option("--format", ci_format, "individual|grouped");
    ci->add_option("--level", ci_level, "confidence level (default 0.95)");
    ci->add_option("--method", ci_methods,
                   "repeatable: valid|lrt|abf|abf-cp-lu|abf-midp-mv (default: all four "
                   "of valid, abf-cp-lu, abf-midp-mv, lrt)");
    ci->add_option("--m", ci_m, "window size: auto or positive integer");
    ci->add_option("--grid", ci_grid,
                   "file = distinct input times; support = 201-point span sweep");
    ci->add_option("--adjust", ci_adjust, "for --method abf: e.g. edge,lower-upper or edge,middle");
    ci->add_option("--variant", ci_variant, "for --method abf: cp|midp");
    auto* ci_crit_opt =
        ci->add_option("--lrt-critical", ci_lrt_crit, "lrt critical value override");
    ci->add_option("--support", ci_support, "valid method tie handling: continuous|discrete");
    ci->add_flag("--allow-midp-lower-upper", ci_allow,
                 "permit the refused midp + lower-upper combination");
    ci->add_option("--output", ci_output, "output CSV path")->required();

    // simulate
    auto* sim = app.add_subcommand("simulate", "Monte Carlo coverage study");
    std::string sim_scenario = "case1", sim_output;
    std::string sim_m = "auto", sim_adjust, sim_variant = "cp", sim_support = "continuous";
    std::vector<std::string> sim_methods;
    std::vector<double> sim_eval;
    long sim_n = 50, sim_reps = 1000;
    double sim_level = 0.95, sim_lrt_crit = csci::kLrtCritical95;
    std::uint64_t sim_seed = 1;
    bool sim_allow = false;
    sim->add_option("--scenario", sim_scenario, "scenario name (see README)");
    sim->add_option("--n", sim_n, "sample size per replication");
    sim->add_option("--reps", sim_reps, "replications");
    sim->add_option("--level", sim_level, "confidence level");
    sim->add_option("--method", sim_methods, "repeatable (default: valid)");
    sim->add_option("--m", sim_m, "window size: auto or positive integer");
    sim->add_option("--adjust", sim_adjust, "for --method abf");
    sim->add_option("--variant", sim_variant, "for --method abf: cp|midp");
    auto* sim_crit_opt =
        sim->add_option("--lrt-critical", sim_lrt_crit, "lrt critical value override");
    sim->add_option("--support", sim_support, "valid method tie handling");
    sim->add_flag("--allow-midp-lower-upper", sim_allow,
                  "permit the refused midp + lower-upper combination");
    sim->add_option("--seed", sim_seed, "base seed; replication r uses stream (seed, r)");
    sim->add_option("--eval-q", sim_eval,
                    "repeatable eval F-quantiles (default 0.05..0.95 by 0.05)");
    sim->add_option("--output", sim_output, "output CSV path")->required();

    // plan-m
    auto* plan = app.add_subcommand("plan-m", "Expected-length window planning");
    std::vector<long> plan_n;
    std::vector<double> plan_f, plan_r;
    double plan_level = 0.95;
    std::string plan_output;
    plan->add_option("--n", plan_n, "repeatable sample sizes")->required();
    plan->add_option("--F", plan_f, "repeatable F(t) values in (0,1)")->required();
    plan->add_option("--r", plan_r, "repeatable density ratios f(t)/g(t)")->required();
    plan->add_option("--level", plan_level, "confidence level");
    plan->add_option("--output", plan_output, "output CSV path")->required();

    try {
        app.parse(argc, argv);
        if (ci->parsed())
            return cmd_ci(ci_input, ci_format, ci_level, ci_methods, ci_m, ci_grid,
                          ci_adjust, ci_variant, ci_crit_opt->count() > 0, ci_lrt_crit,
                          ci_support, ci_allow, ci_output);
        if (sim->parsed())
            return cmd_simulate(sim_scenario, sim_n, sim_reps, sim_level, sim_methods,
                                sim_m, sim_adjust, sim_variant, sim_crit_opt->count() > 0,
                                sim_lrt_crit, sim_support, sim_allow, sim_seed, sim_eval,
                                sim_output);
        if (plan->parsed())
            return cmd_plan_m(plan_n, plan_f, plan_r, plan_level, plan_output);
        throw std::logic_error("no subcommand dispatched");
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
