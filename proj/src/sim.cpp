#include "csci/sim.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <tuple>
#include <utility>

#include "csci/abf.hpp"
#include "csci/npmle.hpp"
#include "csci/special.hpp"
#include "csci/thread_pool.hpp"

namespace csci {

namespace {

double bisect_quantile(const std::function<double(double)>& cdf, double p,
                       double lo, double hi) {
    for (int i = 0; i < 200 && hi - lo > 1e-13 * std::max(1.0, std::abs(hi)); ++i) {
        const double mid = 0.5 * (lo + hi);
        (cdf(mid) < p ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

ScenarioSpec make_beta_scenario(const std::string& name, double a, double b) {
    ScenarioSpec sc;
    sc.name = name;
    char note[128];
    std::snprintf(note, sizeof note, "event times Beta(%g,%g); assessments Uniform(0,1)", a, b);
    sc.note = note;
    sc.F_cdf = [a, b](double t) {
        if (t <= 0.0) return 0.0;
        if (t >= 1.0) return 1.0;
        return reg_inc_beta(t, a, b);
    };
    sc.F_quantile = [a, b](double p) { return beta_quantile(p, a, b); };
    sc.sample_c = [](Rng& rng) { return rng.uniform(); };
    return sc;
}

std::vector<ScenarioSpec> make_scenarios() {
    std::vector<ScenarioSpec> out;

    {
        ScenarioSpec sc;
        sc.name = "case1";
        sc.note = "event times Exp(1); assessments Exp(1)";
        sc.F_cdf = [](double t) { return t <= 0.0 ? 0.0 : -std::expm1(-t); };
        sc.F_quantile = [](double p) { return -std::log1p(-p); };
        sc.sample_c = [](Rng& rng) { return -std::log1p(-rng.uniform()); };
        out.push_back(std::move(sc));
    }
    {
        ScenarioSpec sc;
        sc.name = "case2";
        sc.note = "event times with F(t)=1-exp(-t/3); assessments Uniform(0,5)";
        sc.F_cdf = [](double t) { return t <= 0.0 ? 0.0 : -std::expm1(-t / 3.0); };
        sc.F_quantile = [](double p) { return -3.0 * std::log1p(-p); };
        sc.sample_c = [](Rng& rng) { return 5.0 * rng.uniform(); };
        out.push_back(std::move(sc));
    }
    {
        ScenarioSpec sc;
        sc.name = "case3";
        sc.note =
            "event times with F(t)=.5(1-exp(-t/3))+.5(1-exp(-(t/10)^8)); "
            "assessments Uniform(0,15)";
        sc.F_cdf = [](double t) {
            if (t <= 0.0) return 0.0;
            const double w = std::pow(t / 10.0, 8.0);
            return -0.5 * std::expm1(-t / 3.0) - 0.5 * std::expm1(-w);
        };
        auto cdf = sc.F_cdf;
        sc.F_quantile = [cdf](double p) { return bisect_quantile(cdf, p, 0.0, 200.0); };
        sc.sample_c = [](Rng& rng) { return 15.0 * rng.uniform(); };
        out.push_back(std::move(sc));
    }

    const std::pair<double, double> shapes[] = {{1, 50},  {1, 7},      {1, 2},
                                                {1, 1},   {2, 1},      {7, 1},
                                                {50, 1},  {100, 100},  {0.1, 0.1}};
    for (auto [a, b] : shapes) {
        char name[64];
        std::snprintf(name, sizeof name, "beta_%g_%g", a, b);
        out.push_back(make_beta_scenario(name, a, b));
    }

    {
        ScenarioSpec sc;
        sc.name = "steep";
        sc.note =
            "piecewise event cdf: t up to .25, .25+20000(t-.25)^2 up to .255, "
            ".75+(.25/.745)(t-.255) up to 1; assessments Uniform(0,1)";
        sc.F_cdf = [](double t) {
            if (t <= 0.0) return 0.0;
            if (t <= 0.25) return t;
            if (t <= 0.255) return 0.25 + 20000.0 * (t - 0.25) * (t - 0.25);
            if (t <= 1.0) return 0.75 + 0.25 / 0.745 * (t - 0.255);
            return 1.0;
        };
        sc.F_quantile = [](double p) {
            if (p <= 0.25) return p;
            if (p <= 0.75) return 0.25 + std::sqrt((p - 0.25) / 20000.0);
            return 0.255 + (p - 0.75) * (0.745 / 0.25);
        };
        sc.sample_c = [](Rng& rng) { return rng.uniform(); };
        out.push_back(std::move(sc));
    }

    return out;
}

} // namespace

const std::vector<ScenarioSpec>& builtin_scenarios() {
    static const std::vector<ScenarioSpec> catalog = make_scenarios();
    return catalog;
}

const ScenarioSpec& find_scenario(const std::string& name) {
    for (const ScenarioSpec& sc : builtin_scenarios())
        if (sc.name == name) return sc;
    throw std::invalid_argument("unknown scenario '" + name + "'");
}

std::string method_label(const MethodSpec& spec) {
    if (!spec.label.empty()) return spec.label;
    std::string out;
    switch (spec.kind) {
        case MethodSpec::Kind::valid: out = "valid"; break;
        case MethodSpec::Kind::lrt: return "lrt";
        case MethodSpec::Kind::abf:
            out = spec.variant == CiVariant::mid_p ? "abf-midp" : "abf-cp";
            for (AdjustStep s : spec.plan.steps) {
                if (s == AdjustStep::edge) out += "-edge";
                if (s == AdjustStep::lower_upper) out += "-lower-upper";
                if (s == AdjustStep::middle_value) out += "-middle";
            }
            break;
    }
    if (spec.m > 0) out += "-m" + std::to_string(spec.m);
    return out;
}

std::vector<double> default_eval_quantiles() {
    std::vector<double> q;
    for (int i = 1; i <= 19; ++i) q.push_back(double(i) * 0.05);
    return q;
}

namespace {

CurrentStatusSample draw_sample(const ScenarioSpec& sc, long n, Rng& rng) {
    std::vector<std::pair<double, int>> raw;
    raw.reserve(std::size_t(n));
    for (long i = 0; i < n; ++i) {
        const double t = sc.F_quantile(rng.uniform());
        const double c = sc.sample_c(rng);
        raw.emplace_back(c, t <= c ? 1 : 0);
    }
    return from_pairs(raw);
}

void check_common(long n, long reps, double level) {
    if (n < 2) throw std::invalid_argument("simulation: n must be >= 2");
    if (reps < 1) throw std::invalid_argument("simulation: reps must be >= 1");
    if (!(level > 0.5 && level < 1.0))
        throw std::invalid_argument("simulation: level outside (0.5,1)");
}

} // namespace

SimResult run_coverage(const SimConfig& cfg) {
    check_common(cfg.n, cfg.reps, cfg.level);
    if (cfg.methods.empty()) throw std::invalid_argument("simulation: no methods given");
    const ScenarioSpec& sc = find_scenario(cfg.scenario);

    std::vector<double> eval = cfg.eval.empty() ? default_eval_quantiles() : cfg.eval;
    const std::size_t np = eval.size();
    const std::size_t nm = cfg.methods.size();

    SimResult res;
    res.scenario = cfg.scenario;
    res.n = cfg.n;
    res.reps = cfg.reps;
    res.level = cfg.level;
    res.seed = cfg.seed;
    res.eval_q.resize(np);
    res.eval_t.resize(np);
    for (std::size_t p = 0; p < np; ++p) {
        if (cfg.eval_is_time) {
            res.eval_t[p] = eval[p];
            res.eval_q[p] = sc.F_cdf(eval[p]);
        } else {
            if (!(eval[p] > 0.0 && eval[p] < 1.0))
                throw std::invalid_argument("simulation: eval quantiles must lie in (0,1)");
            res.eval_q[p] = eval[p];
            res.eval_t[p] = sc.F_quantile(eval[p]);
        }
    }
    for (const MethodSpec& m : cfg.methods) res.method_labels.push_back(method_label(m));

    bool need_fit = false, need_bandwidth = false;
    for (const MethodSpec& m : cfg.methods) {
        need_fit = need_fit || m.kind != MethodSpec::Kind::valid;
        need_bandwidth =
            need_bandwidth || (m.kind == MethodSpec::Kind::abf && m.m == 0);
    }

    const std::size_t cells = std::size_t(cfg.reps) * nm * np;
    std::vector<unsigned char> covered(cells);
    std::vector<double> lengths(cells);

    parallel_for(cfg.reps, resolve_threads(), [&](long lo, long hi) {
        for (long r = lo; r < hi; ++r) {
            Rng rng(cfg.seed, std::uint64_t(r));
            const CurrentStatusSample s = draw_sample(sc, cfg.n, rng);

            StepCdf fit;
            if (need_fit) fit = npmle_fit(s);
            double h_g = 0.0;
            if (need_bandwidth) h_g = silverman_bandwidth(s.times);

            for (std::size_t mi = 0; mi < nm; ++mi) {
                const MethodSpec& spec = cfg.methods[mi];
                ConfidenceCurve curve;
                curve.grid = res.eval_t;
                curve.lower.resize(np);
                curve.upper.resize(np);
                curve.level = cfg.level;

                for (std::size_t p = 0; p < np; ++p) {
                    const double t = res.eval_t[p];
                    double l = 0.0, u = 1.0;
                    switch (spec.kind) {
                        case MethodSpec::Kind::valid: {
                            ValidCiConfig vc{spec.m, cfg.level, spec.support};
                            std::tie(l, u) = valid_interval(s, t, vc);
                            break;
                        }
                        case MethodSpec::Kind::lrt: {
                            std::tie(l, u) = lrt_interval_fitted(s, fit, t, spec.lrt);
                            break;
                        }
                        case MethodSpec::Kind::abf: {
                            AbfConfig ac;
                            ac.level = cfg.level;
                            ac.variant = spec.variant;
                            long m = spec.m;
                            if (m == 0) {
                                NuisanceEstimates est =
                                    estimate_nuisances(s, fit, h_g, t, ac.kernel);
                                m = mdagger_star(cfg.n, est);
                            }
                            BinomLimits lim = abf_interval_fitted(s, fit, t, m, ac);
                            l = lim.lower;
                            u = lim.upper;
                            break;
                        }
                    }
                    curve.lower[p] = l;
                    curve.upper[p] = u;
                }

                if (spec.kind == MethodSpec::Kind::abf && !spec.plan.steps.empty())
                    curve = apply_plan(spec.plan, std::move(curve));

                for (std::size_t p = 0; p < np; ++p) {
                    const std::size_t slot = (std::size_t(r) * nm + mi) * np + p;
                    const double truth = res.eval_q[p];
                    covered[slot] =
                        curve.lower[p] <= truth && truth <= curve.upper[p] ? 1 : 0;
                    lengths[slot] = curve.upper[p] - curve.lower[p];
                }
            }
        }
    });

    res.stats.assign(nm, std::vector<SimPointStat>(np));
    for (std::size_t mi = 0; mi < nm; ++mi) {
        for (std::size_t p = 0; p < np; ++p) {
            long hits = 0;
            double len_sum = 0.0;
            for (long r = 0; r < cfg.reps; ++r) {
                const std::size_t slot = (std::size_t(r) * nm + mi) * np + p;
                hits += covered[slot];
                len_sum += lengths[slot];
            }
            SimPointStat& st = res.stats[mi][p];
            st.coverage = double(hits) / double(cfg.reps);
            st.mc_se = std::sqrt(st.coverage * (1.0 - st.coverage) / double(cfg.reps));
            st.mean_length = len_sum / double(cfg.reps);
        }
    }
    return res;
}

LengthSweepResult length_sweep(const std::string& scenario, long n,
                               const std::vector<long>& m_list, double level,
                               long reps, std::uint64_t seed, double q) {
    check_common(n, reps, level);
    if (m_list.empty()) throw std::invalid_argument("length sweep: empty m list");
    if (!(q > 0.0 && q < 1.0)) throw std::invalid_argument("length sweep: q outside (0,1)");
    const ScenarioSpec& sc = find_scenario(scenario);
    const double t = sc.F_quantile(q);
    const std::size_t nm = m_list.size();

    std::vector<double> lengths(std::size_t(reps) * nm);
    parallel_for(reps, resolve_threads(), [&](long lo, long hi) {
        for (long r = lo; r < hi; ++r) {
            Rng rng(seed, std::uint64_t(r));
            const CurrentStatusSample s = draw_sample(sc, n, rng);
            for (std::size_t mi = 0; mi < nm; ++mi) {
                ValidCiConfig vc{m_list[mi], level, SupportKind::continuous};
                auto [l, u] = valid_interval(s, t, vc);
                lengths[std::size_t(r) * nm + mi] = u - l;
            }
        }
    });

    LengthSweepResult out;
    out.m_list = m_list;
    out.mean_length.assign(nm, 0.0);
    for (long r = 0; r < reps; ++r)
        for (std::size_t mi = 0; mi < nm; ++mi)
            out.mean_length[mi] += lengths[std::size_t(r) * nm + mi];
    for (double& v : out.mean_length) v /= double(reps);
    return out;
}

std::string sim_result_csv(const SimResult& result) {
    std::string out = "method,scenario,n,eval_q,coverage,mc_se,mean_length,reps,seed\n";
    char line[256];
    for (std::size_t mi = 0; mi < result.method_labels.size(); ++mi) {
        for (std::size_t p = 0; p < result.eval_q.size(); ++p) {
            const SimPointStat& st = result.stats[mi][p];
            std::snprintf(line, sizeof line, "%s,%s,%ld,%.10g,%.10g,%.10g,%.10g,%ld,%llu\n",
                          result.method_labels[mi].c_str(), result.scenario.c_str(),
                          result.n, result.eval_q[p], st.coverage, st.mc_se,
                          st.mean_length, result.reps,
                          (unsigned long long)result.seed);
            out += line;
        }
    }
    return out;
}

} // namespace csci
