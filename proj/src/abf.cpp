#include "csci/abf.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace csci {

namespace {

double interp_quantile(const std::vector<double>& sorted, double p) {
    const std::size_t n = sorted.size();
    double pos = p * double(n - 1);
    std::size_t lo = std::size_t(pos);
    if (lo >= n - 1) return sorted[n - 1];
    double frac = pos - double(lo);
    return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

} // namespace

double silverman_bandwidth(const std::vector<double>& times) {
    const std::size_t n = times.size();
    if (n < 2) throw std::invalid_argument("bandwidth: need at least two assessment times");
    std::vector<double> x = times;
    std::sort(x.begin(), x.end());
    double mean = 0.0;
    for (double v : x) mean += v;
    mean /= double(n);
    double ss = 0.0;
    for (double v : x) ss += (v - mean) * (v - mean);
    double sd = std::sqrt(ss / double(n - 1));
    double iqr = interp_quantile(x, 0.75) - interp_quantile(x, 0.25);
    double spread = std::min(sd, iqr / 1.34);
    if (!(spread > 0.0))
        throw std::invalid_argument("bandwidth: assessment times have no spread");
    return 0.9 * spread * std::pow(double(n), -0.2);
}

SmleValues smle_eval(const StepCdf& F_step, double t, double h, KernelKind kind) {
    if (!(h > 0.0)) throw std::invalid_argument("smoothed estimate: bandwidth must be positive");
    SmleValues out{0.0, 0.0, 0.0};
    double prev = 0.0;
    for (std::size_t j = 0; j < F_step.knots.size(); ++j) {
        double jump = F_step.values[j] - prev;
        prev = F_step.values[j];
        if (jump <= 0.0) continue;
        KernelValues kv = kernel_funcs(kind, t - F_step.knots[j], h);
        out.F_sm += jump * kv.cdf;
        out.f_sm += jump * kv.density;
        out.fprime_sm += jump * kv.derivative;
    }
    return out;
}

double kde_g(const CurrentStatusSample& s, double t, double h) {
    if (h <= 0.0) h = silverman_bandwidth(s.times);
    double acc = 0.0;
    for (double c : s.times) acc += kernel_funcs(KernelKind::gaussian, t - c, h).density;
    return acc / double(s.n());
}

double amse_bandwidth(double F_hat, double fprime_hat, double g_hat, long n,
                      KernelKind kind) {
    double num = F_hat * (1.0 - F_hat) / g_hat * kernel_int_k2(kind);
    double u2k = kernel_int_u2k(kind);
    double den = u2k * u2k * fprime_hat * fprime_hat;
    double c_f = std::pow(num, 0.2) * std::pow(den, -0.2);
    return c_f * std::pow(double(n), -0.2);
}

NuisanceEstimates estimate_nuisances(const CurrentStatusSample& s, const StepCdf& fit,
                                     double h_g, double t, KernelKind kind) {
    double g_hat = std::max(kde_g(s, t, h_g), 1e-4);

    SmleValues init = smle_eval(fit, t, h_g, kind);
    double F_init = std::clamp(init.F_sm, 0.01, 0.99);
    double fp2 = std::max(init.fprime_sm * init.fprime_sm, 1e-3);
    double h_f = amse_bandwidth(F_init, std::sqrt(fp2), g_hat, s.n(), kind);

    SmleValues fin = smle_eval(fit, t, h_f, kind);
    NuisanceEstimates est;
    est.F_hat = std::clamp(fin.F_sm, 0.01, 0.99);
    est.f_hat = std::max(fin.f_sm, 1e-4);
    est.g_hat = g_hat;
    est.h_F = h_f;
    est.h_g = h_g;
    return est;
}

NuisanceEstimates estimate_nuisances(const CurrentStatusSample& s, double t,
                                     KernelKind kind) {
    return estimate_nuisances(s, npmle_fit(s), silverman_bandwidth(s.times), t, kind);
}

double cardano_root(double F_hat, double f_hat, double g_hat, long n) {
    double a = f_hat / (4.0 * double(n) * g_hat);
    a *= a;
    double p = 1.0 / 27.0 + F_hat * (1.0 - F_hat) / (2.0 * a);
    double s = std::sqrt(std::max(p * p - 1.0 / 729.0, 0.0));
    double big = p + s;  // the other cubic term is 1/729 / big, avoiding cancellation
    return std::cbrt(big) + std::cbrt(1.0 / 729.0 / big) + 1.0 / 3.0;
}

long mdagger_star(long n, const NuisanceEstimates& est) {
    double r = cardano_root(est.F_hat, est.f_hat, est.g_hat, n);
    double half = r / 2.0;
    long lo = 2 * long(std::floor(half));
    long even = (r - double(lo) < double(lo) + 2.0 - r) ? lo : lo + 2;
    even = std::max<long>(even, 2);
    return std::min(even, 2 * (n / 2));
}

BinomLimits abf_interval_fitted(const CurrentStatusSample& s, const StepCdf& fit,
                                double t, long m, const AbfConfig& cfg) {
    const long n = s.n();
    const auto& times = s.times;
    long l = long(std::upper_bound(times.begin(), times.end(), t) - times.begin());
    long g = long(std::lower_bound(times.begin(), times.end(), t) - times.begin()) + 1;

    long half = std::min({(m + 1) / 2, l, n - g + 1});
    BinomLimits out{0.0, 1.0, cfg.level, cfg.variant};
    if (half >= 1) {
        double a = times[std::size_t(l - half)];
        double b = times[std::size_t(g + half - 2)];
        WindowCount w = count_window(s, a, b);
        out = cfg.variant == CiVariant::mid_p ? midp_limits(cfg.level, w.y_in, w.n_in)
                                              : cp_limits(cfg.level, w.y_in, w.n_in);
    }
    double F_at_t = fit(t);
    if (F_at_t <= 0.0) out.lower = 0.0;
    if (F_at_t >= 1.0) out.upper = 1.0;
    return out;
}

BinomLimits abf_interval(const CurrentStatusSample& s, double t, const AbfConfig& cfg) {
    if (cfg.m_dagger != 0 && (cfg.m_dagger < 2 || cfg.m_dagger % 2 != 0))
        throw std::invalid_argument("window size must be an even count >= 2");
    StepCdf fit = npmle_fit(s);
    long m = cfg.m_dagger;
    if (m == 0) {
        NuisanceEstimates est =
            estimate_nuisances(s, fit, silverman_bandwidth(s.times), t, cfg.kernel);
        m = mdagger_star(s.n(), est);
    }
    return abf_interval_fitted(s, fit, t, m, cfg);
}

} // namespace csci
