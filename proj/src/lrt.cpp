#include "csci/lrt.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace csci {

namespace {

constexpr int kScanPoints = 64;

void check_cfg(const LrtConfig& cfg) {
    if (!(cfg.critical_value > 0.0))
        throw std::domain_error("lrt: critical value must be positive");
    if (!(cfg.grid_tol > 0.0 && cfg.grid_tol <= 0.1))
        throw std::domain_error("lrt: grid_tol outside (0, 0.1]");
}

double stat_given(const CurrentStatusSample& s, double t, double theta0, double ll_un) {
    const double ll_res = loglik(s, restricted_npmle(s, t, theta0));
    if (std::isinf(ll_res)) return std::numeric_limits<double>::infinity();
    return std::max(0.0, 2.0 * (ll_un - ll_res));
}

} // namespace

double lrt_stat(const CurrentStatusSample& s, double t, double theta0) {
    if (!(theta0 >= 0.0 && theta0 <= 1.0))
        throw std::domain_error("lrt: theta0 outside [0,1]");
    return stat_given(s, t, theta0, loglik(s, npmle_fit(s)));
}

std::pair<double, double> lrt_interval_fitted(const CurrentStatusSample& s,
                                              const StepCdf& fit, double t,
                                              const LrtConfig& cfg) {
    check_cfg(cfg);
    const double crit = cfg.critical_value;
    const double ll_un = loglik(s, fit);
    const double theta_hat = fit(t);
    auto stat = [&](double theta) { return stat_given(s, t, theta, ll_un); };

    // The bisections below assume the acceptance region is one interval
    // around theta_hat; verify on a coarse scan before trusting that.
    bool contiguous = true;
    {
        bool seen = false, closed = false;
        for (int i = 0; i < kScanPoints; ++i) {
            const bool in = stat(double(i) / (kScanPoints - 1)) <= crit;
            if (in && closed) { contiguous = false; break; }
            if (in) seen = true;
            if (seen && !in) closed = true;
        }
    }

    if (!contiguous) {
        double lo = 1.0, hi = 0.0;
        const long steps = long(std::ceil(1.0 / cfg.grid_tol));
        for (long j = 0; j <= steps; ++j) {
            const double theta = std::min(double(j) * cfg.grid_tol, 1.0);
            if (stat(theta) <= crit) {
                lo = std::min(lo, theta);
                hi = std::max(hi, theta);
            }
        }
        if (lo > hi) return {theta_hat, theta_hat};  // only the fit value passes
        return {lo, hi};
    }

    double lower = 0.0;
    if (stat(0.0) > crit) {
        double out = 0.0, in = theta_hat;
        while (in - out > cfg.grid_tol) {
            const double mid = 0.5 * (out + in);
            (stat(mid) <= crit ? in : out) = mid;
        }
        lower = 0.5 * (out + in);
    }

    double upper = 1.0;
    if (stat(1.0) > crit) {
        double in = theta_hat, out = 1.0;
        while (out - in > cfg.grid_tol) {
            const double mid = 0.5 * (in + out);
            (stat(mid) <= crit ? in : out) = mid;
        }
        upper = 0.5 * (in + out);
    }

    return {lower, upper};
}

std::pair<double, double> lrt_interval(const CurrentStatusSample& s, double t,
                                       const LrtConfig& cfg) {
    return lrt_interval_fitted(s, npmle_fit(s), t, cfg);
}

} // namespace csci
