#include "csci/binom_ci.hpp"

#include <cmath>
#include <stdexcept>

#include "csci/special.hpp"

namespace csci {

namespace {

void check_args(double q, long y, long n) {
    if (n < 1) throw std::domain_error("binomial limit: n must be >= 1");
    if (y < 0 || y > n) throw std::domain_error("binomial limit: y out of range");
    if (!(q > 0.0 && q < 1.0)) throw std::domain_error("binomial limit: q outside (0,1)");
}

// Exact binomial tails through the beta identities; O(1) per evaluation.
double tail_gt(long y, long n, double theta) { // Pr(Y > y)
    if (y >= n) return 0.0;
    if (theta <= 0.0) return 0.0;
    if (theta >= 1.0) return 1.0;
    return reg_inc_beta(theta, double(y + 1), double(n - y));
}

double tail_lt(long y, long n, double theta) { // Pr(Y < y)
    if (y <= 0) return 0.0;
    if (theta <= 0.0) return 1.0;
    if (theta >= 1.0) return 0.0;
    return 1.0 - reg_inc_beta(theta, double(y), double(n - y + 1));
}

} // namespace

double cp_lower(double q, long y, long n, double hint) {
    check_args(q, y, n);
    if (y == 0) return 0.0;
    return beta_quantile(1.0 - q, double(y), double(n - y + 1), hint);
}

double cp_upper(double q, long y, long n, double hint) {
    check_args(q, y, n);
    if (y == n) return 1.0;
    return beta_quantile(q, double(y + 1), double(n - y), hint);
}

BinomLimits cp_limits(double level, long y, long n) {
    if (!(level > 0.5 && level < 1.0))
        throw std::domain_error("cp_limits: level outside (0.5,1)");
    const double q = 1.0 - 0.5 * (1.0 - level);
    return BinomLimits{cp_lower(q, y, n), cp_upper(q, y, n), level, CiVariant::clopper_pearson};
}

BinomLimits midp_limits(double level, long y, long n) {
    if (!(level > 0.5 && level < 1.0))
        throw std::domain_error("midp_limits: level outside (0.5,1)");
    if (n < 1 || y < 0 || y > n) throw std::domain_error("midp_limits: y out of range");
    const double half_alpha = 0.5 * (1.0 - level);

    double lower = 0.0;
    if (y > 0) {
        // Pr(Y > y; theta) + .5 Pr(Y = y; theta) increases from 0 to 1 in theta
        double lo = 0.0, hi = 1.0;
        for (int i = 0; i < 60; ++i) {
            const double mid = 0.5 * (lo + hi);
            const double val = tail_gt(y, n, mid) + 0.5 * binom_pmf(y, n, mid);
            if (val < half_alpha) lo = mid; else hi = mid;
            if (hi - lo < 1e-12) break;
        }
        lower = 0.5 * (lo + hi);
    }

    double upper = 1.0;
    if (y < n) {
        // Pr(Y < y; theta) + .5 Pr(Y = y; theta) decreases from 1 to 0 in theta
        double lo = 0.0, hi = 1.0;
        for (int i = 0; i < 60; ++i) {
            const double mid = 0.5 * (lo + hi);
            const double val = tail_lt(y, n, mid) + 0.5 * binom_pmf(y, n, mid);
            if (val > half_alpha) lo = mid; else hi = mid;
            if (hi - lo < 1e-12) break;
        }
        upper = 0.5 * (lo + hi);
    }

    return BinomLimits{lower, upper, level, CiVariant::mid_p};
}

} // namespace csci
