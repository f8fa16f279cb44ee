#include "csci/planner.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "csci/binom_ci.hpp"
#include "csci/special.hpp"
#include "csci/valid_ci.hpp"

namespace csci {

namespace {

void check_input(const PlannerInput& in) {
    if (in.n < 1) throw std::domain_error("planner: n must be >= 1");
    if (!(in.F_t > 0.0 && in.F_t < 1.0))
        throw std::domain_error("planner: F_t outside (0,1)");
    if (!(in.r_t >= 0.0)) throw std::domain_error("planner: negative density ratio");
    if (!(in.level > 0.5 && in.level < 1.0))
        throw std::domain_error("planner: level outside (0.5,1)");
}

struct YRange {
    long lo;
    long hi;
};

// y window holding all but < 1e-18 of the Binomial(m, p) mass.
YRange mass_range(long m, double p) {
    double mu = double(m) * p;
    double sd = std::sqrt(std::max(double(m) * p * (1.0 - p), 0.0));
    long lo = long(std::floor(mu - 10.0 * sd)) - 3;
    long hi = long(std::ceil(mu + 10.0 * sd)) + 3;
    return {std::max<long>(lo, 0), std::min<long>(hi, m)};
}

} // namespace

std::pair<double, double> approx_ps(long n, long m, double F_t, double r_t) {
    const double drift = double(m) * r_t / (2.0 * double(n));
    return {std::clamp(F_t - drift, 0.0, 1.0), std::clamp(F_t + drift, 0.0, 1.0)};
}

double expected_length(const PlannerInput& in, long m) {
    check_input(in);
    if (m < 1) throw std::domain_error("planner: m must be >= 1");
    const double q = 0.5 * (1.0 + in.level);
    const auto [p_minus, p_plus] = approx_ps(in.n, m, in.F_t, in.r_t);

    double upper_mean = 0.0;
    {
        const YRange r = mass_range(m, p_plus);
        double hint = -1.0;
        for (long y = r.lo; y <= r.hi; ++y) {
            const double u = cp_upper(q, y, m, hint);
            if (u < 1.0) hint = u;
            upper_mean += binom_pmf(y, m, p_plus) * u;
        }
    }

    double lower_mean = 0.0;
    {
        const YRange r = mass_range(m, p_minus);
        double hint = -1.0;
        for (long y = r.lo; y <= r.hi; ++y) {
            const double l = cp_lower(q, y, m, hint);
            if (l > 0.0) hint = l;
            lower_mean += binom_pmf(y, m, p_minus) * l;
        }
    }

    return upper_mean - lower_mean;
}

PlanResult m_min_search(const PlannerInput& in) {
    check_input(in);
    long best_m = 1;
    double best_len = expected_length(in, 1);
    for (long m = 2; m <= in.n; ++m) {
        const double len = expected_length(in, m);
        if (len < best_len) {
            best_len = len;
            best_m = m;
        }
    }
    const double ref = expected_length(in, std::min(default_m(in.n), in.n));
    return PlanResult{best_m, ref / best_len};
}

} // namespace csci
