#include "csci/valid_ci.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "csci/binom_ci.hpp"

namespace csci {

namespace {

const double inf = std::numeric_limits<double>::infinity();

// 1-indexed order statistic with the boundary conventions C_0 = 0, C_{n+1} = inf.
double time_at(const CurrentStatusSample& s, long i) {
    if (i <= 0) return 0.0;
    if (i > s.n()) return inf;
    return s.times[i - 1];
}

long count_le(const CurrentStatusSample& s, double t) {
    return long(std::upper_bound(s.times.begin(), s.times.end(), t) - s.times.begin());
}

long count_lt(const CurrentStatusSample& s, double t) {
    return long(std::lower_bound(s.times.begin(), s.times.end(), t) - s.times.begin());
}

WindowCount count_clamped(const CurrentStatusSample& s, double a, double b) {
    // count_window needs finite bounds; [t, inf) means everything from t up
    const auto first = std::lower_bound(s.times.begin(), s.times.end(), a);
    const auto last = b == inf ? s.times.end()
                               : std::upper_bound(s.times.begin(), s.times.end(), b);
    const long i0 = long(first - s.times.begin());
    const long i1 = long(last - s.times.begin());
    return WindowCount{a, b, i1 - i0, s.event_prefix[i1] - s.event_prefix[i0]};
}

} // namespace

long default_m(long n) {
    if (n < 1) throw std::domain_error("default_m: n must be >= 1");
    long k = long(std::floor(std::cbrt(double(n) * double(n))));
    while (k > 1 && (k - 1) * (k - 1) * (k - 1) >= n * n) --k;
    while (k * k * k < n * n) ++k;
    return k;
}

WindowCount window_below(const CurrentStatusSample& s, double t, long m) {
    if (m < 1) throw std::domain_error("window_below: m must be >= 1");
    const long l = count_le(s, t);
    const double a = time_at(s, m) > t ? 0.0 : time_at(s, l - m + 1);
    return count_clamped(s, a, t);
}

WindowCount window_above(const CurrentStatusSample& s, double t, long m) {
    if (m < 1) throw std::domain_error("window_above: m must be >= 1");
    const long n = s.n();
    const long g = count_lt(s, t) + 1;
    const double b = time_at(s, n - m + 1) < t ? inf : time_at(s, g + m - 1);
    return count_clamped(s, t, b);
}

WindowCount fallback_window(const CurrentStatusSample& s, double t, long m, SupportKind support) {
    if (m < 1) throw std::domain_error("fallback_window: m must be >= 1");
    const long n = s.n();
    const long l = count_le(s, t);
    const long g = count_lt(s, t) + 1;
    double a, b;
    if (support == SupportKind::continuous) {
        const long h = (m + 1) / 2;
        a = time_at(s, h) > t ? 0.0 : time_at(s, l - h + 1);
        b = time_at(s, n - h + 1) < t ? inf : time_at(s, g + h - 1);
    } else {
        const long j = count_le(s, t) - count_lt(s, t); // observations at t
        const long h = m > j ? (m - j + 1) / 2 : 0;
        if (time_at(s, h) >= time_at(s, g)) {
            a = 0.0;
        } else {
            a = m > j ? time_at(s, l - h + 1 - j) : t;
        }
        if (time_at(s, n - h + 1) <= time_at(s, l)) {
            b = inf;
        } else {
            b = m > j ? time_at(s, g + h - 1 + j) : t;
        }
    }
    return count_clamped(s, a, b);
}

std::pair<double, double> valid_interval(const CurrentStatusSample& s, double t,
                                         const ValidCiConfig& cfg) {
    if (!(cfg.level > 0.5 && cfg.level < 1.0))
        throw std::domain_error("valid_interval: level outside (0.5,1)");
    const long m = cfg.m > 0 ? cfg.m : default_m(s.n());
    const double q = 1.0 - 0.5 * (1.0 - cfg.level);
    const auto below = window_below(s, t, m);
    const auto above = window_above(s, t, m);
    double lower = below.n_in == 0 ? 0.0 : cp_lower(q, below.y_in, below.n_in);
    double upper = above.n_in == 0 ? 1.0 : cp_upper(q, above.y_in, above.n_in);
    if (lower > upper) {
        const auto combined = fallback_window(s, t, m, cfg.support);
        if (combined.n_in == 0) return {0.0, 1.0};
        lower = cp_lower(q, combined.y_in, combined.n_in);
        upper = cp_upper(q, combined.y_in, combined.n_in);
    }
    return {lower, upper};
}

} // namespace csci
