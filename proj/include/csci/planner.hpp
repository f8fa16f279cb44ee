#pragma once

#include <utility>

namespace csci {

struct PlannerInput {
    long n;
    double F_t;
    double r_t;  // local density ratio f(t)/g(t)
    double level = 0.95;
};

struct PlanResult {
    long m_min;
    double e_ratio;  // expected length at ceil(n^(2/3)) over the minimum
};

// Window-proportion approximations p_-/p_+ = F_t -/+ m r_t / (2n), clamped to [0,1].
std::pair<double, double> approx_ps(long n, long m, double F_t, double r_t);

// E[upper limit at (Y+, m)] - E[lower limit at (Y-, m)] with Y+- binomial at
// the drifted proportions; sums truncated where the omitted mass is < 1e-18.
double expected_length(const PlannerInput& in, long m);

// Exhaustive scan of m in [1, n]; ties go to the smaller window.
PlanResult m_min_search(const PlannerInput& in);

} // namespace csci
