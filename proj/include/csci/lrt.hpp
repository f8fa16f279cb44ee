#pragma once

#include <utility>

#include "csci/data.hpp"
#include "csci/npmle.hpp"

namespace csci {

// Critical value for the pointwise likelihood-ratio test. The default is the
// published 0.95 quantile of the limiting distribution of the statistic; it
// applies to level 0.95 only and callers targeting other levels must supply
// their own quantile.
inline constexpr double kLrtCritical95 = 2.28648;

struct LrtConfig {
    double critical_value = kLrtCritical95;
    double grid_tol = 1e-4;  // endpoint resolution, also the fallback grid pitch
};

// 2 [loglik(unrestricted fit) - loglik(fit restricted to F(t) = theta0)];
// +inf when the restriction zeroes an observed outcome's probability.
double lrt_stat(const CurrentStatusSample& s, double t, double theta0);

// {theta : stat <= critical_value} by bisecting outward from the unrestricted
// fit value. Quasi-convexity of the statistic is checked on a 64-point scan;
// on violation the endpoints come from a full grid walk at grid_tol pitch.
std::pair<double, double> lrt_interval_fitted(const CurrentStatusSample& s,
                                              const StepCdf& fit, double t,
                                              const LrtConfig& cfg);
std::pair<double, double> lrt_interval(const CurrentStatusSample& s, double t,
                                       const LrtConfig& cfg);

} // namespace csci
