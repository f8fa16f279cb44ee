#pragma once

#include <vector>

#include "csci/data.hpp"

namespace csci {

// Right-continuous step function; 0 before the first knot, last value after.
struct StepCdf {
    std::vector<double> knots;   // increasing
    std::vector<double> values;  // nondecreasing, in [0,1]

    double operator()(double t) const;
};

// Isotonic ML fit of the event indicators on assessment time (PAVA on the
// tie-collapsed cells).
StepCdf npmle_fit(const CurrentStatusSample& s);

// ML fit subject to F(t) = theta0: cells before t capped at theta0, cells
// after t floored at theta0, the cell at t (and the knot at t) pinned there.
StepCdf restricted_npmle(const CurrentStatusSample& s, double t, double theta0);

// Sum of D_i log F(C_i) + (1-D_i) log(1-F(C_i)), 0 log 0 = 0, -inf on a
// zero-probability observation.
double loglik(const CurrentStatusSample& s, const StepCdf& F);

} // namespace csci
