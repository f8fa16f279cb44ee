#pragma once

#include <vector>

#include "csci/binom_ci.hpp"
#include "csci/data.hpp"
#include "csci/npmle.hpp"
#include "csci/special.hpp"

namespace csci {

// Plug-in quantities for the window-size rule, post-clamping:
// F_hat in [.01, .99], f_hat >= 1e-4, g_hat >= 1e-4.
struct NuisanceEstimates {
    double F_hat;
    double f_hat;
    double g_hat;
    double h_F;
    double h_g;
};

struct AbfConfig {
    long m_dagger = 0;  // even count >= 2, or 0 to size each point by MSE
    double level = 0.95;
    CiVariant variant = CiVariant::clopper_pearson;
    KernelKind kernel = KernelKind::gaussian;
};

// h = .9 min(s, IQR/1.34) n^(-1/5); s is the n-1 sample standard deviation,
// quartiles interpolate at (n-1)p. Throws when the spread term is zero.
double silverman_bandwidth(const std::vector<double>& times);

// Smoothed distribution, density, and density-derivative values at t:
// Stieltjes sums of K(./h), k(./h)/h, k'(./h)/h^2 over the step-CDF jumps.
struct SmleValues {
    double F_sm;
    double f_sm;
    double fprime_sm;
};
SmleValues smle_eval(const StepCdf& F_step, double t, double h, KernelKind kind);

// Gaussian kernel density estimate of the assessment-time density; h <= 0
// selects the Silverman bandwidth.
double kde_g(const CurrentStatusSample& s, double t, double h = 0.0);

// h = c_F n^(-1/5), c_F = [F(1-F)/g * int k^2]^(1/5) [ (int u^2 k)^2 f'^2 ]^(-1/5).
double amse_bandwidth(double F_hat, double fprime_hat, double g_hat, long n,
                      KernelKind kind);

// Two-stage plug-in pipeline: Silverman bandwidth for g and for the initial
// smooth, clamp, refresh the bandwidth, smooth once more, clamp. No iteration.
NuisanceEstimates estimate_nuisances(const CurrentStatusSample& s, const StepCdf& fit,
                                     double h_g, double t, KernelKind kind);
NuisanceEstimates estimate_nuisances(const CurrentStatusSample& s, double t,
                                     KernelKind kind = KernelKind::gaussian);

// Real root of A m^3 - A m^2 - F(1-F) = 0 with A = {f/(4ng)}^2, in closed form.
double cardano_root(double F_hat, double f_hat, double g_hat, long n);

// The root rounded to the nearest even integer (ties upward), at least 2,
// at most the largest even count <= n.
long mdagger_star(long n, const NuisanceEstimates& est);

// Interval from the 2h closest assessments straddling t (h per side, boundary
// reduced); counts include boundary ties. Degenerate window yields (0, 1);
// the limits are pinned to 0 / 1 where the isotonic fit sits at 0 / 1.
BinomLimits abf_interval_fitted(const CurrentStatusSample& s, const StepCdf& fit,
                                double t, long m, const AbfConfig& cfg);
BinomLimits abf_interval(const CurrentStatusSample& s, double t, const AbfConfig& cfg);

} // namespace csci
