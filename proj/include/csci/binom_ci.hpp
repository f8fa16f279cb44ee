#pragma once

namespace csci {

enum class CiVariant { clopper_pearson, mid_p };

struct BinomLimits {
    double lower;
    double upper;
    double level;
    CiVariant variant;
};

// One-sided 100q% exact binomial limits via beta quantiles.
// cp_lower: Be(1-q; y, n-y+1) with y == 0 -> 0.
// cp_upper: Be(q; y+1, n-y)  with y == n -> 1.
// `hint` warm-starts the quantile solve (useful when sweeping y); ignored if
// outside (0,1).
double cp_lower(double q, long y, long n, double hint = -1.0);
double cp_upper(double q, long y, long n, double hint = -1.0);

// Central 100*level% mid-P limits: lower solves Pr(Y>y) + .5 Pr(Y=y) = alpha/2
// (0 when y == 0), upper solves Pr(Y<y) + .5 Pr(Y=y) = alpha/2 (1 when y == n).
BinomLimits midp_limits(double level, long y, long n);

// Central 100*level% Clopper-Pearson interval from the two one-sided limits.
BinomLimits cp_limits(double level, long y, long n);

} // namespace csci
