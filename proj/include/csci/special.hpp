#pragma once

namespace csci {

// Regularized incomplete beta I_x(a,b), continued-fraction evaluation.
// Throws std::domain_error outside 0 <= x <= 1 or for nonpositive shapes.
double reg_inc_beta(double x, double a, double b);

// Beta density at x (0 outside the open interval for shapes >= 1 edge cases).
double beta_pdf(double x, double a, double b);

// Solves I_x(v,w) = q for x to 1e-12 absolute tolerance.
// Zero-shape conventions: v == 0 -> 0, w == 0 -> 1 (checked in that order).
// `hint` in (0,1) warm-starts the Newton phase; pass a negative value to skip.
double beta_quantile(double q, double v, double w, double hint = -1.0);

// Binomial point mass and partial-sum cdf, log-space arithmetic throughout.
double binom_pmf(long y, long n, double p);
double binom_cdf(long y, long n, double p);

enum class KernelKind { gaussian, triweight };

// Scaled kernel values: density k(u/h)/h, cdf K(u/h), derivative k'(u/h)/h^2.
struct KernelValues {
    double density;
    double cdf;
    double derivative;
};
KernelValues kernel_funcs(KernelKind kind, double u, double h);

// Closed-form kernel constants used by the bandwidth rule.
double kernel_int_k2(KernelKind kind);   // integral of k(u)^2
double kernel_int_u2k(KernelKind kind);  // integral of u^2 k(u)

} // namespace csci
