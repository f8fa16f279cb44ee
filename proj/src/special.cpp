#include "csci/special.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace csci {

namespace {

double lgamma_safe(double x) {
#ifdef __GLIBC__
    int sign = 0;
    return lgamma_r(x, &sign);
#else
    return std::lgamma(x);
#endif
}

double log_beta(double a, double b) {
    return lgamma_safe(a) + lgamma_safe(b) - lgamma_safe(a + b);
}

// Lentz continued fraction for the incomplete beta; converges for x < (a+1)/(a+b+2).
double beta_cf(double a, double b, double x) {
    const double eps = 3e-16;
    const double tiny = 1e-300;
    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < tiny) d = tiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= 400; ++m) {
        const int m2 = 2 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < tiny) d = tiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < tiny) d = tiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < eps) break;
    }
    return h;
}

} // namespace

double reg_inc_beta(double x, double a, double b) {
    if (!(a > 0.0) || !(b > 0.0)) throw std::domain_error("reg_inc_beta: shapes must be positive");
    if (!(x >= 0.0 && x <= 1.0)) throw std::domain_error("reg_inc_beta: x outside [0,1]");
    if (x == 0.0) return 0.0;
    if (x == 1.0) return 1.0;
    const double lfront = a * std::log(x) + b * std::log1p(-x) - log_beta(a, b);
    if (x < (a + 1.0) / (a + b + 2.0)) {
        return std::exp(lfront) * beta_cf(a, b, x) / a;
    }
    return 1.0 - std::exp(lfront) * beta_cf(b, a, 1.0 - x) / b;
}

double beta_pdf(double x, double a, double b) {
    if (!(a > 0.0) || !(b > 0.0)) throw std::domain_error("beta_pdf: shapes must be positive");
    if (x <= 0.0 || x >= 1.0) return 0.0;
    return std::exp((a - 1.0) * std::log(x) + (b - 1.0) * std::log1p(-x) - log_beta(a, b));
}

double beta_quantile(double q, double v, double w, double hint) {
    if (!(q >= 0.0 && q <= 1.0)) throw std::domain_error("beta_quantile: q outside [0,1]");
    if (v < 0.0 || w < 0.0) throw std::domain_error("beta_quantile: negative shape");
    if (v == 0.0) return 0.0;
    if (w == 0.0) return 1.0;
    if (q == 0.0) return 0.0;
    if (q == 1.0) return 1.0;

    double lo = 0.0, hi = 1.0;
    double x;
    if (hint > 0.0 && hint < 1.0) {
        x = hint;
    } else {
        // a few bisection steps to land the Newton phase in the right region
        for (int i = 0; i < 12; ++i) {
            const double mid = 0.5 * (lo + hi);
            if (reg_inc_beta(mid, v, w) >= q) hi = mid; else lo = mid;
        }
        x = 0.5 * (lo + hi);
    }
    for (int i = 0; i < 120; ++i) {
        const double f = reg_inc_beta(x, v, w) - q;
        if (f >= 0.0) { if (x < hi) hi = x; } else { if (x > lo) lo = x; }
        if (hi - lo < 1e-15) break;
        const double d = beta_pdf(x, v, w);
        double xn = (d > 0.0 && std::isfinite(d)) ? x - f / d : 0.5 * (lo + hi);
        if (!(xn > lo && xn < hi)) xn = 0.5 * (lo + hi);
        if (std::fabs(xn - x) <= 1e-15 * (1.0 + xn)) { x = xn; break; }
        x = xn;
    }
    return x;
}

double binom_pmf(long y, long n, double p) {
    if (n < 0 || y < 0 || y > n) throw std::domain_error("binom_pmf: count out of range");
    if (!(p >= 0.0 && p <= 1.0)) throw std::domain_error("binom_pmf: p outside [0,1]");
    if (p == 0.0) return y == 0 ? 1.0 : 0.0;
    if (p == 1.0) return y == n ? 1.0 : 0.0;
    const double lc = lgamma_safe(double(n) + 1.0) - lgamma_safe(double(y) + 1.0) -
                      lgamma_safe(double(n - y) + 1.0);
    return std::exp(lc + double(y) * std::log(p) + double(n - y) * std::log1p(-p));
}

double binom_cdf(long y, long n, double p) {
    if (n < 0 || y < 0 || y > n) throw std::domain_error("binom_cdf: count out of range");
    if (!(p >= 0.0 && p <= 1.0)) throw std::domain_error("binom_cdf: p outside [0,1]");
    double s = 0.0;
    for (long k = 0; k <= y; ++k) s += binom_pmf(k, n, p);
    return s < 1.0 ? s : 1.0;
}

namespace {

const double inv_sqrt_2pi = 0.3989422804014326779399461;

double tri_density(double x) {
    if (std::fabs(x) >= 1.0) return 0.0;
    const double s = 1.0 - x * x;
    return (35.0 / 32.0) * s * s * s;
}

double tri_cdf(double x) {
    if (x <= -1.0) return 0.0;
    if (x >= 1.0) return 1.0;
    const double x3 = x * x * x;
    const double x5 = x3 * x * x;
    const double x7 = x5 * x * x;
    return (35.0 / 32.0) * (x - x3 + 0.6 * x5 - x7 / 7.0 + 16.0 / 35.0);
}

double tri_derivative(double x) {
    if (std::fabs(x) >= 1.0) return 0.0;
    const double s = 1.0 - x * x;
    return -(105.0 / 16.0) * x * s * s;
}

} // namespace

KernelValues kernel_funcs(KernelKind kind, double u, double h) {
    if (!(h > 0.0)) throw std::domain_error("kernel_funcs: bandwidth must be positive");
    const double z = u / h;
    KernelValues out{};
    if (kind == KernelKind::gaussian) {
        const double phi = inv_sqrt_2pi * std::exp(-0.5 * z * z);
        out.density = phi / h;
        out.cdf = 0.5 * std::erfc(-z / std::sqrt(2.0));
        out.derivative = -z * phi / (h * h);
    } else {
        out.density = tri_density(z) / h;
        out.cdf = tri_cdf(z);
        out.derivative = tri_derivative(z) / (h * h);
    }
    return out;
}

double kernel_int_k2(KernelKind kind) {
    if (kind == KernelKind::gaussian) return 0.5 / std::sqrt(M_PI);
    return 350.0 / 429.0;
}

double kernel_int_u2k(KernelKind kind) {
    if (kind == KernelKind::gaussian) return 1.0;
    return 1.0 / 9.0;
}

} // namespace csci
