#pragma once

#include <utility>

#include "csci/data.hpp"

namespace csci {

enum class SupportKind { continuous, discrete };

struct ValidCiConfig {
    long m = 0; // 0 resolves to default_m(n)
    double level = 0.95;
    SupportKind support = SupportKind::continuous;
};

// ceil(n^(2/3)) computed as the smallest k with k^3 >= n^2.
long default_m(long n);

// One-sided windows: the m closest assessments at or below (above) t, all
// boundary ties included; [0, t] or [t, +inf) when fewer than m exist.
WindowCount window_below(const CurrentStatusSample& s, double t, long m);
WindowCount window_above(const CurrentStatusSample& s, double t, long m);

// Combined window used when the one-sided limits cross.
WindowCount fallback_window(const CurrentStatusSample& s, double t, long m, SupportKind support);

// Guaranteed-coverage central interval; falls back to the combined-window
// proportion when the one-sided limits cross.
std::pair<double, double> valid_interval(const CurrentStatusSample& s, double t,
                                         const ValidCiConfig& cfg);

} // namespace csci
