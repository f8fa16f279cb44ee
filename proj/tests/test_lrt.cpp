#include <cmath>
#include <limits>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"

#include "csci/lrt.hpp"
#include "csci/npmle.hpp"
#include "csci/rng.hpp"

namespace {

csci::CurrentStatusSample random_sample(oracle::TestRng& rng, long n) {
    std::vector<std::pair<double, int>> raw;
    for (long i = 0; i < n; ++i) {
        const double t = 8.0 * rng.uniform();
        raw.emplace_back(t, t > 2.0 + 4.0 * rng.uniform() ? 1 : 0);
    }
    return csci::from_pairs(raw);
}

} // namespace

TEST_SUITE("lrt") {

TEST_CASE("critical value constant") {
    CHECK(csci::kLrtCritical95 == 2.28648);
    const csci::LrtConfig cfg;
    CHECK(cfg.critical_value == csci::kLrtCritical95);
    CHECK(cfg.grid_tol == 1e-4);
}

TEST_CASE("lrt_stat: zero at the unrestricted optimum, positive elsewhere") {
    oracle::TestRng rng(301);
    for (int rep = 0; rep < 30; ++rep) {
        const auto s = random_sample(rng, rng.range(5, 60));
        const double t = 8.0 * rng.uniform();
        const auto fit = csci::npmle_fit(s);
        CHECK(csci::lrt_stat(s, t, fit(t)) == doctest::Approx(0.0).epsilon(1e-10));
        const double other = rng.uniform();
        CHECK(csci::lrt_stat(s, t, other) >= 0.0);
    }
}

TEST_CASE("lrt_stat: equals twice the log-likelihood drop") {
    oracle::TestRng rng(303);
    for (int rep = 0; rep < 40; ++rep) {
        const auto s = random_sample(rng, rng.range(4, 50));
        const double t = 8.0 * rng.uniform();
        const double theta0 = rng.uniform();
        const double ll_un = csci::loglik(s, csci::npmle_fit(s));
        const double ll_res = csci::loglik(s, csci::restricted_npmle(s, t, theta0));
        const double want = std::max(0.0, 2.0 * (ll_un - ll_res));
        CHECK(csci::lrt_stat(s, t, theta0) == doctest::Approx(want).epsilon(1e-12));
    }
}

TEST_CASE("lrt_stat: infinite when the restriction kills an observation") {
    const auto s = csci::from_pairs({{1.0, 1}, {3.0, 0}});
    const double inf = std::numeric_limits<double>::infinity();
    CHECK(csci::lrt_stat(s, 2.0, 0.0) == inf);  // event at 1 forced to prob 0
    CHECK(csci::lrt_stat(s, 2.0, 1.0) == inf);  // non-event at 3 forced to prob 0
    CHECK_THROWS(csci::lrt_stat(s, 2.0, -0.1));
    CHECK_THROWS(csci::lrt_stat(s, 2.0, 1.1));
}

TEST_CASE("lrt_interval: agrees with a brute-force grid inversion") {
    oracle::TestRng rng(307);
    const csci::LrtConfig cfg;
    for (int rep = 0; rep < 8; ++rep) {
        const auto s = random_sample(rng, rng.range(10, 40));
        const double t = 1.0 + 6.0 * rng.uniform();
        const auto [lo, hi] = csci::lrt_interval(s, t, cfg);
        double brute_lo = 2.0, brute_hi = -1.0;
        for (long j = 0; j <= 10000; ++j) {
            const double theta = double(j) * 1e-4;
            if (csci::lrt_stat(s, t, theta) <= cfg.critical_value) {
                brute_lo = std::min(brute_lo, theta);
                brute_hi = std::max(brute_hi, theta);
            }
        }
        REQUIRE(brute_hi >= brute_lo);  // the fit value always passes
        CHECK(std::fabs(lo - brute_lo) <= 2e-4);
        CHECK(std::fabs(hi - brute_hi) <= 2e-4);
        CHECK(lo <= hi);
        const auto fit = csci::npmle_fit(s);
        CHECK(lo <= fit(t) + 1e-12);
        CHECK(hi >= fit(t) - 1e-12);
    }
}

TEST_CASE("lrt_interval: statistic crosses the threshold at the endpoints") {
    oracle::TestRng rng(311);
    const csci::LrtConfig cfg;
    for (int rep = 0; rep < 10; ++rep) {
        const auto s = random_sample(rng, 30);
        const double t = 2.0 + 4.0 * rng.uniform();
        const auto [lo, hi] = csci::lrt_interval(s, t, cfg);
        if (lo > 2.0 * cfg.grid_tol)
            CHECK(csci::lrt_stat(s, t, lo - 2.0 * cfg.grid_tol) > cfg.critical_value);
        if (hi < 1.0 - 2.0 * cfg.grid_tol)
            CHECK(csci::lrt_stat(s, t, hi + 2.0 * cfg.grid_tol) > cfg.critical_value);
        const double inside = 0.5 * (lo + hi);
        CHECK(csci::lrt_stat(s, t, inside) <= cfg.critical_value + 1e-9);
    }
}

TEST_CASE("lrt_interval: fitted overload is the same computation") {
    oracle::TestRng rng(313);
    const auto s = random_sample(rng, 45);
    const auto fit = csci::npmle_fit(s);
    const csci::LrtConfig cfg;
    for (double t : {1.0, 3.5, 6.2}) {
        CHECK(csci::lrt_interval(s, t, cfg) == csci::lrt_interval_fitted(s, fit, t, cfg));
    }
}

TEST_CASE("lrt_interval: saturates when everything passes") {
    // two observations and a huge critical value: every theta passes
    const auto s = csci::from_pairs({{1.0, 0}, {2.0, 1}});
    csci::LrtConfig cfg;
    cfg.critical_value = 1e9;
    const auto [lo, hi] = csci::lrt_interval(s, 1.5, cfg);
    CHECK(lo == 0.0);
    CHECK(hi == 1.0);
}

TEST_CASE("lrt config validation") {
    const auto s = csci::from_pairs({{1.0, 0}, {2.0, 1}});
    csci::LrtConfig cfg;
    cfg.critical_value = 0.0;
    CHECK_THROWS(csci::lrt_interval(s, 1.5, cfg));
    cfg.critical_value = 2.0;
    cfg.grid_tol = 0.0;
    CHECK_THROWS(csci::lrt_interval(s, 1.5, cfg));
    cfg.grid_tol = 0.5;
    CHECK_THROWS(csci::lrt_interval(s, 1.5, cfg));
}

TEST_CASE("lrt_interval: long-run coverage near nominal") {
    // exponential event and assessment times, checked at the median
    const double t = std::log(2.0);
    const double truth = 0.5;
    const long n = 400, reps = 300;
    long hits = 0;
    const csci::LrtConfig cfg;
    for (long r = 0; r < reps; ++r) {
        csci::Rng rng(77, std::uint64_t(r));
        std::vector<std::pair<double, int>> raw;
        for (long i = 0; i < n; ++i) {
            const double ev = -std::log1p(-rng.uniform());
            const double c = -std::log1p(-rng.uniform());
            raw.emplace_back(c, ev <= c ? 1 : 0);
        }
        const auto s = csci::from_pairs(raw);
        const auto [lo, hi] = csci::lrt_interval(s, t, cfg);
        if (lo <= truth && truth <= hi) ++hits;
    }
    const double coverage = double(hits) / double(reps);
    CHECK(coverage >= 0.90);
    CHECK(coverage <= 0.99);
}

} // TEST_SUITE
