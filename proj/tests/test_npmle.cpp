#include <cmath>
#include <limits>
#include <map>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"

#include "csci/data.hpp"
#include "csci/npmle.hpp"

namespace {

struct Cells {
    std::vector<double> times;
    std::vector<long> events;
    std::vector<long> totals;
};

Cells collapse(const csci::CurrentStatusSample& s) {
    Cells c;
    for (long i = 0; i < s.n(); ++i) {
        if (c.times.empty() || c.times.back() != s.times[i]) {
            c.times.push_back(s.times[i]);
            c.events.push_back(0);
            c.totals.push_back(0);
        }
        c.events.back() += s.events[i];
        c.totals.back() += 1;
    }
    return c;
}

csci::CurrentStatusSample random_sample(oracle::TestRng& rng, long n, long time_range) {
    std::vector<std::pair<double, int>> raw;
    for (long i = 0; i < n; ++i)
        raw.emplace_back(double(rng.range(1, time_range)), int(rng.range(0, 1)));
    return csci::from_pairs(raw);
}

} // namespace

TEST_SUITE("npmle") {

TEST_CASE("StepCdf: right-continuous step evaluation") {
    const csci::StepCdf f{{1.0, 3.0, 5.0}, {0.2, 0.5, 0.9}};
    CHECK(f(0.0) == 0.0);
    CHECK(f(0.999) == 0.0);
    CHECK(f(1.0) == 0.2);
    CHECK(f(2.9) == 0.2);
    CHECK(f(3.0) == 0.5);
    CHECK(f(4.0) == 0.5);
    CHECK(f(5.0) == 0.9);
    CHECK(f(100.0) == 0.9);
}

TEST_CASE("npmle_fit: equals the max-min isotonic formula") {
    oracle::TestRng rng(41);
    for (int rep = 0; rep < 80; ++rep) {
        const auto s = random_sample(rng, rng.range(2, 40), rng.range(2, 9));
        const auto fit = csci::npmle_fit(s);
        const auto cells = collapse(s);
        REQUIRE(fit.knots.size() == cells.times.size());
        std::vector<double> frac(cells.times.size()), w(cells.times.size());
        for (std::size_t i = 0; i < cells.times.size(); ++i) {
            frac[i] = double(cells.events[i]) / double(cells.totals[i]);
            w[i] = double(cells.totals[i]);
        }
        const auto iso = oracle::iso_minimax(frac, w);
        for (std::size_t i = 0; i < iso.size(); ++i) {
            CHECK(fit.knots[i] == cells.times[i]);
            CHECK(fit.values[i] == doctest::Approx(iso[i]).epsilon(1e-12));
        }
    }
}

TEST_CASE("npmle_fit: already-monotone data is interpolated exactly") {
    const auto s = csci::from_pairs(
        {{1.0, 0}, {2.0, 0}, {3.0, 1}, {3.0, 0}, {4.0, 1}, {5.0, 1}});
    const auto fit = csci::npmle_fit(s);
    CHECK(fit.values == std::vector<double>{0.0, 0.0, 0.5, 1.0, 1.0});
}

TEST_CASE("npmle_fit: no feasible curve has a higher likelihood") {
    oracle::TestRng rng(57);
    for (int rep = 0; rep < 20; ++rep) {
        const auto s = random_sample(rng, 25, 6);
        const auto fit = csci::npmle_fit(s);
        const double best = csci::loglik(s, fit);
        for (int cand = 0; cand < 200; ++cand) {
            csci::StepCdf alt;
            alt.knots = fit.knots;
            double v = 0.0;
            for (std::size_t i = 0; i < fit.knots.size(); ++i) {
                v = std::min(1.0, v + rng.uniform() * 0.4);
                alt.values.push_back(v);
            }
            CHECK(csci::loglik(s, alt) <= best + 1e-9);
        }
    }
}

TEST_CASE("loglik: zero-probability observations and conventions") {
    const auto s = csci::from_pairs({{1.0, 1}, {2.0, 0}});
    const csci::StepCdf zero{{1.0, 2.0}, {0.0, 0.0}};
    CHECK(csci::loglik(s, zero) == -std::numeric_limits<double>::infinity());
    const csci::StepCdf one{{1.0, 2.0}, {1.0, 1.0}};
    CHECK(csci::loglik(s, one) == -std::numeric_limits<double>::infinity());
    const csci::StepCdf half{{1.0, 2.0}, {0.5, 0.5}};
    CHECK(csci::loglik(s, half) == doctest::Approx(2.0 * std::log(0.5)));
}

TEST_CASE("restricted_npmle: pins the curve at the knot") {
    oracle::TestRng rng(71);
    for (int rep = 0; rep < 40; ++rep) {
        const auto s = random_sample(rng, rng.range(3, 30), 8);
        const double t = double(rng.range(1, 8)) + (rep % 3 == 0 ? 0.5 : 0.0);
        const double theta0 = rng.uniform();
        const auto fit = csci::restricted_npmle(s, t, theta0);
        CHECK(fit(t) == doctest::Approx(theta0).epsilon(1e-14));
        for (std::size_t i = 0; i + 1 < fit.values.size(); ++i)
            CHECK(fit.values[i] <= fit.values[i + 1] + 1e-14);
        for (std::size_t i = 0; i < fit.knots.size(); ++i) {
            if (fit.knots[i] < t) CHECK(fit.values[i] <= theta0 + 1e-14);
            if (fit.knots[i] > t) CHECK(fit.values[i] >= theta0 - 1e-14);
        }
        CHECK(csci::loglik(s, fit) <= csci::loglik(s, csci::npmle_fit(s)) + 1e-12);
    }
}

TEST_CASE("restricted_npmle: beats random feasible competitors") {
    oracle::TestRng rng(73);
    for (int rep = 0; rep < 15; ++rep) {
        const auto s = random_sample(rng, 20, 6);
        const double t = 3.5;
        const double theta0 = 0.2 + 0.6 * rng.uniform();
        const auto fit = csci::restricted_npmle(s, t, theta0);
        const double best = csci::loglik(s, fit);
        for (int cand = 0; cand < 150; ++cand) {
            csci::StepCdf alt;
            alt.knots = fit.knots;
            alt.values.resize(fit.knots.size());
            double v = 0.0;
            for (std::size_t i = 0; i < fit.knots.size(); ++i) {
                if (fit.knots[i] <= t) {
                    v = std::min(theta0, v + rng.uniform() * theta0);
                } else {
                    v = std::max(v, std::min(1.0, theta0 + rng.uniform() * (1 - theta0)));
                }
                alt.values[i] = v;
            }
            CHECK(csci::loglik(s, alt) <= best + 1e-9);
        }
        // the clamped unrestricted fit is feasible too
        const auto un = csci::npmle_fit(s);
        csci::StepCdf clamp = un;
        for (std::size_t i = 0; i < clamp.knots.size(); ++i)
            clamp.values[i] = clamp.knots[i] <= t
                                  ? std::min(clamp.values[i], theta0)
                                  : std::max(clamp.values[i], theta0);
        CHECK(csci::loglik(s, clamp) <= best + 1e-9);
    }
}

TEST_CASE("restricted_npmle: matches the lattice maximum on tiny samples") {
    oracle::TestRng rng(83);
    const auto grid = oracle::farey(8);
    for (int rep = 0; rep < 120; ++rep) {
        const auto s = random_sample(rng, rng.range(1, 8), rng.range(1, 5));
        const auto cells = collapse(s);

        const double got_un = csci::loglik(s, csci::npmle_fit(s));
        const double want_un =
            oracle::lattice_max_loglik(cells.events, cells.totals, grid);
        CHECK(got_un == doctest::Approx(want_un).epsilon(1e-9));

        const double theta0 = rng.uniform();
        const double t = double(rng.range(1, 5)) - 0.5 * double(rep % 2);
        auto values = grid;
        values.push_back(theta0);
        std::sort(values.begin(), values.end());
        std::vector<int> side(cells.times.size(), 0);
        for (std::size_t i = 0; i < cells.times.size(); ++i)
            side[i] = cells.times[i] < t ? -1 : (cells.times[i] == t ? 2 : +1);
        const double got_res = csci::loglik(s, csci::restricted_npmle(s, t, theta0));
        const double want_res = oracle::lattice_max_loglik(cells.events, cells.totals,
                                                           values, side, theta0);
        CHECK(got_res == doctest::Approx(want_res).epsilon(1e-9));
    }
}

} // TEST_SUITE
