#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"

#include "csci/data.hpp"

namespace {

csci::CurrentStatusSample random_sample(oracle::TestRng& rng, long n,
                                        bool heavy_ties) {
    std::vector<std::pair<double, int>> raw;
    for (long i = 0; i < n; ++i) {
        double t = heavy_ties ? double(rng.range(0, 5)) : 10.0 * rng.uniform();
        raw.emplace_back(t, int(rng.range(0, 1)));
    }
    return csci::from_pairs(raw);
}

} // namespace

TEST_SUITE("data") {

TEST_CASE("from_pairs: sorts and builds the event prefix") {
    const auto s = csci::from_pairs({{3.0, 1}, {1.0, 0}, {2.0, 1}, {1.0, 1}});
    CHECK(s.n() == 4);
    CHECK(s.times == std::vector<double>{1.0, 1.0, 2.0, 3.0});
    CHECK(s.event_prefix.size() == 5);
    CHECK(s.event_prefix[0] == 0);
    CHECK(s.event_prefix[4] == 3);
    for (std::size_t i = 0; i < 4; ++i)
        CHECK(s.event_prefix[i + 1] - s.event_prefix[i] == s.events[i]);
}

TEST_CASE("from_pairs: rejects bad input") {
    CHECK_THROWS_AS(csci::from_pairs({}), std::invalid_argument);
    CHECK_THROWS_AS(csci::from_pairs({{-1.0, 0}}), std::invalid_argument);
    CHECK_THROWS_AS(csci::from_pairs({{1.0, 2}}), std::invalid_argument);
}

TEST_CASE("expand_grouped: merges, drops empties, expands counts") {
    csci::GroupedCounts g;
    g.rows = {{2.0, 3, 1}, {1.0, 2, 0}, {2.0, 1, 1}, {5.0, 0, 0}, {4.0, 2, 2}};
    const auto s = csci::expand_grouped(g);
    CHECK(s.n() == 8);  // 2 + (3+1) + 2, the zero-tested row dropped
    long y2 = 0, n2 = 0;
    for (long i = 0; i < s.n(); ++i)
        if (s.times[i] == 2.0) { n2++; y2 += s.events[i]; }
    CHECK(n2 == 4);
    CHECK(y2 == 2);
    CHECK(s.times.front() == 1.0);
    CHECK(s.times.back() == 4.0);
    CHECK(s.event_prefix.back() == 4);

    csci::GroupedCounts bad;
    bad.rows = {{1.0, 2, 3}};
    CHECK_THROWS_AS(csci::expand_grouped(bad), std::invalid_argument);
}

TEST_CASE("count_window: matches a linear scan") {
    oracle::TestRng rng(99);
    for (int rep = 0; rep < 60; ++rep) {
        const auto s = random_sample(rng, rng.range(1, 50), rep % 2 == 0);
        for (int k = 0; k < 20; ++k) {
            double a = -1.0 + 9.0 * rng.uniform();
            double b = a + 8.0 * rng.uniform();
            const auto w = csci::count_window(s, a, b);
            long n_in = 0, y_in = 0;
            for (long i = 0; i < s.n(); ++i)
                if (a <= s.times[i] && s.times[i] <= b) {
                    n_in++;
                    y_in += s.events[i];
                }
            CHECK(w.n_in == n_in);
            CHECK(w.y_in == y_in);
            CHECK(w.a == a);
            CHECK(w.b == b);
        }
    }
    const auto s = csci::from_pairs({{1.0, 1}, {1.0, 0}, {2.0, 1}});
    CHECK(csci::count_window(s, 1.0, 1.0).n_in == 2);  // boundary ties included
    CHECK(csci::count_window(s, 3.0, 9.0).n_in == 0);
    CHECK_THROWS_AS(csci::count_window(s, 2.0, 1.0), std::invalid_argument);
}

TEST_CASE("read_individual_csv: happy path and line-numbered errors") {
    std::istringstream ok("time,status\n0.5,1\n1.25,0\n0.5,0\n");
    const auto s = csci::read_individual_csv(ok, "mem");
    CHECK(s.n() == 3);
    CHECK(s.times == std::vector<double>{0.5, 0.5, 1.25});
    CHECK(s.event_prefix.back() == 1);

    std::istringstream bad("time,status\n0.5,1\nx,0\n");
    try {
        csci::read_individual_csv(bad, "mem");
        FAIL("expected a throw");
    } catch (const std::exception& e) {
        CHECK(std::string(e.what()).find("mem:3") != std::string::npos);
    }
    std::istringstream noheader("0.5,1\n");
    CHECK_THROWS(csci::read_individual_csv(noheader, "mem"));
    std::istringstream badstatus("time,status\n0.5,7\n");
    CHECK_THROWS(csci::read_individual_csv(badstatus, "mem"));
}

TEST_CASE("read_grouped_csv: happy path and validation") {
    std::istringstream ok("time,tested,positive\n1,10,2\n2,8,3\n");
    const auto g = csci::read_grouped_csv(ok, "mem");
    CHECK(g.rows.size() == 2);
    CHECK(g.rows[1].tested == 8);
    CHECK(g.rows[1].positive == 3);

    std::istringstream neg("time,tested,positive\n1,10,-1\n");
    CHECK_THROWS(csci::read_grouped_csv(neg, "mem"));
    std::istringstream over("time,tested,positive\n1,2,5\n");
    CHECK_THROWS(csci::expand_grouped(csci::read_grouped_csv(over, "mem")));
}

TEST_CASE("bundled grouped example loads cleanly") {
    const auto g = csci::read_grouped_csv_file(std::string(CSCI_DATA_DIR) +
                                               "/example_grouped.csv");
    long total = 0, positive = 0;
    for (const auto& row : g.rows) {
        total += row.tested;
        positive += row.positive;
        CHECK(row.positive <= row.tested);
    }
    CHECK(g.rows.size() == 81);
    CHECK(total == 850);
    CHECK(positive > 0);
    const auto s = csci::expand_grouped(g);
    CHECK(s.n() == 850);
    CHECK(std::is_sorted(s.times.begin(), s.times.end()));
}

TEST_CASE("read_*_csv_file: missing file carries the path") {
    try {
        csci::read_individual_csv_file("/nonexistent/nope.csv");
        FAIL("expected a throw");
    } catch (const std::exception& e) {
        CHECK(std::string(e.what()).find("nope.csv") != std::string::npos);
    }
}

} // TEST_SUITE
