#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace csci {

// Ordered assessment times with aligned 0/1 event indicators.
struct CurrentStatusSample {
    std::vector<double> times;       // nondecreasing
    std::vector<int> events;         // aligned to times
    std::vector<long> event_prefix;  // event_prefix[i] = events in times[0..i)

    long n() const { return long(times.size()); }
};

struct GroupedRow {
    double time;
    long tested;
    long positive;
};

struct GroupedCounts {
    std::vector<GroupedRow> rows;
};

// Closed-interval window [a,b] with the assessments and events inside it.
struct WindowCount {
    double a;
    double b;
    long n_in;
    long y_in;
};

// Pointwise limits over an increasing evaluation grid.
struct ConfidenceCurve {
    std::vector<double> grid;
    std::vector<double> lower;
    std::vector<double> upper;
    std::string method;
    double level = 0.95;
};

// Stable-sorts by time; ties keep input order.
CurrentStatusSample from_pairs(const std::vector<std::pair<double, int>>& raw);

// Canonicalizes (sort, merge equal times, drop tested == 0 rows), then expands
// each row to `positive` event pairs and `tested - positive` non-event pairs.
CurrentStatusSample expand_grouped(const GroupedCounts& g);

WindowCount count_window(const CurrentStatusSample& s, double a, double b);

// CSV ingestion; header required. Individual format: time,status.
// Grouped format: time,tested,positive. Errors carry the offending line number.
CurrentStatusSample read_individual_csv(std::istream& in, const std::string& name);
GroupedCounts read_grouped_csv(std::istream& in, const std::string& name);
CurrentStatusSample read_individual_csv_file(const std::string& path);
GroupedCounts read_grouped_csv_file(const std::string& path);

} // namespace csci
