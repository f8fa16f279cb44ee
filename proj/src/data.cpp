#include "csci/data.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace csci {

namespace {

void build_prefix(CurrentStatusSample& s) {
    s.event_prefix.assign(s.times.size() + 1, 0);
    for (std::size_t i = 0; i < s.times.size(); ++i)
        s.event_prefix[i + 1] = s.event_prefix[i] + s.events[i];
}

[[noreturn]] void fail_at(const std::string& name, long line, const std::string& msg) {
    throw std::runtime_error(name + ":" + std::to_string(line) + ": " + msg);
}

std::vector<std::string> split_csv_line(std::string line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = line.find(',', start);
        if (pos == std::string::npos) {
            out.push_back(line.substr(start));
            break;
        }
        out.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
    for (auto& f : out) {
        while (!f.empty() && (f.front() == ' ' || f.front() == '\t')) f.erase(f.begin());
        while (!f.empty() && (f.back() == ' ' || f.back() == '\t')) f.pop_back();
    }
    return out;
}

double parse_double(const std::string& tok, const std::string& name, long line) {
    if (tok.empty()) fail_at(name, line, "empty numeric field");
    char* end = nullptr;
    const double v = std::strtod(tok.c_str(), &end);
    if (end != tok.c_str() + tok.size()) fail_at(name, line, "malformed number '" + tok + "'");
    if (!std::isfinite(v)) fail_at(name, line, "non-finite number '" + tok + "'");
    return v;
}

long parse_count(const std::string& tok, const std::string& name, long line) {
    if (tok.empty()) fail_at(name, line, "empty count field");
    char* end = nullptr;
    const long v = std::strtol(tok.c_str(), &end, 10);
    if (end != tok.c_str() + tok.size()) fail_at(name, line, "malformed count '" + tok + "'");
    if (v < 0) fail_at(name, line, "negative count '" + tok + "'");
    return v;
}

} // namespace

CurrentStatusSample from_pairs(const std::vector<std::pair<double, int>>& raw) {
    if (raw.empty()) throw std::invalid_argument("from_pairs: empty input");
    std::vector<std::size_t> order(raw.size());
    std::iota(order.begin(), order.end(), std::size_t(0));
    for (const auto& [t, d] : raw) {
        if (!std::isfinite(t) || t < 0.0) throw std::invalid_argument("from_pairs: bad time");
        if (d != 0 && d != 1) throw std::invalid_argument("from_pairs: indicator not in {0,1}");
    }
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return raw[i].first < raw[j].first; });
    CurrentStatusSample s;
    s.times.reserve(raw.size());
    s.events.reserve(raw.size());
    for (const std::size_t i : order) {
        s.times.push_back(raw[i].first);
        s.events.push_back(raw[i].second);
    }
    build_prefix(s);
    return s;
}

CurrentStatusSample expand_grouped(const GroupedCounts& g) {
    if (g.rows.empty()) throw std::invalid_argument("expand_grouped: empty input");
    auto rows = g.rows;
    std::sort(rows.begin(), rows.end(),
              [](const GroupedRow& a, const GroupedRow& b) { return a.time < b.time; });
    std::vector<GroupedRow> merged;
    for (const auto& r : rows) {
        if (r.positive > r.tested)
            throw std::invalid_argument("expand_grouped: positive exceeds tested");
        if (r.tested == 0) continue;
        if (!merged.empty() && merged.back().time == r.time) {
            merged.back().tested += r.tested;
            merged.back().positive += r.positive;
        } else {
            merged.push_back(r);
        }
    }
    if (merged.empty()) throw std::invalid_argument("expand_grouped: no tested observations");
    CurrentStatusSample s;
    for (const auto& r : merged) {
        for (long i = 0; i < r.positive; ++i) {
            s.times.push_back(r.time);
            s.events.push_back(1);
        }
        for (long i = 0; i < r.tested - r.positive; ++i) {
            s.times.push_back(r.time);
            s.events.push_back(0);
        }
    }
    build_prefix(s);
    return s;
}

WindowCount count_window(const CurrentStatusSample& s, double a, double b) {
    if (a > b) throw std::invalid_argument("count_window: a > b");
    const auto first = std::lower_bound(s.times.begin(), s.times.end(), a);
    const auto last = std::upper_bound(s.times.begin(), s.times.end(), b);
    const long i0 = long(first - s.times.begin());
    const long i1 = long(last - s.times.begin());
    return WindowCount{a, b, i1 - i0, s.event_prefix[i1] - s.event_prefix[i0]};
}

CurrentStatusSample read_individual_csv(std::istream& in, const std::string& name) {
    std::string line;
    long lineno = 0;
    if (!std::getline(in, line)) fail_at(name, 1, "missing header");
    ++lineno;
    if (!line.empty() && line.substr(0, 3) == "\xEF\xBB\xBF") line.erase(0, 3);
    auto header = split_csv_line(line);
    if (header.size() != 2 || header[0] != "time" || header[1] != "status")
        fail_at(name, lineno, "expected header 'time,status'");
    std::vector<std::pair<double, int>> raw;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line == "\r") continue;
        auto f = split_csv_line(line);
        if (f.size() != 2) fail_at(name, lineno, "expected 2 fields");
        const double t = parse_double(f[0], name, lineno);
        const long d = parse_count(f[1], name, lineno);
        if (t < 0.0) fail_at(name, lineno, "negative time");
        if (d != 0 && d != 1) fail_at(name, lineno, "status must be 0 or 1");
        raw.emplace_back(t, int(d));
    }
    if (raw.empty()) fail_at(name, lineno, "no data rows");
    return from_pairs(raw);
}

GroupedCounts read_grouped_csv(std::istream& in, const std::string& name) {
    std::string line;
    long lineno = 0;
    if (!std::getline(in, line)) fail_at(name, 1, "missing header");
    ++lineno;
    if (!line.empty() && line.substr(0, 3) == "\xEF\xBB\xBF") line.erase(0, 3);
    auto header = split_csv_line(line);
    if (header.size() != 3 || header[0] != "time" || header[1] != "tested" ||
        header[2] != "positive")
        fail_at(name, lineno, "expected header 'time,tested,positive'");
    GroupedCounts g;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line == "\r") continue;
        auto f = split_csv_line(line);
        if (f.size() != 3) fail_at(name, lineno, "expected 3 fields");
        GroupedRow r;
        r.time = parse_double(f[0], name, lineno);
        r.tested = parse_count(f[1], name, lineno);
        r.positive = parse_count(f[2], name, lineno);
        if (r.time < 0.0) fail_at(name, lineno, "negative time");
        if (r.positive > r.tested) fail_at(name, lineno, "positive exceeds tested");
        g.rows.push_back(r);
    }
    if (g.rows.empty()) fail_at(name, lineno, "no data rows");
    return g;
}

CurrentStatusSample read_individual_csv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error(path + ": cannot open");
    return read_individual_csv(in, path);
}

GroupedCounts read_grouped_csv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error(path + ": cannot open");
    return read_grouped_csv(in, path);
}

} // namespace csci
