#include "csci/npmle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace csci {

double StepCdf::operator()(double t) const {
    const auto it = std::upper_bound(knots.begin(), knots.end(), t);
    if (it == knots.begin()) return 0.0;
    return values[std::size_t(it - knots.begin()) - 1];
}

namespace {

struct Cell {
    double time;
    double weight; // observations at this time
    double events; // events among them
};

std::vector<Cell> collapse_ties(const CurrentStatusSample& s) {
    std::vector<Cell> cells;
    for (long i = 0; i < s.n(); ++i) {
        if (!cells.empty() && cells.back().time == s.times[i]) {
            cells.back().weight += 1.0;
            cells.back().events += s.events[i];
        } else {
            cells.push_back(Cell{s.times[i], 1.0, double(s.events[i])});
        }
    }
    return cells;
}

// Weighted PAVA: returns the fitted value per cell.
std::vector<double> pava(const std::vector<Cell>& cells) {
    struct Block {
        double sum_events;
        double sum_weight;
        std::size_t count;
    };
    std::vector<Block> stack;
    stack.reserve(cells.size());
    for (const auto& c : cells) {
        Block b{c.events, c.weight, 1};
        while (!stack.empty() &&
               stack.back().sum_events * b.sum_weight >= b.sum_events * stack.back().sum_weight) {
            b.sum_events += stack.back().sum_events;
            b.sum_weight += stack.back().sum_weight;
            b.count += stack.back().count;
            stack.pop_back();
        }
        stack.push_back(b);
    }
    std::vector<double> fitted;
    fitted.reserve(cells.size());
    for (const auto& b : stack) {
        const double v = b.sum_events / b.sum_weight;
        for (std::size_t i = 0; i < b.count; ++i) fitted.push_back(v);
    }
    return fitted;
}

} // namespace

StepCdf npmle_fit(const CurrentStatusSample& s) {
    if (s.n() < 1) throw std::invalid_argument("npmle_fit: empty sample");
    const auto cells = collapse_ties(s);
    const auto fitted = pava(cells);
    StepCdf f;
    f.knots.reserve(cells.size());
    f.values.reserve(cells.size());
    for (std::size_t i = 0; i < cells.size(); ++i) {
        f.knots.push_back(cells[i].time);
        f.values.push_back(fitted[i]);
    }
    return f;
}

StepCdf restricted_npmle(const CurrentStatusSample& s, double t, double theta0) {
    if (s.n() < 1) throw std::invalid_argument("restricted_npmle: empty sample");
    if (!(theta0 >= 0.0 && theta0 <= 1.0))
        throw std::invalid_argument("restricted_npmle: theta0 outside [0,1]");
    const auto cells = collapse_ties(s);
    std::vector<Cell> left, right;
    bool has_t_cell = false;
    for (const auto& c : cells) {
        if (c.time < t) left.push_back(c);
        else if (c.time > t) right.push_back(c);
        else has_t_cell = true;
    }
    StepCdf f;
    f.knots.reserve(cells.size() + 1);
    f.values.reserve(cells.size() + 1);
    if (!left.empty()) {
        const auto fit = pava(left);
        for (std::size_t i = 0; i < left.size(); ++i) {
            f.knots.push_back(left[i].time);
            f.values.push_back(std::min(fit[i], theta0));
        }
    }
    // the value at t is the constraint itself, data there or not
    (void)has_t_cell;
    f.knots.push_back(t);
    f.values.push_back(theta0);
    if (!right.empty()) {
        const auto fit = pava(right);
        for (std::size_t i = 0; i < right.size(); ++i) {
            f.knots.push_back(right[i].time);
            f.values.push_back(std::max(fit[i], theta0));
        }
    }
    return f;
}

double loglik(const CurrentStatusSample& s, const StepCdf& F) {
    double total = 0.0;
    for (long i = 0; i < s.n(); ++i) {
        const double v = F(s.times[i]);
        if (s.events[i] == 1) {
            if (v <= 0.0) return -std::numeric_limits<double>::infinity();
            total += std::log(v);
        } else {
            if (v >= 1.0) return -std::numeric_limits<double>::infinity();
            total += std::log1p(-v);
        }
    }
    return total;
}

} // namespace csci
