#include "csci/adjust.hpp"

#include <algorithm>
#include <stdexcept>

namespace csci {

namespace {

void require_aligned(const ConfidenceCurve& c) {
    if (c.lower.size() != c.grid.size() || c.upper.size() != c.grid.size())
        throw std::invalid_argument("confidence curve: misaligned limit vectors");
}

// Pin values left of the first minimum over [0, mid] and right of the first
// maximum over [mid, k-1]; mid belongs to both halves.
void edge_one(std::vector<double>& v) {
    const std::size_t k = v.size();
    if (k < 2) return;
    const std::size_t mid = (k + 1) / 2 - 1;  // ceil(k/2), 0-indexed
    const std::size_t lo =
        std::size_t(std::min_element(v.begin(), v.begin() + mid + 1) - v.begin());
    const std::size_t hi =
        std::size_t(std::max_element(v.begin() + mid, v.end()) - v.begin());
    std::fill(v.begin(), v.begin() + lo, v[lo]);
    std::fill(v.begin() + hi + 1, v.end(), v[hi]);
}

void running_max(std::vector<double>& v) {
    for (std::size_t i = 1; i < v.size(); ++i) v[i] = std::max(v[i], v[i - 1]);
}

void running_min_from_right(std::vector<double>& v) {
    for (std::size_t i = v.size(); i-- > 1;) v[i - 1] = std::min(v[i - 1], v[i]);
}

std::vector<double> middle_one(std::vector<double> v) {
    std::vector<double> w = v;
    running_max(v);
    running_min_from_right(w);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = 0.5 * (v[i] + w[i]);
    return v;
}

} // namespace

AdjustmentPlan make_plan(std::vector<AdjustStep> steps) {
    bool lu = false, mv = false;
    for (AdjustStep s : steps) {
        lu = lu || s == AdjustStep::lower_upper;
        mv = mv || s == AdjustStep::middle_value;
    }
    if (lu && mv)
        throw std::invalid_argument(
            "adjustment plan: lower-upper and middle-value cannot be combined");
    return AdjustmentPlan{std::move(steps)};
}

AdjustmentPlan parse_adjust_spec(const std::string& spec) {
    std::vector<AdjustStep> steps;
    std::size_t pos = 0;
    while (pos <= spec.size()) {
        std::size_t comma = spec.find(',', pos);
        if (comma == std::string::npos) comma = spec.size();
        std::string tok = spec.substr(pos, comma - pos);
        if (tok == "edge") {
            steps.push_back(AdjustStep::edge);
        } else if (tok == "lower-upper" || tok == "lower_upper") {
            steps.push_back(AdjustStep::lower_upper);
        } else if (tok == "middle" || tok == "middle-value" || tok == "middle_value") {
            steps.push_back(AdjustStep::middle_value);
        } else {
            throw std::invalid_argument("adjustment plan: unknown step '" + tok + "'");
        }
        pos = comma + 1;
    }
    return make_plan(std::move(steps));
}

ConfidenceCurve edge_adjust(ConfidenceCurve curve) {
    require_aligned(curve);
    edge_one(curve.lower);
    edge_one(curve.upper);
    return curve;
}

ConfidenceCurve lower_upper_adjust(ConfidenceCurve curve) {
    require_aligned(curve);
    running_max(curve.lower);
    running_min_from_right(curve.upper);
    return curve;
}

ConfidenceCurve middle_value_adjust(ConfidenceCurve curve) {
    require_aligned(curve);
    curve.lower = middle_one(std::move(curve.lower));
    curve.upper = middle_one(std::move(curve.upper));
    return curve;
}

ConfidenceCurve apply_plan(const AdjustmentPlan& plan, ConfidenceCurve curve,
                           std::size_t* clipped) {
    for (AdjustStep s : plan.steps) {
        switch (s) {
            case AdjustStep::edge: curve = edge_adjust(std::move(curve)); break;
            case AdjustStep::lower_upper: curve = lower_upper_adjust(std::move(curve)); break;
            case AdjustStep::middle_value: curve = middle_value_adjust(std::move(curve)); break;
        }
    }
    for (std::size_t i = 0; i < curve.grid.size(); ++i) {
        if (curve.lower[i] > curve.upper[i]) {
            curve.lower[i] = curve.upper[i];
            if (clipped) ++*clipped;
        }
    }
    return curve;
}

} // namespace csci
