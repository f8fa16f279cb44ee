#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "csci/data.hpp"

namespace csci {

enum class AdjustStep { edge, lower_upper, middle_value };

struct AdjustmentPlan {
    std::vector<AdjustStep> steps;
};

// Throws std::invalid_argument if lower_upper and middle_value are combined.
AdjustmentPlan make_plan(std::vector<AdjustStep> steps);

// Parses a comma-separated step list, e.g. "edge,lower-upper" or "edge,middle".
AdjustmentPlan parse_adjust_spec(const std::string& spec);

// Flattens both limit curves outside their extremal anchors: each limit is
// pinned left of its first minimum over the left half of the grid and right
// of its first maximum over the right half. Interior points are untouched.
ConfidenceCurve edge_adjust(ConfidenceCurve curve);

// Running maximum over the lower limits (left to right) and running minimum
// over the upper limits (right to left). Output is monotone and never wider.
ConfidenceCurve lower_upper_adjust(ConfidenceCurve curve);

// Averages the two monotone envelopes (running max from the left, running
// min from the right) for each limit curve separately.
ConfidenceCurve middle_value_adjust(ConfidenceCurve curve);

// Applies the steps in order, then clips lower_i = min(lower_i, upper_i)
// wherever the limits crossed; each clipped point bumps *clipped once.
ConfidenceCurve apply_plan(const AdjustmentPlan& plan, ConfidenceCurve curve,
                           std::size_t* clipped = nullptr);

}  // namespace csci
