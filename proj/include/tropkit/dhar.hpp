#pragma once

#include "tropkit/potential.hpp"

namespace tropkit {

struct DharResult {
    Divisor divisor;
    std::size_t firings = 0;
};

// Outcome of burning from q: which refinement nodes stay unburnt.
struct Burn {
    Refinement refinement;
    std::vector<bool> burnt;
    bool complete() const;
};

// Metric burning from q against the chips of d.
Burn dhar_burn(const MetricGraph& g, const Divisor& d, const GraphPoint& q);

// The q-reduced divisor equivalent to d, by repeated burning and firing of
// the unburnt set. Throws Error(precondition) unless d is effective and
// integral, Error(capacity) if the firing budget runs out.
DharResult dv_dhar(const MetricGraph& g, const Divisor& d, const GraphPoint& q, std::size_t max_firings = 100000);

} // namespace tropkit
