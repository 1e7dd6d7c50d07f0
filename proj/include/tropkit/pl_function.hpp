#pragma once

#include "tropkit/closed_subset.hpp"
#include "tropkit/divisor.hpp"
#include "tropkit/tropical.hpp"

#include <vector>

namespace tropkit {

struct Breakpoint {
    Rational offset;
    Rational value;
    friend bool operator==(const Breakpoint& a, const Breakpoint& b) { return a.offset == b.offset && a.value == b.value; }
};

// Continuous piecewise-linear function: per edge a strictly increasing list
// of breakpoints from offset 0 to the edge length, linear in between. Values
// are kept for every vertex so isolated vertices are covered too. Redundant
// breakpoints (no change of slope) are always removed.
class PLFunction {
public:
    PLFunction() = default;
    static PLFunction constant(const MetricGraph& g, const Rational& value);
    // Throws Error(precondition) on discontinuity or malformed breakpoints.
    static PLFunction from_parts(const MetricGraph& g, std::vector<Rational> vertex_values,
                                 std::vector<std::vector<Breakpoint>> edges);

    std::size_t edge_count() const { return edges_.size(); }
    std::size_t vertex_count() const { return vertex_values_.size(); }
    const std::vector<Breakpoint>& edge(std::size_t e) const { return edges_[e]; }
    const Rational& vertex_value(std::size_t v) const { return vertex_values_[v]; }

    Rational eval(const GraphPoint& x) const;

    PLFunction operator-() const;
    friend PLFunction operator+(const PLFunction& a, const PLFunction& b);
    friend PLFunction operator-(const PLFunction& a, const PLFunction& b);
    PLFunction shifted(const Rational& c) const;

    friend bool operator==(const PLFunction& a, const PLFunction& b)
    {
        return a.vertex_values_ == b.vertex_values_ && a.edges_ == b.edges_;
    }

private:
    friend struct PLBuilder;

    std::vector<Rational> vertex_values_;
    std::vector<std::vector<Breakpoint>> edges_;
};

Rational pl_eval(const PLFunction& f, const GraphPoint& x);

// At each point, the sum over incoming directions of the slope toward it.
Divisor pl_div(const MetricGraph& g, const PLFunction& f);

PLFunction pl_min(const PLFunction& a, const PLFunction& b);
PLFunction pl_max(const PLFunction& a, const PLFunction& b);
PLFunction pl_min(const std::vector<PLFunction>& fs);
// min(f, t)
PLFunction pl_clip(const MetricGraph& g, const PLFunction& f, const Rational& level);

Rational pl_min_value(const PLFunction& f);
Rational pl_max_value(const PLFunction& f);
// The representative with minimum 0.
PLFunction pl_normalized(const PLFunction& f);
bool pl_is_constant(const PLFunction& f);

struct ExtremumSet {
    Rational value;
    ClosedSubset set;
};

ExtremumSet pl_extremum_set(const MetricGraph& g, const PLFunction& f, Extremum which);

Rational pl_integral(const PLFunction& f);
bool pl_has_integral_slopes(const PLFunction& f);

// Sorted distinct values taken at vertices and breakpoints.
std::vector<Rational> pl_levels(const PLFunction& f);

// Closure of {x : lo < f(x) < hi and f is not locally constant at x}.
ClosedSubset pl_swept(const MetricGraph& g, const PLFunction& f, const Rational& lo, const Rational& hi);

} // namespace tropkit
