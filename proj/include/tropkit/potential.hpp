#pragma once

#include "tropkit/divisor.hpp"
#include "tropkit/pl_function.hpp"

#include <vector>

namespace tropkit {

// The graph cut at a finite set of extra points. Nodes are the original
// vertices followed by the cut points; every segment lies inside one edge.
struct Refinement {
    struct Segment {
        std::size_t a = 0; // node at the lower offset
        std::size_t b = 0;
        std::size_t edge = 0;
        Rational lo;
        Rational hi;
        Rational length() const { return hi - lo; }
    };

    std::vector<GraphPoint> nodes;
    std::vector<Segment> segments;
    // Per node, the segments touching it.
    std::vector<std::vector<std::size_t>> touching;
    // Per edge, (offset, node) from tail to head.
    std::vector<std::vector<std::pair<Rational, std::size_t>>> chains;

    std::size_t node_of(const GraphPoint& p) const;
    std::size_t other_end(std::size_t segment, std::size_t node) const
    {
        return segments[segment].a == node ? segments[segment].b : segments[segment].a;
    }
};

Refinement refine(const MetricGraph& g, const std::vector<GraphPoint>& cuts);

// Solves div(f) = rhs for f linear on every segment, with f = 0 at `ground`.
// rhs must have degree 0 and be supported on nodes of r.
std::vector<Rational> kirchhoff_solve(const Refinement& r, const std::vector<Rational>& rhs, std::size_t ground);

// Node values of a function linear on every segment, as a PLFunction on g.
PLFunction from_node_values(const MetricGraph& g, const Refinement& r, const std::vector<Rational>& values);

// j_q(., p): unit current enters at p and leaves at q; vanishes at q.
PLFunction mg_jfunction(const MetricGraph& g, const GraphPoint& q, const GraphPoint& p);

// Effective resistance r(p, q) = j_q(p, p).
Rational mg_resistance(const MetricGraph& g, const GraphPoint& p, const GraphPoint& q);

// The f with div(f) = to - from and minimum 0. Throws Error(precondition) on
// a degree mismatch.
PLFunction mg_potential(const MetricGraph& g, const Divisor& from, const Divisor& to);

} // namespace tropkit
