#pragma once

#include "tropkit/metric_graph.hpp"

#include <vector>

namespace tropkit {

struct Interval {
    Rational lo;
    Rational hi;
    friend bool operator==(const Interval& a, const Interval& b) { return a.lo == b.lo && a.hi == b.hi; }
};

// A closed subset of a metric graph: a set of vertices plus, per edge, sorted
// disjoint closed intervals of offsets. Canonical form: overlapping or
// touching intervals are merged, an interval reaching an edge end forces the
// end vertex into the set, and single points at edge ends are stored as
// vertices only.
class ClosedSubset {
public:
    ClosedSubset() = default;
    static ClosedSubset empty(const MetricGraph& g);
    static ClosedSubset everything(const MetricGraph& g);
    static ClosedSubset of_points(const MetricGraph& g, const std::vector<GraphPoint>& points);

    void add_vertex(std::size_t v) { vertices_[v] = true; }
    void add_interval(const MetricGraph& g, std::size_t e, const Rational& lo, const Rational& hi);
    void add_point(const MetricGraph& g, const GraphPoint& p);

    bool has_vertex(std::size_t v) const { return vertices_[v]; }
    const std::vector<Interval>& intervals(std::size_t e) const { return edges_[e]; }
    std::size_t edge_count() const { return edges_.size(); }
    std::size_t vertex_count() const { return vertices_.size(); }

    bool contains(const GraphPoint& p) const;
    bool is_empty() const;
    bool covers(const MetricGraph& g) const;
    // True when the set has no interval of positive length.
    bool is_finite() const;
    // All points of a finite set, in GraphPoint order.
    std::vector<GraphPoint> points(const MetricGraph& g) const;
    // Points of the set adjacent to its complement.
    std::vector<GraphPoint> boundary(const MetricGraph& g) const;
    // Total length of the set.
    Rational measure() const;

    ClosedSubset united(const ClosedSubset& other, const MetricGraph& g) const;
    ClosedSubset intersected(const ClosedSubset& other, const MetricGraph& g) const;

    // Pieces of the complement, each described by the vertices and edges it
    // touches (edges listed by index with the uncovered open intervals).
    struct Gap {
        std::vector<std::size_t> vertices;
        std::vector<std::size_t> edges;
    };
    std::vector<Gap> complement_components(const MetricGraph& g) const;

    friend bool operator==(const ClosedSubset& a, const ClosedSubset& b)
    {
        return a.vertices_ == b.vertices_ && a.edges_ == b.edges_;
    }
    friend bool operator!=(const ClosedSubset& a, const ClosedSubset& b) { return !(a == b); }

private:
    void normalize_edge(const MetricGraph& g, std::size_t e);

    std::vector<bool> vertices_;
    std::vector<std::vector<Interval>> edges_;
};

std::string describe(const MetricGraph& g, const ClosedSubset& set);

} // namespace tropkit
