#pragma once

#include "tropkit/rational.hpp"

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace tropkit {

struct EdgeSpec {
    std::string id;
    std::string tail;
    std::string head;
    Rational length;
};

struct Edge {
    std::string id;
    std::size_t tail = 0;
    std::size_t head = 0;
    Rational length;
};

// Where an edge end meets a vertex.
struct Incidence {
    std::size_t edge = 0;
    bool at_tail = true;
};

class GraphPoint;

// A point in the coordinates of the input graph, where loops are unsplit.
struct PointPosition {
    bool is_vertex = true;
    std::string name; // vertex name or edge id
    Rational offset;
};

// Connected compact metric graph with positive rational edge lengths.
// Loops are split at their midpoint on construction, so no stored edge has
// equal endpoints.
class MetricGraph {
public:
    // Throws Error(invalid_input) on a disconnected graph, nonpositive
    // length, duplicate names or dangling vertex references.
    static MetricGraph build(std::vector<std::string> vertices, const std::vector<EdgeSpec>& edges);

    std::size_t vertex_count() const { return vertices_.size(); }
    std::size_t edge_count() const { return edges_.size(); }
    const std::string& vertex_name(std::size_t v) const { return vertices_[v]; }
    const std::vector<std::string>& vertex_names() const { return vertices_; }
    const Edge& edge(std::size_t e) const { return edges_[e]; }
    const std::vector<Edge>& edges() const { return edges_; }
    const std::vector<Incidence>& incident(std::size_t v) const { return incidence_[v]; }
    const Rational& total_length() const { return total_length_; }
    std::size_t loops_split() const { return loop_halves_.size(); }

    std::optional<std::size_t> find_vertex(const std::string& name) const;
    std::optional<std::size_t> find_edge(const std::string& id) const;

    // Resolves a point given by a vertex name.
    GraphPoint vertex_point(const std::string& name) const;
    // Resolves (edge id, offset from tail); ids of split loops are accepted.
    GraphPoint edge_point(const std::string& id, const Rational& offset) const;

    // Inverse of vertex_point / edge_point.
    PointPosition position(const GraphPoint& p) const;

    // Original edge list with loops restored, for serialization.
    std::vector<EdgeSpec> original_edges() const { return original_; }
    std::vector<std::string> original_vertices() const;

private:
    std::vector<std::string> vertices_;
    std::vector<Edge> edges_;
    std::vector<std::vector<Incidence>> incidence_;
    std::map<std::string, std::size_t> vertex_index_;
    std::map<std::string, std::size_t> edge_index_;
    // loop id -> (first half, second half)
    std::map<std::string, std::pair<std::size_t, std::size_t>> loop_halves_;
    std::vector<EdgeSpec> original_;
    std::size_t original_vertex_count_ = 0;
    Rational total_length_;
};

using GraphHandle = std::shared_ptr<const MetricGraph>;

// A vertex, or an interior point of an edge at 0 < offset < length from the
// tail. Construction through MetricGraph normalizes endpoint offsets to
// vertices, so equality is positional.
class GraphPoint {
public:
    static GraphPoint at_vertex(std::size_t v);
    static GraphPoint on_edge(const MetricGraph& g, std::size_t e, const Rational& offset);

    bool is_vertex() const { return !edge_; }
    std::size_t vertex() const { return vertex_; }
    std::size_t edge() const { return *edge_; }
    const Rational& offset() const { return offset_; }

    friend bool operator==(const GraphPoint& a, const GraphPoint& b);
    friend bool operator<(const GraphPoint& a, const GraphPoint& b);
    friend bool operator!=(const GraphPoint& a, const GraphPoint& b) { return !(a == b); }

private:
    std::size_t vertex_ = 0;
    std::optional<std::size_t> edge_;
    Rational offset_;
};

std::string describe(const MetricGraph& g, const GraphPoint& p);

struct ValidationReport {
    bool valid = false;
    std::string message;
    std::optional<MetricGraph> graph; // normalized, when valid
};

ValidationReport mg_validate(std::vector<std::string> vertices, const std::vector<EdgeSpec>& edges);

// Shortest-path distance along the graph.
Rational mg_distance(const MetricGraph& g, const GraphPoint& p, const GraphPoint& q);

// Default sampling: all vertices plus `per_edge` evenly spaced interior points per edge.
std::vector<GraphPoint> sample_points(const MetricGraph& g, std::size_t per_edge);

} // namespace tropkit
