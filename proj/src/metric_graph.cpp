#include "tropkit/metric_graph.hpp"

#include "tropkit/errors.hpp"

#include <algorithm>
#include <queue>
#include <set>

namespace tropkit {

MetricGraph MetricGraph::build(std::vector<std::string> vertices, const std::vector<EdgeSpec>& edges)
{
    MetricGraph g;
    if (vertices.empty()) {
        throw Error(ErrorCode::invalid_input, "graph has no vertices", "vertices");
    }
    for (std::size_t v = 0; v < vertices.size(); ++v) {
        if (!g.vertex_index_.emplace(vertices[v], v).second) {
            throw Error(ErrorCode::invalid_input, "duplicate vertex '" + vertices[v] + "'", "vertices[" + std::to_string(v) + "]");
        }
    }
    g.vertices_ = std::move(vertices);
    g.original_vertex_count_ = g.vertices_.size();
    g.original_ = edges;

    std::set<std::string> ids;
    auto add_vertex = [&g](std::string name) {
        while (g.vertex_index_.count(name)) {
            name += "'";
        }
        g.vertex_index_.emplace(name, g.vertices_.size());
        g.vertices_.push_back(name);
        return g.vertices_.size() - 1;
    };
    auto add_edge = [&g](std::string id, std::size_t tail, std::size_t head, Rational length) {
        g.edge_index_.emplace(id, g.edges_.size());
        g.edges_.push_back(Edge{std::move(id), tail, head, std::move(length)});
    };

    for (std::size_t i = 0; i < edges.size(); ++i) {
        const EdgeSpec& spec = edges[i];
        const std::string where = "edges[" + std::to_string(i) + "]";
        if (spec.id.empty() || !ids.insert(spec.id).second) {
            throw Error(ErrorCode::invalid_input, "missing or duplicate edge id '" + spec.id + "'", where + ".id");
        }
        const auto tail = g.vertex_index_.find(spec.tail);
        const auto head = g.vertex_index_.find(spec.head);
        if (tail == g.vertex_index_.end() || tail->second >= g.original_vertex_count_) {
            throw Error(ErrorCode::invalid_input, "edge '" + spec.id + "' references unknown vertex '" + spec.tail + "'", where + ".tail");
        }
        if (head == g.vertex_index_.end() || head->second >= g.original_vertex_count_) {
            throw Error(ErrorCode::invalid_input, "edge '" + spec.id + "' references unknown vertex '" + spec.head + "'", where + ".head");
        }
        if (spec.length <= 0) {
            throw Error(ErrorCode::invalid_input, "edge '" + spec.id + "' has nonpositive length", where + ".length");
        }
        if (tail->second == head->second) {
            const std::size_t anchor = tail->second;
            const std::size_t mid = add_vertex(spec.id + ".mid");
            const Rational half = spec.length / 2;
            g.loop_halves_[spec.id] = {g.edges_.size(), g.edges_.size() + 1};
            add_edge(spec.id + ".a", anchor, mid, half);
            add_edge(spec.id + ".b", mid, anchor, half);
        } else {
            add_edge(spec.id, tail->second, head->second, spec.length);
        }
    }

    g.incidence_.assign(g.vertices_.size(), {});
    g.total_length_ = 0;
    for (std::size_t e = 0; e < g.edges_.size(); ++e) {
        g.incidence_[g.edges_[e].tail].push_back({e, true});
        g.incidence_[g.edges_[e].head].push_back({e, false});
        g.total_length_ += g.edges_[e].length;
    }

    std::vector<bool> seen(g.vertices_.size(), false);
    std::vector<std::size_t> stack{0};
    seen[0] = true;
    while (!stack.empty()) {
        const std::size_t v = stack.back();
        stack.pop_back();
        for (const auto& inc : g.incidence_[v]) {
            const Edge& e = g.edges_[inc.edge];
            const std::size_t w = inc.at_tail ? e.head : e.tail;
            if (!seen[w]) {
                seen[w] = true;
                stack.push_back(w);
            }
        }
    }
    const auto missing = std::find(seen.begin(), seen.end(), false);
    if (missing != seen.end()) {
        throw Error(ErrorCode::invalid_input,
                    "graph is disconnected: vertex '" + g.vertices_[static_cast<std::size_t>(missing - seen.begin())] +
                        "' is unreachable from '" + g.vertices_[0] + "'",
                    "edges");
    }
    return g;
}

std::vector<std::string> MetricGraph::original_vertices() const
{
    return {vertices_.begin(), vertices_.begin() + static_cast<std::ptrdiff_t>(original_vertex_count_)};
}

std::optional<std::size_t> MetricGraph::find_vertex(const std::string& name) const
{
    const auto it = vertex_index_.find(name);
    return it == vertex_index_.end() ? std::nullopt : std::optional<std::size_t>(it->second);
}

std::optional<std::size_t> MetricGraph::find_edge(const std::string& id) const
{
    const auto it = edge_index_.find(id);
    return it == edge_index_.end() ? std::nullopt : std::optional<std::size_t>(it->second);
}

GraphPoint MetricGraph::vertex_point(const std::string& name) const
{
    const auto v = find_vertex(name);
    if (!v) {
        throw Error(ErrorCode::invalid_input, "unknown vertex '" + name + "'");
    }
    return GraphPoint::at_vertex(*v);
}

PointPosition MetricGraph::position(const GraphPoint& p) const
{
    for (const auto& [id, halves] : loop_halves_) {
        const Rational& half = edges_[halves.first].length;
        if (p.is_vertex() && p.vertex() == edges_[halves.first].head) {
            return {false, id, half};
        }
        if (!p.is_vertex() && p.edge() == halves.first) {
            return {false, id, p.offset()};
        }
        if (!p.is_vertex() && p.edge() == halves.second) {
            return {false, id, half + p.offset()};
        }
    }
    if (p.is_vertex()) {
        return {true, vertices_[p.vertex()], Rational(0)};
    }
    return {false, edges_[p.edge()].id, p.offset()};
}

GraphPoint MetricGraph::edge_point(const std::string& id, const Rational& offset) const
{
    if (const auto loop = loop_halves_.find(id); loop != loop_halves_.end()) {
        const Rational half = edges_[loop->second.first].length;
        if (offset < 0 || offset > 2 * half) {
            throw Error(ErrorCode::invalid_input, "offset " + format_rational(offset) + " outside edge '" + id + "'");
        }
        if (offset <= half) {
            return GraphPoint::on_edge(*this, loop->second.first, offset);
        }
        return GraphPoint::on_edge(*this, loop->second.second, offset - half);
    }
    const auto e = find_edge(id);
    if (!e) {
        throw Error(ErrorCode::invalid_input, "unknown edge '" + id + "'");
    }
    return GraphPoint::on_edge(*this, *e, offset);
}

GraphPoint GraphPoint::at_vertex(std::size_t v)
{
    GraphPoint p;
    p.vertex_ = v;
    return p;
}

GraphPoint GraphPoint::on_edge(const MetricGraph& g, std::size_t e, const Rational& offset)
{
    const Edge& edge = g.edge(e);
    if (offset < 0 || offset > edge.length) {
        throw Error(ErrorCode::invalid_input,
                    "offset " + format_rational(offset) + " outside edge '" + edge.id + "' of length " + format_rational(edge.length));
    }
    if (offset == 0) {
        return at_vertex(edge.tail);
    }
    if (offset == edge.length) {
        return at_vertex(edge.head);
    }
    GraphPoint p;
    p.edge_ = e;
    p.offset_ = offset;
    return p;
}

bool operator==(const GraphPoint& a, const GraphPoint& b)
{
    if (a.is_vertex() != b.is_vertex()) {
        return false;
    }
    if (a.is_vertex()) {
        return a.vertex_ == b.vertex_;
    }
    return *a.edge_ == *b.edge_ && a.offset_ == b.offset_;
}

bool operator<(const GraphPoint& a, const GraphPoint& b)
{
    if (a.is_vertex() != b.is_vertex()) {
        return a.is_vertex();
    }
    if (a.is_vertex()) {
        return a.vertex_ < b.vertex_;
    }
    if (*a.edge_ != *b.edge_) {
        return *a.edge_ < *b.edge_;
    }
    return a.offset_ < b.offset_;
}

std::string describe(const MetricGraph& g, const GraphPoint& p)
{
    if (p.is_vertex()) {
        return g.vertex_name(p.vertex());
    }
    return g.edge(p.edge()).id + "@" + format_rational(p.offset());
}

ValidationReport mg_validate(std::vector<std::string> vertices, const std::vector<EdgeSpec>& edges)
{
    ValidationReport report;
    try {
        report.graph = MetricGraph::build(std::move(vertices), edges);
        report.valid = true;
        report.message = "valid";
    } catch (const Error& e) {
        report.message = e.what();
    }
    return report;
}

namespace {

std::vector<Rational> vertex_distances(const MetricGraph& g, std::size_t source)
{
    std::vector<std::optional<Rational>> best(g.vertex_count());
    using Item = std::pair<Rational, std::size_t>;
    auto later = [](const Item& a, const Item& b) { return b.first < a.first; };
    std::priority_queue<Item, std::vector<Item>, decltype(later)> queue(later);
    best[source] = Rational(0);
    queue.emplace(Rational(0), source);
    while (!queue.empty()) {
        auto [d, v] = queue.top();
        queue.pop();
        if (d > *best[v]) {
            continue;
        }
        for (const auto& inc : g.incident(v)) {
            const Edge& e = g.edge(inc.edge);
            const std::size_t w = inc.at_tail ? e.head : e.tail;
            const Rational nd = d + e.length;
            if (!best[w] || nd < *best[w]) {
                best[w] = nd;
                queue.emplace(nd, w);
            }
        }
    }
    std::vector<Rational> out;
    for (auto& b : best) {
        out.push_back(*b);
    }
    return out;
}

// (vertex, distance to it) pairs through which a point is reached.
std::vector<std::pair<std::size_t, Rational>> exits(const MetricGraph& g, const GraphPoint& p)
{
    if (p.is_vertex()) {
        return {{p.vertex(), Rational(0)}};
    }
    const Edge& e = g.edge(p.edge());
    return {{e.tail, p.offset()}, {e.head, Rational(e.length - p.offset())}};
}

} // namespace

Rational mg_distance(const MetricGraph& g, const GraphPoint& p, const GraphPoint& q)
{
    if (p == q) {
        return 0;
    }
    std::optional<Rational> best;
    if (!p.is_vertex() && !q.is_vertex() && p.edge() == q.edge()) {
        best = abs(p.offset() - q.offset());
    }
    for (const auto& [a, da] : exits(g, p)) {
        const auto dist = vertex_distances(g, a);
        for (const auto& [b, db] : exits(g, q)) {
            const Rational total = da + dist[b] + db;
            if (!best || total < *best) {
                best = total;
            }
        }
    }
    return *best;
}

std::vector<GraphPoint> sample_points(const MetricGraph& g, std::size_t per_edge)
{
    std::vector<GraphPoint> out;
    for (std::size_t v = 0; v < g.vertex_count(); ++v) {
        out.push_back(GraphPoint::at_vertex(v));
    }
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
        for (std::size_t k = 1; k <= per_edge; ++k) {
            const Rational offset = g.edge(e).length * ratio(static_cast<long>(k), static_cast<long>(per_edge + 1));
            out.push_back(GraphPoint::on_edge(g, e, offset));
        }
    }
    return out;
}

} // namespace tropkit
