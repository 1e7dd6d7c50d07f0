#include "tropkit/closed_subset.hpp"

#include "tropkit/errors.hpp"

#include <algorithm>
#include <numeric>

namespace tropkit {

ClosedSubset ClosedSubset::empty(const MetricGraph& g)
{
    ClosedSubset s;
    s.vertices_.assign(g.vertex_count(), false);
    s.edges_.assign(g.edge_count(), {});
    return s;
}

ClosedSubset ClosedSubset::everything(const MetricGraph& g)
{
    ClosedSubset s = empty(g);
    s.vertices_.assign(g.vertex_count(), true);
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
        s.edges_[e].push_back({Rational(0), g.edge(e).length});
    }
    return s;
}

ClosedSubset ClosedSubset::of_points(const MetricGraph& g, const std::vector<GraphPoint>& points)
{
    ClosedSubset s = empty(g);
    for (const auto& p : points) {
        s.add_point(g, p);
    }
    return s;
}

void ClosedSubset::add_interval(const MetricGraph& g, std::size_t e, const Rational& lo, const Rational& hi)
{
    if (lo > hi || lo < 0 || hi > g.edge(e).length) {
        throw Error(ErrorCode::precondition, "interval outside edge '" + g.edge(e).id + "'");
    }
    edges_[e].push_back({lo, hi});
    normalize_edge(g, e);
}

void ClosedSubset::add_point(const MetricGraph& g, const GraphPoint& p)
{
    if (p.is_vertex()) {
        add_vertex(p.vertex());
    } else {
        add_interval(g, p.edge(), p.offset(), p.offset());
    }
}

void ClosedSubset::normalize_edge(const MetricGraph& g, std::size_t e)
{
    auto& list = edges_[e];
    const Rational& length = g.edge(e).length;
    std::sort(list.begin(), list.end(), [](const Interval& a, const Interval& b) {
        return a.lo < b.lo || (a.lo == b.lo && a.hi < b.hi);
    });
    std::vector<Interval> merged;
    for (const auto& iv : list) {
        if (!merged.empty() && iv.lo <= merged.back().hi) {
            merged.back().hi = std::max(merged.back().hi, iv.hi);
        } else {
            merged.push_back(iv);
        }
    }
    std::vector<Interval> kept;
    for (const auto& iv : merged) {
        if (iv.lo == 0) {
            vertices_[g.edge(e).tail] = true;
        }
        if (iv.hi == length) {
            vertices_[g.edge(e).head] = true;
        }
        const bool end_point = iv.lo == iv.hi && (iv.lo == 0 || iv.hi == length);
        if (!end_point) {
            kept.push_back(iv);
        }
    }
    list = std::move(kept);
}

bool ClosedSubset::contains(const GraphPoint& p) const
{
    if (p.is_vertex()) {
        return vertices_[p.vertex()];
    }
    const auto& list = edges_[p.edge()];
    return std::any_of(list.begin(), list.end(), [&](const Interval& iv) { return iv.lo <= p.offset() && p.offset() <= iv.hi; });
}

bool ClosedSubset::is_empty() const
{
    return std::none_of(vertices_.begin(), vertices_.end(), [](bool b) { return b; }) &&
           std::all_of(edges_.begin(), edges_.end(), [](const auto& l) { return l.empty(); });
}

bool ClosedSubset::covers(const MetricGraph& g) const
{
    if (!std::all_of(vertices_.begin(), vertices_.end(), [](bool b) { return b; })) {
        return false;
    }
    for (std::size_t e = 0; e < edges_.size(); ++e) {
        if (edges_[e].size() != 1 || edges_[e][0].lo != 0 || edges_[e][0].hi != g.edge(e).length) {
            return false;
        }
    }
    return true;
}

bool ClosedSubset::is_finite() const
{
    for (const auto& list : edges_) {
        for (const auto& iv : list) {
            if (iv.lo != iv.hi) {
                return false;
            }
        }
    }
    return true;
}

std::vector<GraphPoint> ClosedSubset::points(const MetricGraph& g) const
{
    if (!is_finite()) {
        throw Error(ErrorCode::precondition, "set is not finite");
    }
    std::vector<GraphPoint> out;
    for (std::size_t v = 0; v < vertices_.size(); ++v) {
        if (vertices_[v]) {
            out.push_back(GraphPoint::at_vertex(v));
        }
    }
    for (std::size_t e = 0; e < edges_.size(); ++e) {
        for (const auto& iv : edges_[e]) {
            out.push_back(GraphPoint::on_edge(g, e, iv.lo));
        }
    }
    return out;
}

std::vector<GraphPoint> ClosedSubset::boundary(const MetricGraph& g) const
{
    std::vector<GraphPoint> out;
    for (std::size_t v = 0; v < vertices_.size(); ++v) {
        if (!vertices_[v]) {
            continue;
        }
        for (const auto& inc : g.incident(v)) {
            const auto& list = edges_[inc.edge];
            const Rational& length = g.edge(inc.edge).length;
            const bool covered = inc.at_tail ? (!list.empty() && list.front().lo == 0 && list.front().hi > 0)
                                             : (!list.empty() && list.back().hi == length && list.back().lo < length);
            if (!covered) {
                out.push_back(GraphPoint::at_vertex(v));
                break;
            }
        }
    }
    for (std::size_t e = 0; e < edges_.size(); ++e) {
        const Rational& length = g.edge(e).length;
        for (const auto& iv : edges_[e]) {
            if (iv.lo > 0) {
                out.push_back(GraphPoint::on_edge(g, e, iv.lo));
            }
            if (iv.hi < length && iv.hi != iv.lo) {
                out.push_back(GraphPoint::on_edge(g, e, iv.hi));
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

Rational ClosedSubset::measure() const
{
    Rational total = 0;
    for (const auto& list : edges_) {
        for (const auto& iv : list) {
            total += iv.hi - iv.lo;
        }
    }
    return total;
}

ClosedSubset ClosedSubset::united(const ClosedSubset& other, const MetricGraph& g) const
{
    ClosedSubset out = *this;
    for (std::size_t v = 0; v < vertices_.size(); ++v) {
        out.vertices_[v] = vertices_[v] || other.vertices_[v];
    }
    for (std::size_t e = 0; e < edges_.size(); ++e) {
        if (other.edges_[e].empty()) {
            continue;
        }
        out.edges_[e].insert(out.edges_[e].end(), other.edges_[e].begin(), other.edges_[e].end());
        out.normalize_edge(g, e);
    }
    return out;
}

ClosedSubset ClosedSubset::intersected(const ClosedSubset& other, const MetricGraph& g) const
{
    ClosedSubset out = empty(g);
    for (std::size_t v = 0; v < vertices_.size(); ++v) {
        out.vertices_[v] = vertices_[v] && other.vertices_[v];
    }
    for (std::size_t e = 0; e < edges_.size(); ++e) {
        const auto& a = edges_[e];
        const auto& b = other.edges_[e];
        std::size_t i = 0, j = 0;
        while (i < a.size() && j < b.size()) {
            const Rational lo = std::max(a[i].lo, b[j].lo);
            const Rational hi = std::min(a[i].hi, b[j].hi);
            if (lo <= hi) {
                out.edges_[e].push_back({lo, hi});
            }
            if (a[i].hi < b[j].hi) {
                ++i;
            } else {
                ++j;
            }
        }
        out.normalize_edge(g, e);
    }
    return out;
}

std::vector<ClosedSubset::Gap> ClosedSubset::complement_components(const MetricGraph& g) const
{
    // union-find over uncovered vertices and uncovered open gaps
    struct Piece {
        std::size_t edge;
        bool from_tail;
        bool to_head;
    };
    std::vector<Piece> gaps;
    for (std::size_t e = 0; e < edges_.size(); ++e) {
        const Rational& length = g.edge(e).length;
        Rational cursor = 0;
        bool at_start = true;
        for (const auto& iv : edges_[e]) {
            if (iv.lo > cursor) {
                gaps.push_back({e, at_start, false});
            }
            cursor = iv.hi;
            at_start = false;
        }
        if (cursor < length || (edges_[e].empty())) {
            gaps.push_back({e, at_start, true});
        }
    }
    const std::size_t nv = vertices_.size();
    std::vector<std::size_t> parent(nv + gaps.size());
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    auto find = [&parent](std::size_t x) {
        while (parent[x] != x) {
            x = parent[x] = parent[parent[x]];
        }
        return x;
    };
    for (std::size_t k = 0; k < gaps.size(); ++k) {
        const Edge& edge = g.edge(gaps[k].edge);
        if (gaps[k].from_tail && !vertices_[edge.tail]) {
            parent[find(nv + k)] = find(edge.tail);
        }
        if (gaps[k].to_head && !vertices_[edge.head]) {
            parent[find(nv + k)] = find(edge.head);
        }
    }
    std::vector<Gap> out;
    std::vector<std::optional<std::size_t>> slot(parent.size());
    auto group = [&](std::size_t node) -> Gap& {
        const std::size_t root = find(node);
        if (!slot[root]) {
            slot[root] = out.size();
            out.emplace_back();
        }
        return out[*slot[root]];
    };
    for (std::size_t v = 0; v < nv; ++v) {
        if (!vertices_[v]) {
            group(v).vertices.push_back(v);
        }
    }
    for (std::size_t k = 0; k < gaps.size(); ++k) {
        auto& edges = group(nv + k).edges;
        if (edges.empty() || edges.back() != gaps[k].edge) {
            edges.push_back(gaps[k].edge);
        }
    }
    return out;
}

std::string describe(const MetricGraph& g, const ClosedSubset& set)
{
    std::string out = "{";
    bool first = true;
    auto sep = [&]() {
        if (!first) {
            out += ", ";
        }
        first = false;
    };
    for (std::size_t v = 0; v < set.vertex_count(); ++v) {
        if (set.has_vertex(v)) {
            sep();
            out += g.vertex_name(v);
        }
    }
    for (std::size_t e = 0; e < set.edge_count(); ++e) {
        for (const auto& iv : set.intervals(e)) {
            sep();
            out += g.edge(e).id + "[" + format_rational(iv.lo) + "," + format_rational(iv.hi) + "]";
        }
    }
    return out + "}";
}

} // namespace tropkit
