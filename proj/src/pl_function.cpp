#include "tropkit/pl_function.hpp"

#include "tropkit/errors.hpp"

#include <algorithm>

namespace tropkit {

namespace {

using Points = std::vector<Breakpoint>;

enum class Op { add, sub, min, max };

Rational interpolate(const Breakpoint& a, const Breakpoint& b, const Rational& offset)
{
    return a.value + (b.value - a.value) * (offset - a.offset) / (b.offset - a.offset);
}

Rational eval_edge(const Points& bps, const Rational& offset)
{
    const auto upper = std::lower_bound(bps.begin(), bps.end(), offset,
                                        [](const Breakpoint& b, const Rational& o) { return b.offset < o; });
    if (upper != bps.end() && upper->offset == offset) {
        return upper->value;
    }
    if (upper == bps.begin() || upper == bps.end()) {
        throw Error(ErrorCode::precondition, "offset outside the edge");
    }
    return interpolate(*(upper - 1), *upper, offset);
}

// Values of a piecewise-linear list at sorted offsets within its range.
std::vector<Rational> sample(const Points& bps, const std::vector<Rational>& offsets)
{
    std::vector<Rational> out;
    out.reserve(offsets.size());
    std::size_t i = 0;
    for (const auto& o : offsets) {
        while (i + 1 < bps.size() && bps[i + 1].offset < o) {
            ++i;
        }
        if (bps[i].offset == o) {
            out.push_back(bps[i].value);
        } else if (i + 1 < bps.size() && bps[i + 1].offset == o) {
            out.push_back(bps[i + 1].value);
        } else {
            out.push_back(interpolate(bps[i], bps[i + 1], o));
        }
    }
    return out;
}

Rational apply(Op op, const Rational& x, const Rational& y)
{
    switch (op) {
    case Op::add: return x + y;
    case Op::sub: return x - y;
    case Op::min: return std::min(x, y);
    case Op::max: return std::max(x, y);
    }
    return x;
}

Points simplified(const Points& in)
{
    Points out;
    out.reserve(in.size());
    for (const auto& p : in) {
        while (out.size() >= 2) {
            const Breakpoint& a = out[out.size() - 2];
            const Breakpoint& b = out.back();
            // drop b when a, b, p are collinear
            if ((b.value - a.value) * (p.offset - b.offset) == (p.value - b.value) * (b.offset - a.offset)) {
                out.pop_back();
            } else {
                break;
            }
        }
        out.push_back(p);
    }
    return out;
}

Points combine_edge(const Points& a, const Points& b, Op op)
{
    std::vector<Rational> offsets;
    offsets.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].offset < b[j].offset)) {
            offsets.push_back(a[i++].offset);
        } else if (i == a.size() || b[j].offset < a[i].offset) {
            offsets.push_back(b[j++].offset);
        } else {
            offsets.push_back(a[i].offset);
            ++i;
            ++j;
        }
    }
    const auto va = sample(a, offsets);
    const auto vb = sample(b, offsets);
    Points out;
    out.reserve(offsets.size() + 4);
    for (std::size_t k = 0; k < offsets.size(); ++k) {
        if (k > 0 && (op == Op::min || op == Op::max)) {
            const Rational d0 = va[k - 1] - vb[k - 1];
            const Rational d1 = va[k] - vb[k];
            if ((d0 < 0 && d1 > 0) || (d0 > 0 && d1 < 0)) {
                const Rational o = offsets[k - 1] + (offsets[k] - offsets[k - 1]) * d0 / (d0 - d1);
                const Rational v = interpolate({offsets[k - 1], va[k - 1]}, {offsets[k], va[k]}, o);
                out.push_back({o, v});
            }
        }
        out.push_back({offsets[k], apply(op, va[k], vb[k])});
    }
    return simplified(out);
}

} // namespace

struct PLBuilder {
    static PLFunction make(std::vector<Rational> vertices, std::vector<Points> edges)
    {
        PLFunction f;
        f.vertex_values_ = std::move(vertices);
        f.edges_ = std::move(edges);
        for (auto& list : f.edges_) {
            list = simplified(list);
        }
        return f;
    }

    static PLFunction combine(const PLFunction& a, const PLFunction& b, Op op)
    {
        if (a.edge_count() != b.edge_count() || a.vertex_count() != b.vertex_count()) {
            throw Error(ErrorCode::precondition, "functions live on different graphs");
        }
        std::vector<Rational> vertices(a.vertex_count());
        for (std::size_t v = 0; v < vertices.size(); ++v) {
            vertices[v] = apply(op, a.vertex_value(v), b.vertex_value(v));
        }
        std::vector<Points> edges(a.edge_count());
        for (std::size_t e = 0; e < edges.size(); ++e) {
            edges[e] = combine_edge(a.edge(e), b.edge(e), op);
        }
        return make(std::move(vertices), std::move(edges));
    }

    static PLFunction map_values(const PLFunction& f, Rational scale, const Rational& shift)
    {
        PLFunction out = f;
        for (auto& v : out.vertex_values_) {
            v = v * scale + shift;
        }
        for (auto& list : out.edges_) {
            for (auto& b : list) {
                b.value = b.value * scale + shift;
            }
        }
        return out;
    }
};

PLFunction PLFunction::constant(const MetricGraph& g, const Rational& value)
{
    std::vector<Points> edges(g.edge_count());
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
        edges[e] = {{Rational(0), value}, {g.edge(e).length, value}};
    }
    return PLBuilder::make(std::vector<Rational>(g.vertex_count(), value), std::move(edges));
}

PLFunction PLFunction::from_parts(const MetricGraph& g, std::vector<Rational> vertex_values,
                                  std::vector<std::vector<Breakpoint>> edges)
{
    if (vertex_values.size() != g.vertex_count() || edges.size() != g.edge_count()) {
        throw Error(ErrorCode::precondition, "function does not match the graph");
    }
    for (std::size_t e = 0; e < edges.size(); ++e) {
        const auto& list = edges[e];
        const Edge& edge = g.edge(e);
        if (list.size() < 2 || list.front().offset != 0 || list.back().offset != edge.length) {
            throw Error(ErrorCode::precondition, "breakpoints of edge '" + edge.id + "' must span the edge");
        }
        for (std::size_t k = 1; k < list.size(); ++k) {
            if (!(list[k - 1].offset < list[k].offset)) {
                throw Error(ErrorCode::precondition, "breakpoints of edge '" + edge.id + "' are not increasing");
            }
        }
        if (list.front().value != vertex_values[edge.tail] || list.back().value != vertex_values[edge.head]) {
            throw Error(ErrorCode::precondition, "function is discontinuous at an end of edge '" + edge.id + "'");
        }
    }
    return PLBuilder::make(std::move(vertex_values), std::move(edges));
}

Rational PLFunction::eval(const GraphPoint& x) const
{
    if (x.is_vertex()) {
        return vertex_values_.at(x.vertex());
    }
    return eval_edge(edges_.at(x.edge()), x.offset());
}

PLFunction PLFunction::operator-() const { return PLBuilder::map_values(*this, Rational(-1), Rational(0)); }

PLFunction PLFunction::shifted(const Rational& c) const { return PLBuilder::map_values(*this, Rational(1), c); }

PLFunction operator+(const PLFunction& a, const PLFunction& b) { return PLBuilder::combine(a, b, Op::add); }

PLFunction operator-(const PLFunction& a, const PLFunction& b) { return PLBuilder::combine(a, b, Op::sub); }

Rational pl_eval(const PLFunction& f, const GraphPoint& x) { return f.eval(x); }

Divisor pl_div(const MetricGraph& g, const PLFunction& f)
{
    Divisor out;
    for (std::size_t v = 0; v < g.vertex_count(); ++v) {
        Rational total = 0;
        for (const auto& inc : g.incident(v)) {
            const auto& list = f.edge(inc.edge);
            if (inc.at_tail) {
                total += (list[0].value - list[1].value) / (list[1].offset - list[0].offset);
            } else {
                const auto& last = list[list.size() - 1];
                const auto& prev = list[list.size() - 2];
                total += (last.value - prev.value) / (last.offset - prev.offset);
            }
        }
        out.add(GraphPoint::at_vertex(v), total);
    }
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
        const auto& list = f.edge(e);
        for (std::size_t k = 1; k + 1 < list.size(); ++k) {
            const Rational from_left = (list[k].value - list[k - 1].value) / (list[k].offset - list[k - 1].offset);
            const Rational from_right = (list[k].value - list[k + 1].value) / (list[k + 1].offset - list[k].offset);
            out.add(GraphPoint::on_edge(g, e, list[k].offset), from_left + from_right);
        }
    }
    return out;
}

PLFunction pl_min(const PLFunction& a, const PLFunction& b) { return PLBuilder::combine(a, b, Op::min); }

PLFunction pl_max(const PLFunction& a, const PLFunction& b) { return PLBuilder::combine(a, b, Op::max); }

PLFunction pl_min(const std::vector<PLFunction>& fs)
{
    if (fs.empty()) {
        throw Error(ErrorCode::precondition, "minimum of no functions");
    }
    PLFunction acc = fs.front();
    for (std::size_t i = 1; i < fs.size(); ++i) {
        acc = pl_min(acc, fs[i]);
    }
    return acc;
}

PLFunction pl_clip(const MetricGraph& g, const PLFunction& f, const Rational& level)
{
    return pl_min(f, PLFunction::constant(g, level));
}

Rational pl_min_value(const PLFunction& f) { return min_of(f.vertex_count() ? pl_levels(f) : std::vector<Rational>{}); }

Rational pl_max_value(const PLFunction& f) { return max_of(f.vertex_count() ? pl_levels(f) : std::vector<Rational>{}); }

PLFunction pl_normalized(const PLFunction& f) { return f.shifted(-pl_min_value(f)); }

bool pl_is_constant(const PLFunction& f) { return pl_levels(f).size() == 1; }

ExtremumSet pl_extremum_set(const MetricGraph& g, const PLFunction& f, Extremum which)
{
    ExtremumSet out;
    out.value = which == Extremum::min ? pl_min_value(f) : pl_max_value(f);
    out.set = ClosedSubset::empty(g);
    for (std::size_t v = 0; v < g.vertex_count(); ++v) {
        if (f.vertex_value(v) == out.value) {
            out.set.add_vertex(v);
        }
    }
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
        const auto& list = f.edge(e);
        for (std::size_t k = 0; k < list.size(); ++k) {
            if (list[k].value != out.value) {
                continue;
            }
            if (k + 1 < list.size() && list[k + 1].value == out.value) {
                out.set.add_interval(g, e, list[k].offset, list[k + 1].offset);
            } else if (k > 0 && k + 1 < list.size()) {
                out.set.add_interval(g, e, list[k].offset, list[k].offset);
            }
        }
    }
    return out;
}

Rational pl_integral(const PLFunction& f)
{
    Rational total = 0;
    for (std::size_t e = 0; e < f.edge_count(); ++e) {
        const auto& list = f.edge(e);
        for (std::size_t k = 1; k < list.size(); ++k) {
            total += (list[k].offset - list[k - 1].offset) * (list[k].value + list[k - 1].value) / 2;
        }
    }
    return total;
}

bool pl_has_integral_slopes(const PLFunction& f)
{
    for (std::size_t e = 0; e < f.edge_count(); ++e) {
        const auto& list = f.edge(e);
        for (std::size_t k = 1; k < list.size(); ++k) {
            if (!is_integer((list[k].value - list[k - 1].value) / (list[k].offset - list[k - 1].offset))) {
                return false;
            }
        }
    }
    return true;
}

std::vector<Rational> pl_levels(const PLFunction& f)
{
    std::vector<Rational> out;
    for (std::size_t v = 0; v < f.vertex_count(); ++v) {
        out.push_back(f.vertex_value(v));
    }
    for (std::size_t e = 0; e < f.edge_count(); ++e) {
        for (const auto& b : f.edge(e)) {
            out.push_back(b.value);
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

ClosedSubset pl_swept(const MetricGraph& g, const PLFunction& f, const Rational& lo, const Rational& hi)
{
    ClosedSubset out = ClosedSubset::empty(g);
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
        const auto& list = f.edge(e);
        for (std::size_t k = 1; k < list.size(); ++k) {
            const Breakpoint& p = list[k - 1];
            const Breakpoint& q = list[k];
            if (p.value == q.value) {
                continue;
            }
            const Rational slope = (q.value - p.value) / (q.offset - p.offset);
            const Rational at_lo = p.offset + (lo - p.value) / slope;
            const Rational at_hi = p.offset + (hi - p.value) / slope;
            const Rational a = std::max(p.offset, slope > 0 ? at_lo : at_hi);
            const Rational b = std::min(q.offset, slope > 0 ? at_hi : at_lo);
            if (a < b) {
                out.add_interval(g, e, a, b);
            }
        }
    }
    return out;
}

} // namespace tropkit
