#include "tropkit/potential.hpp"

#include "tropkit/errors.hpp"

#include <algorithm>

namespace tropkit {

std::size_t Refinement::node_of(const GraphPoint& p) const
{
    const auto it = std::lower_bound(nodes.begin(), nodes.end(), p);
    if (it == nodes.end() || *it != p) {
        throw Error(ErrorCode::precondition, "point is not a node of the refinement");
    }
    return static_cast<std::size_t>(it - nodes.begin());
}

Refinement refine(const MetricGraph& g, const std::vector<GraphPoint>& cuts)
{
    Refinement r;
    for (std::size_t v = 0; v < g.vertex_count(); ++v) {
        r.nodes.push_back(GraphPoint::at_vertex(v));
    }
    for (const auto& p : cuts) {
        if (!p.is_vertex()) {
            r.nodes.push_back(p);
        }
    }
    // GraphPoint order puts vertices first, then (edge, offset).
    std::sort(r.nodes.begin(), r.nodes.end());
    r.nodes.erase(std::unique(r.nodes.begin(), r.nodes.end()), r.nodes.end());

    r.chains.assign(g.edge_count(), {});
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
        r.chains[e].emplace_back(Rational(0), g.edge(e).tail);
    }
    for (std::size_t i = g.vertex_count(); i < r.nodes.size(); ++i) {
        r.chains[r.nodes[i].edge()].emplace_back(r.nodes[i].offset(), i);
    }
    r.touching.assign(r.nodes.size(), {});
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
        auto& chain = r.chains[e];
        chain.emplace_back(g.edge(e).length, g.edge(e).head);
        for (std::size_t k = 1; k < chain.size(); ++k) {
            Refinement::Segment s;
            s.a = chain[k - 1].second;
            s.b = chain[k].second;
            s.edge = e;
            s.lo = chain[k - 1].first;
            s.hi = chain[k].first;
            r.touching[s.a].push_back(r.segments.size());
            r.touching[s.b].push_back(r.segments.size());
            r.segments.push_back(std::move(s));
        }
    }
    return r;
}

namespace {

// Fraction-free elimination on an integer augmented matrix, then exact back
// substitution.
std::vector<Rational> bareiss_solve(std::vector<std::vector<Integer>> m)
{
    const std::size_t n = m.size();
    Integer prev = 1;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t pivot = k;
        while (pivot < n && m[pivot][k] == 0) {
            ++pivot;
        }
        if (pivot == n) {
            throw Error(ErrorCode::certificate, "singular Kirchhoff system");
        }
        std::swap(m[k], m[pivot]);
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j <= n; ++j) {
                Integer value = m[k][k] * m[i][j] - m[i][k] * m[k][j];
                mpz_divexact(value.get_mpz_t(), value.get_mpz_t(), prev.get_mpz_t());
                m[i][j] = std::move(value);
            }
            m[i][k] = 0;
        }
        prev = m[k][k];
    }
    std::vector<Rational> x(n);
    for (std::size_t i = n; i-- > 0;) {
        Rational acc(m[i][n]);
        for (std::size_t j = i + 1; j < n; ++j) {
            acc -= Rational(m[i][j]) * x[j];
        }
        acc /= Rational(m[i][i]);
        x[i] = acc;
    }
    return x;
}

} // namespace

std::vector<Rational> kirchhoff_solve(const Refinement& r, const std::vector<Rational>& rhs, std::size_t ground)
{
    const std::size_t n = r.nodes.size();
    if (rhs.size() != n) {
        throw Error(ErrorCode::precondition, "right-hand side does not match the refinement");
    }
    std::vector<std::size_t> column(n, n);
    std::size_t unknowns = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (i != ground) {
            column[i] = unknowns++;
        }
    }
    std::vector<std::vector<Integer>> m;
    m.reserve(unknowns);
    for (std::size_t i = 0; i < n; ++i) {
        if (i == ground) {
            continue;
        }
        std::vector<Rational> row(unknowns + 1);
        for (std::size_t s : r.touching[i]) {
            const Rational c = 1 / r.segments[s].length();
            row[column[i]] += c;
            const std::size_t j = r.other_end(s, i);
            if (j != ground) {
                row[column[j]] -= c;
            }
        }
        row[unknowns] = rhs[i];
        const Integer scale = lcm_of_denominators(row);
        std::vector<Integer> scaled(unknowns + 1);
        for (std::size_t k = 0; k <= unknowns; ++k) {
            const Rational v = row[k] * scale;
            scaled[k] = v.get_num();
        }
        m.push_back(std::move(scaled));
    }
    const auto x = bareiss_solve(std::move(m));
    std::vector<Rational> values(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (i != ground) {
            values[i] = x[column[i]];
        }
    }
    return values;
}

PLFunction from_node_values(const MetricGraph& g, const Refinement& r, const std::vector<Rational>& values)
{
    std::vector<Rational> vertex_values(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(g.vertex_count()));
    std::vector<std::vector<Breakpoint>> edges(g.edge_count());
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
        for (const auto& [offset, node] : r.chains[e]) {
            edges[e].push_back({offset, values[node]});
        }
    }
    return PLFunction::from_parts(g, std::move(vertex_values), std::move(edges));
}

PLFunction mg_jfunction(const MetricGraph& g, const GraphPoint& q, const GraphPoint& p)
{
    return mg_potential(g, Divisor::point(q), Divisor::point(p));
}

Rational mg_resistance(const MetricGraph& g, const GraphPoint& p, const GraphPoint& q)
{
    return mg_jfunction(g, q, p).eval(p);
}

PLFunction mg_potential(const MetricGraph& g, const Divisor& from, const Divisor& to)
{
    if (from.degree() != to.degree()) {
        throw Error(ErrorCode::precondition, "divisors have different degrees");
    }
    const Divisor target = to - from;
    if (target.is_zero()) {
        return PLFunction::constant(g, Rational(0));
    }
    const Refinement r = refine(g, target.support());
    std::vector<Rational> rhs(r.nodes.size());
    for (const auto& [p, c] : target.terms()) {
        rhs[r.node_of(p)] = c;
    }
    auto values = kirchhoff_solve(r, rhs, 0);
    const Rational low = min_of(values);
    for (auto& v : values) {
        v -= low;
    }
    return from_node_values(g, r, values);
}

} // namespace tropkit
