#include "doctest.h"

#include "support.hpp"

#include "tropkit/errors.hpp"

using namespace tropkit;
using testing::kCases;
using testing::q;

namespace {

MetricGraph single_edge(const Rational& length) { return MetricGraph::build({"a", "b"}, {{"e", "a", "b", length}}); }

// All-pairs vertex distances by Floyd-Warshall.
std::vector<std::vector<Rational>> vertex_distances(const MetricGraph& g)
{
    const std::size_t n = g.vertex_count();
    std::vector<std::vector<std::optional<Rational>>> d(n, std::vector<std::optional<Rational>>(n));
    for (std::size_t v = 0; v < n; ++v) {
        d[v][v] = Rational(0);
    }
    for (const auto& e : g.edges()) {
        for (auto [a, b] : {std::pair{e.tail, e.head}, std::pair{e.head, e.tail}}) {
            if (!d[a][b] || e.length < *d[a][b]) {
                d[a][b] = e.length;
            }
        }
    }
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                if (d[i][k] && d[k][j] && (!d[i][j] || *d[i][k] + *d[k][j] < *d[i][j])) {
                    d[i][j] = Rational(*d[i][k] + *d[k][j]);
                }
            }
        }
    }
    std::vector<std::vector<Rational>> out(n, std::vector<Rational>(n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            out[i][j] = *d[i][j];
        }
    }
    return out;
}

// Routes from a point to the ends of its edge, or to itself at a vertex.
std::vector<std::pair<std::size_t, Rational>> exits(const MetricGraph& g, const GraphPoint& p)
{
    if (p.is_vertex()) {
        return {{p.vertex(), Rational(0)}};
    }
    const Edge& e = g.edge(p.edge());
    return {{e.tail, p.offset()}, {e.head, e.length - p.offset()}};
}

Rational distance_oracle(const MetricGraph& g, const std::vector<std::vector<Rational>>& dv, const GraphPoint& p,
                         const GraphPoint& x)
{
    std::optional<Rational> best;
    if (!p.is_vertex() && !x.is_vertex() && p.edge() == x.edge()) {
        best = abs(p.offset() - x.offset());
    }
    for (const auto& [u, du] : exits(g, p)) {
        for (const auto& [v, dx] : exits(g, x)) {
            const Rational c = du + dv[u][v] + dx;
            if (!best || c < *best) {
                best = c;
            }
        }
    }
    return *best;
}

struct RandomPL {
    Refinement r;
    std::vector<Rational> values;
    PLFunction f;
};

RandomPL random_pl(testing::Rng& rng, const MetricGraph& g)
{
    std::vector<GraphPoint> cuts;
    for (long k = rng.integer(0, 4); k > 0; --k) {
        cuts.push_back(rng.point(g));
    }
    RandomPL out{refine(g, cuts), {}, {}};
    for (std::size_t i = 0; i < out.r.nodes.size(); ++i) {
        out.values.push_back(rng.fraction(-3, 3));
    }
    out.f = from_node_values(g, out.r, out.values);
    return out;
}

} // namespace

TEST_CASE("validation of the hexagon, a loop and a disconnected graph")
{
    const auto w = testing::c6();
    CHECK(w.graph->vertex_count() == 6);
    CHECK(w.graph->edge_count() == 6);
    CHECK(w.graph->total_length() == 6);

    const auto loop = mg_validate({"v"}, {{"l", "v", "v", q(2)}});
    REQUIRE(loop.valid);
    CHECK(loop.graph->edge_count() == 2);
    CHECK(loop.graph->edge(0).length == 1);
    CHECK(loop.graph->edge(1).length == 1);
    CHECK(loop.graph->loops_split() == 1);
    CHECK(loop.graph->original_edges().size() == 1);
    CHECK(loop.graph->original_vertices() == std::vector<std::string>{"v"});

    const auto apart = mg_validate({"a", "b", "c", "d"}, {{"e", "a", "b", q(1)}, {"f", "c", "d", q(1)}});
    CHECK_FALSE(apart.valid);
    CHECK(apart.message.find("disconnected") != std::string::npos);

    CHECK_FALSE(mg_validate({"a", "b"}, {{"e", "a", "b", q(0)}}).valid);
    CHECK_FALSE(mg_validate({"a", "b"}, {{"e", "a", "b", q(-1)}}).valid);
    CHECK_FALSE(mg_validate({"a", "b"}, {{"e", "a", "z", q(1)}}).valid);
    CHECK_FALSE(mg_validate({"a", "a"}, {{"e", "a", "a", q(1)}}).valid);
    CHECK_FALSE(mg_validate({"a", "b"}, {{"e", "a", "b", q(1)}, {"e", "b", "a", q(1)}}).valid);
    CHECK_THROWS_AS(MetricGraph::build({"a", "b"}, {}), Error);
    CHECK(mg_validate({"a"}, {}).valid);
}

TEST_CASE("graph points normalize at edge ends")
{
    const auto w = testing::c6();
    const MetricGraph& g = *w.graph;
    CHECK(g.edge_point("e0", q(0)) == g.vertex_point("v1"));
    CHECK(g.edge_point("e0", q(1)) == g.vertex_point("w12"));
    CHECK_FALSE(g.edge_point("e0", q(1, 2)).is_vertex());
    CHECK_THROWS_AS(g.edge_point("e0", q(2)), Error);
    CHECK_THROWS_AS(g.edge_point("nope", q(0)), Error);
    CHECK_THROWS_AS(g.vertex_point("nope"), Error);

    const auto pos = g.position(g.edge_point("e3", q(1, 3)));
    CHECK_FALSE(pos.is_vertex);
    CHECK(pos.name == "e3");
    CHECK(pos.offset == q(1, 3));
}

TEST_CASE("loop points map back to loop coordinates")
{
    const MetricGraph g = MetricGraph::build({"v", "u"}, {{"l", "v", "v", q(3)}, {"s", "v", "u", q(1)}});
    for (long k = 1; k < 6; ++k) {
        const GraphPoint p = g.edge_point("l", q(k, 2));
        const auto pos = g.position(p);
        CHECK(pos.name == "l");
        CHECK(pos.offset == q(k, 2));
        CHECK(g.edge_point(pos.name, pos.offset) == p);
    }
    CHECK(mg_distance(g, g.vertex_point("v"), g.edge_point("l", q(3, 2))) == q(3, 2));
    CHECK(mg_distance(g, g.edge_point("l", q(1, 2)), g.edge_point("l", q(5, 2))) == 1);
}

TEST_CASE("distances on the hexagon")
{
    const auto w = testing::c6();
    const MetricGraph& g = *w.graph;
    CHECK(mg_distance(g, g.vertex_point("v1"), g.vertex_point("v3")) == 2);
    CHECK(mg_distance(g, g.vertex_point("v1"), g.vertex_point("v1")) == 0);
    CHECK(mg_distance(g, g.vertex_point("v1"), g.vertex_point("w23")) == 3);
    CHECK(mg_distance(g, g.edge_point("e0", q(1, 2)), g.edge_point("e3", q(1, 2))) == 3);
    CHECK(mg_distance(g, g.edge_point("e0", q(1, 4)), g.edge_point("e0", q(3, 4))) == q(1, 2));
}

TEST_CASE("distance agrees with an all-pairs oracle on random graphs")
{
    testing::Rng rng;
    for (int k = 0; k < kCases; ++k) {
        const GraphHandle g = rng.graph();
        const auto dv = vertex_distances(*g);
        const GraphPoint a = rng.point(*g);
        const GraphPoint b = rng.point(*g);
        const GraphPoint c = rng.point(*g);
        const Rational ab = mg_distance(*g, a, b);
        CHECK(ab == distance_oracle(*g, dv, a, b));
        CHECK(ab == mg_distance(*g, b, a));
        CHECK(mg_distance(*g, a, c) <= ab + mg_distance(*g, b, c));
        CHECK(mg_distance(*g, a, a) == 0);
    }
}

TEST_CASE("evaluation, divisor and integral on a single edge")
{
    const MetricGraph g = single_edge(q(2));
    const PLFunction f = PLFunction::from_parts(g, {q(0), q(1)}, {{{q(0), q(0)}, {q(2), q(1)}}});
    CHECK(f.eval(g.edge_point("e", q(1))) == q(1, 2));
    CHECK(pl_eval(f, g.vertex_point("b")) == 1);

    Divisor expected;
    expected.add(g.vertex_point("b"), q(1, 2));
    expected.add(g.vertex_point("a"), q(-1, 2));
    CHECK(pl_div(g, f) == expected);
    CHECK(pl_div(g, PLFunction::constant(g, q(5))).is_zero());
    CHECK(pl_integral(f) == 1);
    CHECK(pl_integral(PLFunction::from_parts(single_edge(q(1)), {q(0), q(1)}, {{{q(0), q(0)}, {q(1), q(1)}}})) ==
          q(1, 2));
    CHECK(pl_integral(PLFunction::constant(g, q(3))) == 6);
    CHECK_FALSE(pl_has_integral_slopes(f));

    const PLFunction kink = PLFunction::from_parts(g, {q(0), q(0)}, {{{q(0), q(0)}, {q(1), q(1)}, {q(2), q(0)}}});
    CHECK(kink.eval(g.edge_point("e", q(1))) == 1);
    CHECK(kink.eval(g.edge_point("e", q(3, 2))) == q(1, 2));
    CHECK(pl_has_integral_slopes(kink));
    CHECK(pl_div(g, kink).at(g.edge_point("e", q(1))) == 2);
}

TEST_CASE("malformed piecewise-linear data is rejected")
{
    const MetricGraph g = single_edge(q(2));
    CHECK_THROWS_AS(PLFunction::from_parts(g, {q(0), q(1)}, {{{q(0), q(0)}, {q(2), q(2)}}}), Error);
    CHECK_THROWS_AS(PLFunction::from_parts(g, {q(0), q(1)}, {{{q(0), q(0)}, {q(1), q(1)}}}), Error);
    CHECK_THROWS_AS(PLFunction::from_parts(g, {q(0), q(1)}, {{{q(0), q(0)}, {q(1), q(0)}, {q(1), q(1)}, {q(2), q(1)}}}),
                    Error);
    CHECK_THROWS_AS(PLFunction::from_parts(g, {q(0)}, {{{q(0), q(0)}, {q(2), q(0)}}}), Error);
}

TEST_CASE("hexagon potential with values 2,1,0,0,0,1")
{
    const auto w = testing::c6();
    const MetricGraph& g = *w.graph;
    // Vertex order in the fixture is v1, w12, v2, w23, v3, w13.
    std::vector<std::vector<Breakpoint>> edges;
    const std::vector<long> vals{2, 1, 0, 0, 0, 1};
    for (std::size_t e = 0; e < 6; ++e) {
        edges.push_back({{q(0), q(vals[e])}, {q(1), q(vals[(e + 1) % 6])}});
    }
    std::vector<Rational> vv;
    for (long v : vals) {
        vv.emplace_back(v);
    }
    const PLFunction f = PLFunction::from_parts(g, vv, edges);
    Divisor expected;
    expected.add(g.vertex_point("v1"), q(2));
    expected.add(g.vertex_point("v2"), q(-1));
    expected.add(g.vertex_point("v3"), q(-1));
    CHECK(pl_div(g, f) == expected);
    CHECK(pl_div(g, f) == w.divisors.at("D1") - w.divisors.at("D0"));

    const auto lo = pl_extremum_set(g, f, Extremum::min);
    CHECK(lo.value == 0);
    CHECK(lo.set.has_vertex(2));
    CHECK(lo.set.has_vertex(3));
    CHECK(lo.set.has_vertex(4));
    CHECK(lo.set.intervals(2) == std::vector<Interval>{{q(0), q(1)}});
    CHECK(lo.set.intervals(3) == std::vector<Interval>{{q(0), q(1)}});
    CHECK(lo.set.measure() == 2);
    const auto hi = pl_extremum_set(g, f, Extremum::max);
    CHECK(hi.value == 2);
    CHECK(hi.set.is_finite());
    CHECK(hi.set.points(g) == std::vector<GraphPoint>{g.vertex_point("v1")});
    CHECK(pl_extremum_set(g, PLFunction::constant(g, q(0)), Extremum::min).set.covers(g));
}

TEST_CASE("closed subsets merge, complement and intersect")
{
    const MetricGraph g = single_edge(q(4));
    ClosedSubset s = ClosedSubset::empty(g);
    CHECK(s.is_empty());
    s.add_interval(g, 0, q(1), q(2));
    s.add_interval(g, 0, q(2), q(3));
    CHECK(s.intervals(0) == std::vector<Interval>{{q(1), q(3)}});
    CHECK(s.measure() == 2);
    CHECK(s.boundary(g).size() == 2);
    CHECK(s.complement_components(g).size() == 2);
    s.add_interval(g, 0, q(3), q(4));
    CHECK(s.has_vertex(1));
    CHECK(s.contains(g.vertex_point("b")));
    CHECK_FALSE(s.contains(g.vertex_point("a")));

    ClosedSubset t = ClosedSubset::empty(g);
    t.add_point(g, g.vertex_point("a"));
    t.add_interval(g, 0, q(0), q(1));
    CHECK(s.united(t, g).covers(g));
    CHECK(s.intersected(t, g).points(g) == std::vector<GraphPoint>{g.edge_point("e", q(1))});
    CHECK(ClosedSubset::everything(g).covers(g));

    ClosedSubset endpoint = ClosedSubset::empty(g);
    endpoint.add_interval(g, 0, q(0), q(0));
    CHECK(endpoint.has_vertex(0));
    CHECK(endpoint.intervals(0).empty());
    CHECK(endpoint.is_finite());
}

TEST_CASE("divisor bookkeeping")
{
    const auto w = testing::c6();
    const MetricGraph& g = *w.graph;
    const Divisor& d0 = w.divisors.at("D0");
    CHECK(d0.degree() == 3);
    CHECK(d0.is_effective());
    CHECK(d0.is_integral());
    CHECK(d0.support().size() == 3);
    const Divisor diff = w.divisors.at("D1") - d0;
    CHECK(diff.degree() == 0);
    CHECK_FALSE(diff.is_effective());
    Divisor half = Divisor::point(g.edge_point("e0", q(1, 2)), q(1, 2));
    CHECK_FALSE(half.is_integral());
    half.add(g.edge_point("e0", q(1, 2)), q(-1, 2));
    CHECK(half.is_zero());
    CHECK(d0.scaled(q(2)).degree() == 6);
    CHECK((d0 - d0).is_zero());
}

TEST_CASE("piecewise-linear identities on random graphs")
{
    testing::Rng rng;
    for (int k = 0; k < kCases; ++k) {
        const GraphHandle gh = rng.graph(6, 9);
        const MetricGraph& g = *gh;
        const RandomPL a = random_pl(rng, g);
        const RandomPL b = random_pl(rng, g);

        // Slope-sum oracle for the divisor and trapezoid oracle for the integral.
        Divisor div;
        Rational area = 0;
        for (std::size_t s = 0; s < a.r.segments.size(); ++s) {
            const auto& seg = a.r.segments[s];
            const Rational slope = (a.values[seg.b] - a.values[seg.a]) / seg.length();
            div.add(a.r.nodes[seg.b], slope);
            div.add(a.r.nodes[seg.a], -slope);
            area += (a.values[seg.a] + a.values[seg.b]) / 2 * seg.length();
        }
        CHECK(pl_div(g, a.f) == div);
        CHECK(pl_div(g, a.f).degree() == 0);
        CHECK(pl_integral(a.f) == area);

        const std::vector<GraphPoint> samples = sample_points(g, 3);
        const PLFunction lo = pl_min(a.f, b.f);
        const PLFunction hi = pl_max(a.f, b.f);
        const PLFunction sum = a.f + b.f;
        const Rational level = rng.fraction(-2, 2);
        const PLFunction clipped = pl_clip(g, a.f, level);
        for (const auto& x : samples) {
            const Rational fa = a.f.eval(x);
            const Rational fb = b.f.eval(x);
            CHECK(lo.eval(x) == std::min(fa, fb));
            CHECK(hi.eval(x) == std::max(fa, fb));
            CHECK(sum.eval(x) == fa + fb);
            CHECK(clipped.eval(x) == std::min(fa, level));
            CHECK(pl_normalized(a.f).eval(x) == fa - pl_min_value(a.f));
        }
        CHECK(pl_div(g, sum) == pl_div(g, a.f) + pl_div(g, b.f));
        CHECK(pl_min_value(pl_normalized(a.f)) == 0);

        const auto mins = pl_extremum_set(g, a.f, Extremum::min);
        const auto maxs = pl_extremum_set(g, a.f, Extremum::max);
        CHECK(mins.set.intersected(maxs.set, g).is_empty() != pl_is_constant(a.f));
        for (const auto& x : samples) {
            CHECK(mins.set.contains(x) == (a.f.eval(x) == mins.value));
            CHECK(maxs.set.contains(x) == (a.f.eval(x) == maxs.value));
        }
    }
}
