#include "doctest.h"

#include "support.hpp"

#include "tropkit/errors.hpp"

using namespace tropkit;
using testing::kCases;
using testing::q;

namespace {

std::vector<Rational> vertex_values(const MetricGraph& g, const PLFunction& f)
{
    std::vector<Rational> out;
    for (std::size_t v = 0; v < g.vertex_count(); ++v) {
        out.push_back(f.vertex_value(v));
    }
    return out;
}

std::vector<Rational> ints(std::initializer_list<long> xs)
{
    std::vector<Rational> out;
    for (long x : xs) {
        out.emplace_back(x);
    }
    return out;
}

// Effective resistance between vertices from a floating Laplacian solve.
double resistance_oracle(const MetricGraph& g, std::size_t p, std::size_t s)
{
    const std::size_t n = g.vertex_count();
    std::vector<std::vector<double>> a(n, std::vector<double>(n + 1, 0.0));
    for (const auto& e : g.edges()) {
        const double c = 1.0 / e.length.get_d();
        a[e.tail][e.tail] += c;
        a[e.head][e.head] += c;
        a[e.tail][e.head] -= c;
        a[e.head][e.tail] -= c;
    }
    a[p][n] += 1.0;
    a[s][n] -= 1.0;
    // Ground s: replace its row by v_s = 0.
    std::fill(a[s].begin(), a[s].end(), 0.0);
    a[s][s] = 1.0;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < n; ++r) {
            if (std::abs(a[r][col]) > std::abs(a[pivot][col])) {
                pivot = r;
            }
        }
        std::swap(a[col], a[pivot]);
        for (std::size_t r = 0; r < n; ++r) {
            if (r != col) {
                const double factor = a[r][col] / a[col][col];
                for (std::size_t c = col; c <= n; ++c) {
                    a[r][c] -= factor * a[col][c];
                }
            }
        }
    }
    return a[p][n] / a[p][p];
}

Divisor random_divisor(testing::Rng& rng, const MetricGraph& g, const Rational& degree)
{
    Divisor d;
    Rational sum = 0;
    for (long k = rng.integer(0, 3); k > 0; --k) {
        const Rational c = rng.fraction(-3, 3, 2);
        d.add(rng.point(g), c);
        sum += c;
    }
    d.add(rng.point(g), degree - sum);
    return d;
}

} // namespace

TEST_CASE("hexagon j-function and resistance")
{
    const auto w = testing::c6();
    const MetricGraph& g = *w.graph;
    const GraphPoint v1 = g.vertex_point("v1");
    const GraphPoint v3 = g.vertex_point("v3");
    const PLFunction j = mg_jfunction(g, v3, v1);
    CHECK(vertex_values(g, j) == std::vector<Rational>{q(4, 3), q(1), q(2, 3), q(1, 3), q(0), q(2, 3)});
    CHECK(j.eval(v3) == 0);
    CHECK(mg_resistance(g, v1, v3) == q(4, 3));
    // Two arcs of length 2 and 4 in parallel.
    CHECK(mg_resistance(g, v1, v3) == q(2 * 4, 2 + 4));
    CHECK(mg_resistance(g, v1, v3).get_d() == doctest::Approx(resistance_oracle(g, 0, 4)));
}

TEST_CASE("hexagon potentials")
{
    const auto w = testing::c6();
    const MetricGraph& g = *w.graph;
    const Divisor& d0 = w.divisors.at("D0");
    const Divisor& d1 = w.divisors.at("D1");
    const Divisor& d3 = w.divisors.at("D3");

    const PLFunction f01 = mg_potential(g, d0, d1);
    CHECK(vertex_values(g, f01) == ints({2, 1, 0, 0, 0, 1}));
    const auto low = pl_extremum_set(g, f01, Extremum::min);
    CHECK(low.set.measure() == 2);
    CHECK(low.set.contains(g.vertex_point("w23")));
    CHECK(low.set.contains(g.vertex_point("v2")));
    CHECK(low.set.contains(g.vertex_point("v3")));
    CHECK_FALSE(low.set.contains(g.vertex_point("w12")));
    const auto high = pl_extremum_set(g, f01, Extremum::max);
    CHECK(high.set.points(g) == std::vector<GraphPoint>{g.vertex_point("v1")});

    const PLFunction f13 = mg_potential(g, d1, d3);
    CHECK(vertex_values(g, f13) == ints({0, 1, 2, 3, 4, 2}));
    CHECK(pl_integral(f13) == 12);
    // Trapezoids: short arc 1 + 3 = 4, long arc 1/2 + 3/2 + 5/2 + 7/2 = 8.
    CHECK(pl_integral(f13) == q(4) + q(8));
    CHECK(pl_has_integral_slopes(f13));

    CHECK(pl_is_constant(mg_potential(g, d0, d0)));
    CHECK(pl_max_value(mg_potential(g, d0, d0)) == 0);
    CHECK_THROWS_AS(mg_potential(g, d0, d0.scaled(q(2))), Error);
}

TEST_CASE("j-function axioms on the hexagon and random graphs")
{
    testing::Rng rng;
    std::vector<GraphHandle> graphs{testing::c6().graph};
    for (int k = 0; k < 20; ++k) {
        graphs.push_back(rng.graph());
    }
    for (const auto& gh : graphs) {
        const MetricGraph& g = *gh;
        for (int trial = 0; trial < 10; ++trial) {
            const GraphPoint p = rng.point(g);
            const GraphPoint s = rng.point(g);
            const GraphPoint x = rng.point(g);
            const PLFunction jp = mg_jfunction(g, s, p);
            const PLFunction js = mg_jfunction(g, p, s);
            const Rational r = mg_resistance(g, p, s);
            CHECK(jp.eval(s) == 0);
            CHECK(jp.eval(x) >= 0);
            CHECK(jp.eval(x) <= jp.eval(p));
            CHECK(jp.eval(x) == mg_jfunction(g, s, x).eval(p));
            CHECK(jp.eval(x) + js.eval(x) == r);
            CHECK(r == jp.eval(p));
            CHECK(r == js.eval(s));
            CHECK(r <= mg_distance(g, p, s));
            Divisor delta = Divisor::point(p);
            delta.add(s, Rational(-1));
            CHECK(pl_div(g, jp) == delta);
        }
    }
}

TEST_CASE("resistance agrees with a floating Laplacian solve")
{
    testing::Rng rng;
    for (int k = 0; k < kCases; ++k) {
        const GraphHandle g = rng.graph();
        const auto a = static_cast<std::size_t>(rng.integer(0, static_cast<long>(g->vertex_count()) - 1));
        const auto b = static_cast<std::size_t>(rng.integer(0, static_cast<long>(g->vertex_count()) - 1));
        const Rational r = mg_resistance(*g, GraphPoint::at_vertex(a), GraphPoint::at_vertex(b));
        CHECK(r.get_d() == doctest::Approx(a == b ? 0.0 : resistance_oracle(*g, a, b)).epsilon(1e-9));
    }
}

TEST_CASE("resistance on a tree is the distance")
{
    testing::Rng rng;
    for (int k = 0; k < kCases; ++k) {
        const long n = rng.integer(2, 7);
        std::vector<std::string> names;
        std::vector<EdgeSpec> edges;
        for (long i = 0; i < n; ++i) {
            names.push_back("t" + std::to_string(i));
            if (i > 0) {
                edges.push_back({"s" + std::to_string(i), names[static_cast<std::size_t>(rng.integer(0, i - 1))],
                                 names.back(), ratio(rng.integer(1, 6), rng.integer(1, 3))});
            }
        }
        const GraphHandle g = std::make_shared<const MetricGraph>(MetricGraph::build(names, edges));
        const GraphPoint a = rng.point(*g);
        const GraphPoint b = rng.point(*g);
        CHECK(mg_resistance(*g, a, b) == mg_distance(*g, a, b));
    }
}

TEST_CASE("potentials invert the Laplacian and form a cocycle")
{
    testing::Rng rng;
    for (int k = 0; k < kCases; ++k) {
        const GraphHandle gh = rng.graph();
        const MetricGraph& g = *gh;
        const Rational degree = rng.integer(-2, 4);
        const Divisor d0 = random_divisor(rng, g, degree);
        const Divisor d1 = random_divisor(rng, g, degree);
        const Divisor d2 = random_divisor(rng, g, degree);
        const PLFunction f01 = mg_potential(g, d0, d1);
        CHECK(pl_div(g, f01) == d1 - d0);
        CHECK(pl_min_value(f01) == 0);
        const PLFunction cycle = f01 + mg_potential(g, d1, d2) - mg_potential(g, d0, d2);
        CHECK(pl_is_constant(cycle));
    }
}
