#pragma once

#include "tropkit/cli/workspace.hpp"
#include "tropkit/dhar.hpp"
#include "tropkit/harmonic.hpp"

#include <random>
#include <string>

namespace testing {

using namespace tropkit;

inline constexpr std::uint64_t kSeed = 20240611;
inline constexpr int kCases = 200;

inline cli::Workspace fixture(const std::string& name)
{
    return cli::workspace_from_json(cli::read_json_file(std::string(TROPKIT_FIXTURES) + "/" + name));
}

inline cli::SpaceFile space_fixture(const std::string& name)
{
    return cli::space_from_json(cli::read_json_file(std::string(TROPKIT_FIXTURES) + "/" + name));
}

inline Rational q(long n, long d = 1) { return ratio(n, d); }

inline TropPoint tp(std::initializer_list<long> raw)
{
    std::vector<Rational> v;
    for (long x : raw) {
        v.emplace_back(x);
    }
    return TropPoint(v);
}

struct Rng {
    std::mt19937_64 engine;
    explicit Rng(std::uint64_t seed = kSeed) : engine(seed) {}

    long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(engine); }
    bool coin() { return integer(0, 1) == 1; }

    // Multiples of 1/den in [lo, hi].
    Rational fraction(long lo, long hi, long den = 4) { return ratio(integer(lo * den, hi * den), den); }

    TropPoint trop_point(std::size_t n, long lo = -3, long hi = 3, long den = 2)
    {
        std::vector<Rational> v;
        for (std::size_t i = 0; i < n; ++i) {
            v.push_back(fraction(lo, hi, den));
        }
        return TropPoint(v);
    }

    std::vector<TropPoint> trop_points(std::size_t count, std::size_t n, long lo = -3, long hi = 3, long den = 2)
    {
        std::vector<TropPoint> out;
        for (std::size_t i = 0; i < count; ++i) {
            out.push_back(trop_point(n, lo, hi, den));
        }
        return out;
    }

    GroundSpace space(std::size_t n)
    {
        std::vector<std::string> labels;
        std::vector<Rational> weights;
        for (std::size_t i = 0; i < n; ++i) {
            labels.push_back("x" + std::to_string(i));
            weights.push_back(ratio(integer(1, 4), integer(1, 3)));
        }
        return GroundSpace(labels, weights);
    }

    // Connected graph, up to max_vertices vertices and max_edges input edges,
    // parallel edges and loops included.
    GraphHandle graph(std::size_t max_vertices = 8, std::size_t max_edges = 12)
    {
        static const long lengths[][2] = {{1, 2}, {1, 1}, {3, 2}, {2, 1}, {1, 3}, {2, 3}};
        const std::size_t n = static_cast<std::size_t>(integer(2, static_cast<long>(max_vertices)));
        std::vector<std::string> names;
        for (std::size_t i = 0; i < n; ++i) {
            names.push_back("p" + std::to_string(i));
        }
        std::vector<EdgeSpec> edges;
        auto add = [&](std::size_t a, std::size_t b) {
            const auto& l = lengths[integer(0, 5)];
            edges.push_back({"f" + std::to_string(edges.size()), names[a], names[b], ratio(l[0], l[1])});
        };
        for (std::size_t i = 1; i < n; ++i) {
            add(static_cast<std::size_t>(integer(0, static_cast<long>(i) - 1)), i);
        }
        const std::size_t total = static_cast<std::size_t>(integer(static_cast<long>(n - 1), static_cast<long>(max_edges)));
        while (edges.size() < total) {
            add(static_cast<std::size_t>(integer(0, static_cast<long>(n) - 1)),
                static_cast<std::size_t>(integer(0, static_cast<long>(n) - 1)));
        }
        return std::make_shared<const MetricGraph>(MetricGraph::build(names, edges));
    }

    // A cycle through every vertex plus up to `chords` extra edges, so the
    // graph has no bridges.
    GraphHandle cyclic_graph(std::size_t max_vertices = 5, std::size_t chords = 1)
    {
        static const long lengths[][2] = {{1, 2}, {1, 1}, {3, 2}, {2, 1}};
        const std::size_t n = static_cast<std::size_t>(integer(2, static_cast<long>(max_vertices)));
        std::vector<std::string> names;
        for (std::size_t i = 0; i < n; ++i) {
            names.push_back("c" + std::to_string(i));
        }
        std::vector<EdgeSpec> edges;
        auto add = [&](std::size_t a, std::size_t b) {
            const auto& l = lengths[integer(0, 3)];
            edges.push_back({"g" + std::to_string(edges.size()), names[a], names[b], ratio(l[0], l[1])});
        };
        for (std::size_t i = 0; i < n; ++i) {
            add(i, (i + 1) % n);
        }
        for (long c = integer(0, static_cast<long>(chords)); c > 0; --c) {
            add(static_cast<std::size_t>(integer(0, static_cast<long>(n) - 1)),
                static_cast<std::size_t>(integer(0, static_cast<long>(n) - 1)));
        }
        return std::make_shared<const MetricGraph>(MetricGraph::build(names, edges));
    }

    GraphPoint point(const MetricGraph& g)
    {
        if (integer(0, 2) == 0) {
            return GraphPoint::at_vertex(static_cast<std::size_t>(integer(0, static_cast<long>(g.vertex_count()) - 1)));
        }
        const std::size_t e = static_cast<std::size_t>(integer(0, static_cast<long>(g.edge_count()) - 1));
        return GraphPoint::on_edge(g, e, g.edge(e).length * ratio(integer(1, 5), 6));
    }

    Divisor effective(const MetricGraph& g, long degree)
    {
        Divisor d;
        for (long k = 0; k < degree; ++k) {
            d.add(point(g), Rational(1));
        }
        return d;
    }
};

struct RandomSystem {
    GraphHandle graph;
    std::vector<Divisor> gens;
};

// Generators equivalent to one random divisor: reductions at random points
// and points on the paths between them.
inline RandomSystem random_system_on(Rng& rng, GraphHandle graph, std::size_t count)
{
    RandomSystem out{std::move(graph), {}};
    const MetricGraph& g = *out.graph;
    const Divisor base = rng.effective(g, rng.integer(1, 3));
    while (out.gens.size() < count) {
        const Divisor reduced = dv_dhar(g, base, rng.point(g)).divisor;
        if (!out.gens.empty() && rng.coin()) {
            const auto pick = static_cast<std::size_t>(rng.integer(0, static_cast<long>(out.gens.size()) - 1));
            const Divisor other = out.gens[pick];
            const Rational rho = dv_rho(g, other, reduced);
            out.gens.push_back(dv_path(g, other, reduced, rho * ratio(rng.integer(0, 4), 4)));
        } else {
            out.gens.push_back(reduced);
        }
    }
    return out;
}

inline RandomSystem random_system(Rng& rng, std::size_t count, std::size_t max_vertices = 5, std::size_t max_edges = 7)
{
    return random_system_on(rng, rng.graph(max_vertices, max_edges), count);
}

inline cli::Workspace c6() { return fixture("c6.json"); }

inline LinearSystem system_of(const cli::Workspace& w, const std::string& name)
{
    std::vector<Divisor> gens;
    for (const auto& d : w.systems.at(name)) {
        gens.push_back(w.divisors.at(d));
    }
    return LinearSystem::build(w.graph, gens);
}

inline GraphPoint vertex(const cli::Workspace& w, const std::string& name) { return w.graph->vertex_point(name); }

// Independent of the library: direct minimum over coordinates.
inline std::vector<Rational> shifted_to_min_zero(const std::vector<Rational>& v)
{
    Rational m = v.front();
    for (const auto& x : v) {
        m = std::min(m, x);
    }
    std::vector<Rational> out;
    for (const auto& x : v) {
        out.push_back(x - m);
    }
    return out;
}

} // namespace testing
