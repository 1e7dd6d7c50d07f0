#include "tropkit/tropical_tree.hpp"

#include "tropkit/errors.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>

namespace tropkit {

Rational anchored_rho(const Anchored& a, const Anchored& b)
{
    const PLFunction f = b.anchor - a.anchor;
    return pl_max_value(f) - pl_min_value(f);
}

namespace {

std::vector<std::pair<std::size_t, std::size_t>> generator_pairs(const LinearSystem& t)
{
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t i = 0; i < t.size(); ++i) {
        for (std::size_t j = i + 1; j < t.size(); ++j) {
            out.emplace_back(i, j);
        }
    }
    return out;
}

// Path divisors of [a, b] at every level of its potential.
std::vector<Anchored> level_divisors(const MetricGraph& g, const Anchored& a, const Anchored& b)
{
    std::vector<Anchored> out;
    const PLFunction f = anchored_potential(a, b);
    for (const auto& level : pl_levels(f)) {
        const PLFunction h = pl_clip(g, f, level);
        out.push_back({pl_div(g, h) + a.divisor, h + a.anchor});
    }
    return out;
}

void sort_unique(std::vector<Anchored>& v)
{
    std::sort(v.begin(), v.end(), [](const Anchored& x, const Anchored& y) { return x.divisor < y.divisor; });
    v.erase(std::unique(v.begin(), v.end(),
                        [](const Anchored& x, const Anchored& y) { return x.divisor == y.divisor; }),
            v.end());
}

// Distances from every generator to d.
std::vector<Rational> generator_distances(const LinearSystem& t, const Anchored& d)
{
    std::vector<Rational> out;
    for (std::size_t i = 0; i < t.size(); ++i) {
        out.push_back(anchored_rho(t.anchored(i), d));
    }
    return out;
}

struct SegmentIndex {
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    std::vector<std::vector<Rational>> between; // generator to generator
};

SegmentIndex segment_index(const LinearSystem& t)
{
    SegmentIndex s{generator_pairs(t), {}};
    s.between.assign(t.size(), std::vector<Rational>(t.size()));
    for (const auto& [i, j] : s.pairs) {
        s.between[i][j] = s.between[j][i] = anchored_rho(t.anchored(i), t.anchored(j));
    }
    return s;
}

// Which generator segments a divisor lies on, from its generator distances.
std::vector<bool> segments_through(const SegmentIndex& s, const std::vector<Rational>& dist)
{
    std::vector<bool> out(s.pairs.size());
    for (std::size_t k = 0; k < s.pairs.size(); ++k) {
        const auto& [i, j] = s.pairs[k];
        out[k] = dist[i] + dist[j] == s.between[i][j];
    }
    return out;
}

bool any_of(const std::vector<bool>& v) { return std::find(v.begin(), v.end(), true) != v.end(); }

bool share_segment(const std::vector<bool>& a, const std::vector<bool>& b)
{
    for (std::size_t k = 0; k < a.size(); ++k) {
        if (a[k] && b[k]) {
            return true;
        }
    }
    return false;
}

struct CriticalData {
    std::vector<Anchored> nodes;
    SegmentIndex index;
    std::vector<std::vector<Rational>> dist; // per node, per generator
    std::vector<std::vector<bool>> on;        // per node, per pair
};

CriticalData critical_data(const LinearSystem& t, Execution policy)
{
    CriticalData c{tt_critical_anchored(t, policy), segment_index(t), {}, {}};
    c.dist.resize(c.nodes.size());
    c.on.resize(c.nodes.size());
    for_each_index(c.nodes.size(), policy, [&](std::size_t n) {
        c.dist[n] = generator_distances(t, c.nodes[n]);
        c.on[n] = segments_through(c.index, c.dist[n]);
    });
    return c;
}

TreeSkeleton skeleton_from(const LinearSystem& t, const CriticalData& c)
{
    TreeSkeleton s;
    s.nodes = c.nodes;
    s.generators_at.resize(s.nodes.size());
    for (std::size_t i = 0; i < t.size(); ++i) {
        s.generators_at[s.find(t.generator(i))].push_back(i);
    }
    std::set<std::pair<std::size_t, std::size_t>> seen;
    for (std::size_t k = 0; k < c.index.pairs.size(); ++k) {
        const std::size_t i = c.index.pairs[k].first;
        std::vector<std::pair<Rational, std::size_t>> along;
        for (std::size_t n = 0; n < c.nodes.size(); ++n) {
            if (c.on[n][k]) {
                along.emplace_back(c.dist[n][i], n);
            }
        }
        std::sort(along.begin(), along.end());
        for (std::size_t m = 1; m < along.size(); ++m) {
            const auto key = std::minmax(along[m - 1].second, along[m].second);
            if (seen.insert(key).second) {
                s.arcs.push_back({key.first, key.second, along[m].first - along[m - 1].first});
            }
        }
    }
    return s;
}

} // namespace

std::vector<Anchored> tt_critical_anchored(const LinearSystem& t, Execution policy)
{
    const auto pairs = generator_pairs(t);
    std::vector<std::vector<Anchored>> per_pair(pairs.size());
    for_each_index(pairs.size(), policy, [&](std::size_t k) {
        per_pair[k] = level_divisors(t.graph(), t.anchored(pairs[k].first), t.anchored(pairs[k].second));
    });
    std::vector<Anchored> out;
    for (std::size_t i = 0; i < t.size(); ++i) {
        out.push_back(t.anchored(i));
    }
    for (auto& list : per_pair) {
        out.insert(out.end(), std::make_move_iterator(list.begin()), std::make_move_iterator(list.end()));
    }
    sort_unique(out);
    return out;
}

std::vector<Divisor> tt_critical(const LinearSystem& t, Execution policy)
{
    std::vector<Divisor> out;
    for (auto& a : tt_critical_anchored(t, policy)) {
        out.push_back(std::move(a.divisor));
    }
    return out;
}

std::size_t TreeSkeleton::find(const Divisor& d) const
{
    const auto it = std::lower_bound(nodes.begin(), nodes.end(), d,
                                     [](const Anchored& a, const Divisor& x) { return a.divisor < x; });
    if (it == nodes.end() || it->divisor != d) {
        throw Error(ErrorCode::precondition, "divisor is not a node of the skeleton");
    }
    return static_cast<std::size_t>(it - nodes.begin());
}

std::vector<std::size_t> TreeSkeleton::neighbours(std::size_t node) const
{
    std::vector<std::size_t> out;
    for (const auto& arc : arcs) {
        if (arc.a == node) {
            out.push_back(arc.b);
        } else if (arc.b == node) {
            out.push_back(arc.a);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<bool> TreeSkeleton::component(std::size_t start, std::size_t removed) const
{
    std::vector<bool> seen(nodes.size(), false);
    if (start == removed) {
        return seen;
    }
    std::vector<std::size_t> stack{start};
    seen[start] = true;
    while (!stack.empty()) {
        const std::size_t n = stack.back();
        stack.pop_back();
        for (std::size_t m : neighbours(n)) {
            if (m != removed && !seen[m]) {
                seen[m] = true;
                stack.push_back(m);
            }
        }
    }
    return seen;
}

bool TreeSkeleton::is_tree() const
{
    if (nodes.empty() || arcs.size() + 1 != nodes.size()) {
        return false;
    }
    const auto reach = component(0, nodes.size());
    return std::all_of(reach.begin(), reach.end(), [](bool b) { return b; });
}

std::optional<std::size_t> TreeSkeleton::arc_containing(const Anchored& d) const
{
    for (std::size_t k = 0; k < arcs.size(); ++k) {
        const auto& arc = arcs[k];
        if (anchored_rho(nodes[arc.a], d) + anchored_rho(d, nodes[arc.b]) == arc.length) {
            return k;
        }
    }
    return std::nullopt;
}

TreeSkeleton tt_skeleton(const LinearSystem& t, Execution policy)
{
    return skeleton_from(t, critical_data(t, policy));
}

TreeReport tt_is_tree(const LinearSystem& t, Execution policy)
{
    const MetricGraph& g = t.graph();
    const CriticalData c = critical_data(t, policy);
    TreeReport report;
    report.critical_count = c.nodes.size();

    // Local condition: any two bases at a critical divisor cover the graph.
    struct Failure {
        std::size_t a, b;
        std::vector<ClosedSubset> bases;
    };
    std::vector<std::optional<Failure>> local(c.nodes.size());
    for_each_index(c.nodes.size(), policy, [&](std::size_t n) {
        auto bases = ls_bases(t, c.nodes[n]);
        for (std::size_t a = 0; a < bases.size(); ++a) {
            for (std::size_t b = a + 1; b < bases.size(); ++b) {
                if (!bases[a].united(bases[b], g).covers(g)) {
                    local[n] = Failure{a, b, bases};
                    return;
                }
            }
        }
    });
    for (std::size_t n = 0; n < c.nodes.size(); ++n) {
        if (local[n]) {
            report.failing = c.nodes[n].divisor;
            report.bases = {local[n]->bases[local[n]->a], local[n]->bases[local[n]->b]};
            report.message = "bases at " + describe(g, c.nodes[n].divisor) + " do not cover the graph";
            return report;
        }
    }

    // Closure: segments between critical divisors on different generator
    // segments must stay inside the union of generator segments.
    std::vector<std::optional<Divisor>> stray(c.nodes.size());
    for_each_index(c.nodes.size(), policy, [&](std::size_t x) {
        for (std::size_t y = x + 1; y < c.nodes.size(); ++y) {
            if (share_segment(c.on[x], c.on[y])) {
                continue;
            }
            for (const auto& e : level_divisors(g, c.nodes[x], c.nodes[y])) {
                const auto known = std::lower_bound(c.nodes.begin(), c.nodes.end(), e.divisor,
                                                    [](const Anchored& a, const Divisor& d) { return a.divisor < d; });
                if (known != c.nodes.end() && known->divisor == e.divisor) {
                    continue;
                }
                if (!any_of(segments_through(c.index, generator_distances(t, e)))) {
                    stray[x] = e.divisor;
                    return;
                }
            }
        }
    });
    for (std::size_t n = 0; n < c.nodes.size(); ++n) {
        if (stray[n]) {
            report.stray = stray[n];
            report.message = describe(g, *stray[n]) + " is in the hull but on no generator segment";
            return report;
        }
    }

    if (!skeleton_from(t, c).is_tree()) {
        report.message = "critical divisors do not form a tree";
        return report;
    }
    report.tree = true;
    report.message = "tree";
    return report;
}

ClosedSubset tt_support_unchecked(const LinearSystem& t)
{
    const MetricGraph& g = t.graph();
    ClosedSubset out = ClosedSubset::empty(g);
    for (std::size_t i = 0; i < t.size(); ++i) {
        out = out.united(ClosedSubset::of_points(g, t.generator(i).support()), g);
    }
    for (const auto& [i, j] : generator_pairs(t)) {
        const PLFunction f = anchored_potential(t.anchored(i), t.anchored(j));
        out = out.united(pl_swept(g, f, Rational(0), pl_max_value(f)), g);
    }
    return out;
}

ClosedSubset tt_support(const LinearSystem& t)
{
    const auto report = tt_is_tree(t);
    if (!report.tree) {
        throw Error(ErrorCode::precondition, "not a tropical tree: " + report.message);
    }
    return tt_support_unchecked(t);
}

namespace {

std::string describe_gap(const MetricGraph& g, const ClosedSubset::Gap& gap)
{
    std::string out = "{";
    for (std::size_t v : gap.vertices) {
        out += (out.size() > 1 ? "," : "") + g.vertex_name(v);
    }
    for (std::size_t e : gap.edges) {
        out += (out.size() > 1 ? "," : "") + g.edge(e).id;
    }
    return out + "}";
}

} // namespace

DominanceReport tt_is_dominant(const LinearSystem& t, std::uint64_t seed, std::size_t extra_samples,
                               Execution policy)
{
    const MetricGraph& g = t.graph();
    DominanceReport report;
    report.tree = tt_is_tree(t, policy);
    if (!report.tree.tree) {
        report.message = "not a tree: " + report.tree.message;
        return report;
    }
    report.support = tt_support_unchecked(t);
    report.uncovered = report.support.complement_components(g);
    if (!report.uncovered.empty()) {
        report.message = "support misses component";
        for (std::size_t k = 0; k < report.uncovered.size(); ++k) {
            report.message += (k ? ", " : " ") + describe_gap(g, report.uncovered[k]);
        }
        return report;
    }
    auto samples = sample_points(g, 3);
    std::mt19937_64 rng(seed);
    for (std::size_t k = 0; k < extra_samples; ++k) {
        const std::size_t e = rng() % g.edge_count();
        const long parts = 97;
        const Rational offset = g.edge(e).length * ratio(static_cast<long>(1 + rng() % (parts - 1)), parts);
        samples.push_back(GraphPoint::on_edge(g, e, offset));
    }
    const auto images = tt_reduced_map(t, samples, policy);
    report.samples_checked = images.size();
    for (const auto& [q, d] : images) {
        if (d.at(q) <= 0) {
            report.sample_failure = q;
            report.message = describe(g, q) + " is not in the support of its reduced divisor";
            return report;
        }
    }
    report.dominant = true;
    report.message = "dominant";
    return report;
}

ClosedSubset tt_preimage(const LinearSystem& t, const Anchored& d)
{
    const MetricGraph& g = t.graph();
    ClosedSubset out = ClosedSubset::everything(g);
    for (const auto& base : ls_bases(t, d)) {
        out = out.intersected(base, g);
    }
    return out;
}

ClosedSubset tt_preimage(const LinearSystem& t, const Divisor& d) { return tt_preimage(t, t.anchor(d)); }

std::vector<std::pair<GraphPoint, Divisor>> tt_reduced_map(const LinearSystem& t,
                                                           const std::vector<GraphPoint>& samples,
                                                           Execution policy)
{
    std::vector<std::pair<GraphPoint, Divisor>> out(samples.size());
    for_each_index(samples.size(), policy, [&](std::size_t k) {
        out[k] = {samples[k], ls_reduced(t, samples[k])};
    });
    return out;
}

} // namespace tropkit
