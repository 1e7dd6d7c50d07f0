#include "tropkit/harmonic.hpp"

#include "tropkit/errors.hpp"

#include <algorithm>

namespace tropkit {

namespace {

Rational abs_of(const Rational& x) { return x < 0 ? Rational(-x) : x; }

// Breakpoint offsets of f on edge e strictly inside (lo, hi).
std::vector<Rational> interior_breaks(const PLFunction& f, std::size_t e, const Rational& lo, const Rational& hi)
{
    std::vector<Rational> out;
    for (const auto& b : f.edge(e)) {
        if (lo < b.offset && b.offset < hi) {
            out.push_back(b.offset);
        }
    }
    return out;
}

} // namespace

PseudoHarmonicMap tt_morphism(const LinearSystem& t, Execution policy)
{
    const MetricGraph& g = t.graph();
    const auto dominance = tt_is_dominant(t, 1, 8, policy);
    if (!dominance.dominant) {
        throw Error(ErrorCode::precondition, "not a dominant tropical tree: " + dominance.message);
    }
    PseudoHarmonicMap m;
    m.skeleton = tt_skeleton(t, policy);
    const TreeSkeleton& s = m.skeleton;

    m.fibers.resize(s.nodes.size());
    std::vector<std::string> infinite(s.nodes.size());
    for_each_index(s.nodes.size(), policy, [&](std::size_t n) {
        const ClosedSubset fiber = tt_preimage(t, s.nodes[n]);
        if (!fiber.is_finite()) {
            infinite[n] = describe(g, s.nodes[n].divisor);
            return;
        }
        m.fibers[n] = fiber.points(g);
    });
    std::vector<GraphPoint> cuts;
    for (std::size_t n = 0; n < s.nodes.size(); ++n) {
        if (!infinite[n].empty()) {
            throw Error(ErrorCode::certificate, "fiber of " + infinite[n] + " is not finite");
        }
        for (const auto& p : m.fibers[n]) {
            m.degrees.push_back({p, n, s.nodes[n].divisor.at(p)});
            cuts.push_back(p);
        }
    }
    std::sort(m.degrees.begin(), m.degrees.end(),
              [](const LocalDegree& a, const LocalDegree& b) { return a.point < b.point; });

    // Between fiber points the image stays in one open arc [X, Y], where the
    // reduced map is the path of f(Y - X) composed with that function.
    const Refinement r = refine(g, cuts);
    std::vector<std::vector<SubArc>> per_segment(r.segments.size());
    for_each_index(r.segments.size(), policy, [&](std::size_t k) {
        const auto& seg = r.segments[k];
        const GraphPoint mid = GraphPoint::on_edge(g, seg.edge, (seg.lo + seg.hi) / 2);
        const Anchored image = ls_reduced_anchored(t, mid);
        const auto arc = s.arc_containing(image);
        if (!arc) {
            throw Error(ErrorCode::certificate, "image of " + describe(g, mid) + " is on no skeleton arc");
        }
        const PLFunction f = anchored_potential(s.nodes[s.arcs[*arc].a], s.nodes[s.arcs[*arc].b]);
        std::vector<Rational> offsets{seg.lo};
        for (const auto& o : interior_breaks(f, seg.edge, seg.lo, seg.hi)) {
            offsets.push_back(o);
        }
        offsets.push_back(seg.hi);
        for (std::size_t i = 1; i < offsets.size(); ++i) {
            const Rational lo = offsets[i - 1];
            const Rational hi = offsets[i];
            const Rational rise = f.eval(GraphPoint::on_edge(g, seg.edge, hi)) -
                                  f.eval(GraphPoint::on_edge(g, seg.edge, lo));
            const Rational factor = abs_of(rise / (hi - lo));
            const GraphPoint centre = GraphPoint::on_edge(g, seg.edge, (lo + hi) / 2);
            if (factor <= 0 || !is_integer(factor)) {
                throw Error(ErrorCode::certificate, "expansion factor " + format_rational(factor) + " at " +
                                                        describe(g, centre) + " is not a positive integer");
            }
            const Divisor local = ls_reduced(t, centre);
            if (local.at(centre) != factor) {
                throw Error(ErrorCode::certificate, "local degree at " + describe(g, centre) +
                                                        " differs from the expansion factor");
            }
            per_segment[k].push_back({seg.edge, lo, hi, *arc, factor});
        }
    });
    for (auto& list : per_segment) {
        m.pieces.insert(m.pieces.end(), list.begin(), list.end());
    }

    m.edge_factors.assign(g.edge_count(), std::nullopt);
    std::vector<bool> mixed(g.edge_count(), false);
    for (const auto& piece : m.pieces) {
        auto& slot = m.edge_factors[piece.edge];
        if (!slot) {
            slot = piece.factor;
        } else if (*slot != piece.factor) {
            mixed[piece.edge] = true;
        }
    }
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
        if (mixed[e]) {
            m.edge_factors[e].reset();
        }
    }
    return m;
}

namespace {

bool touches(const MetricGraph& g, const SubArc& piece, const GraphPoint& p)
{
    return GraphPoint::on_edge(g, piece.edge, piece.lo) == p || GraphPoint::on_edge(g, piece.edge, piece.hi) == p;
}

} // namespace

Harmonization tt_harmonize(const LinearSystem& t, Execution policy)
{
    const MetricGraph& g = t.graph();
    Harmonization h;
    h.map = tt_morphism(t, policy);
    const TreeSkeleton& s = h.map.skeleton;

    for (const auto& local : h.map.degrees) {
        const std::size_t x = local.node;
        for (std::size_t y : s.neighbours(x)) {
            std::size_t arc = s.arcs.size();
            for (std::size_t k = 0; k < s.arcs.size(); ++k) {
                if (std::minmax(s.arcs[k].a, s.arcs[k].b) == std::minmax(x, y)) {
                    arc = k;
                }
            }
            Rational outgoing = 0;
            for (const auto& piece : h.map.pieces) {
                if (piece.arc == arc && touches(g, piece, local.point)) {
                    outgoing += piece.factor;
                }
            }
            const Rational tau = s.nodes[y].divisor.at(local.point);
            if (outgoing + tau != local.degree) {
                throw Error(ErrorCode::certificate, "balancing fails at " + describe(g, local.point) + " toward " +
                                                        describe(g, s.nodes[y].divisor));
            }
            if (tau > 0) {
                h.attachments.push_back({local.point, x, y, tau});
            }
        }
    }

    h.node_degrees.assign(s.nodes.size(), Rational(0));
    for (const auto& local : h.map.degrees) {
        h.node_degrees[local.node] += local.degree;
    }
    for (const auto& a : h.attachments) {
        const auto inside = s.component(a.toward, a.node);
        for (std::size_t n = 0; n < s.nodes.size(); ++n) {
            if (inside[n]) {
                h.node_degrees[n] += a.multiplicity;
            }
        }
    }
    h.degree = h.node_degrees.front();
    for (std::size_t n = 0; n < s.nodes.size(); ++n) {
        if (h.node_degrees[n] != h.degree) {
            throw Error(ErrorCode::certificate, "fiber weight of " + describe(g, s.nodes[n].divisor) + " is " +
                                                    format_rational(h.node_degrees[n]) + ", expected " +
                                                    format_rational(h.degree));
        }
    }
    if (h.degree != t.degree()) {
        throw Error(ErrorCode::certificate, "harmonic degree " + format_rational(h.degree) +
                                                " differs from the system degree");
    }
    return h;
}

WitnessReport tt_verify_witness(const LinearSystem& t, const Rational& d, Execution policy)
{
    WitnessReport w;
    w.system_degree = t.degree();
    w.dominance = tt_is_dominant(t, 1, 8, policy);
    if (w.system_degree != d) {
        w.message = "system has degree " + format_rational(w.system_degree);
        return w;
    }
    if (!w.dominance.dominant) {
        w.message = w.dominance.message;
        return w;
    }
    w.harmonic_degree = tt_harmonize(t, policy).degree;
    w.holds = true;
    w.message = "dominant tropical tree of degree " + format_rational(d);
    return w;
}

} // namespace tropkit
